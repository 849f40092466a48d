#include "dimer/cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "dimer/io.hpp"

namespace dimer {

namespace {

using io::Json;

TorusGraph load_graph(const std::string& path) {
    return TorusGraph::build(io::parse_graph(io::load_file(path)));
}

WeightClass<Cx> to_numeric_weights(const WeightClass<Rat>& wc) {
    WeightClass<Cx> out;
    for (const auto& [f, x] : wc.face_weights) out.face_weights[f] = to_cx(x);
    out.A = to_cx(wc.A);
    out.B = to_cx(wc.B);
    return out;
}

Json cmd_zigzag(const std::string& graph_path) {
    TorusGraph g = load_graph(graph_path);
    NewtonPolygon n = g.newton_polygon();
    g.assign_rays(n);
    Json j;
    j["schema"] = io::kSchema;
    Json zz = Json::array();
    for (size_t i = 0; i < g.zigzags().size(); ++i) {
        const auto& z = g.zigzags()[i];
        Json steps = Json::array();
        for (const auto& s : z.steps)
            steps.push_back(s.forward ? g.edge_id(s.edge) : "-" + g.edge_id(s.edge));
        zz.push_back({{"id", "z" + std::to_string(i)},
                      {"class", {z.cls.x, z.cls.y}},
                      {"ray", z.ray},
                      {"steps", steps}});
    }
    j["zigzags"] = zz;
    auto viol = g.check_minimality();
    j["minimal"] = viol.empty();
    Json vj = Json::array();
    for (const auto& v : viol) vj.push_back(v.what);
    j["violations"] = vj;
    return j;
}

Json cmd_newton(const std::string& graph_path) {
    TorusGraph g = load_graph(graph_path);
    NewtonPolygon n = g.newton_polygon();
    Json j;
    j["schema"] = io::kSchema;
    Json verts = Json::array();
    for (auto v : n.vertices()) verts.push_back({v.x, v.y});
    j["vertices"] = verts;
    Json pts = Json::array();
    for (auto v : n.lattice_points()) pts.push_back({v.x, v.y});
    j["lattice_points"] = pts;
    Json interior = Json::array();
    for (auto v : n.interior_lattice_points()) interior.push_back({v.x, v.y});
    j["interior_points"] = interior;
    j["genus"] = n.genus();
    Json rays = Json::array();
    for (const auto& r : n.rays())
        rays.push_back({{"dir", {r.dir.x, r.dir.y}},
                        {"u", {r.u.x, r.u.y}},
                        {"a", r.a},
                        {"lattice_length", r.lattice_len}});
    j["rays"] = rays;
    return j;
}

Json scalar_json(const Rat& v) { return rat_str(v); }
Json scalar_json(const Cx& v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

template <typename S>
void emit_kasteleyn(TorusGraph& g, const EdgeCocycle<S>& wt, const SignCocycle& eps,
                    Json& j) {
    auto k = kasteleyn_matrix(g, wt, eps);
    auto m0 = g.perfect_matching();
    auto p = characteristic_polynomial(g, k, m0, wt, eps);
    NewtonPolygon fan = NewtonPolygon::from_support(p.support());
    g.assign_rays(fan);
    auto cas = casimirs(g, wt, eps);
    Json m0j = Json::array();
    for (int e : m0) m0j.push_back(g.edge_id(e));
    j["m0"] = m0j;
    Json terms = Json::array();
    for (const auto& [ex, c] : p.terms()) {
        Json t;
        t["i"] = ex.x;
        t["j"] = ex.y;
        if constexpr (ScalarOps<S>::exact)
            t["value"] = rat_str(c);
        else {
            t["re"] = c.real();
            t["im"] = c.imag();
        }
        terms.push_back(t);
    }
    j["P"] = Json{{"terms", terms}};
    Json cj;
    for (size_t i = 0; i < cas.size(); ++i) cj["z" + std::to_string(i)] = scalar_json(cas[i]);
    j["casimirs"] = cj;
}

Json cmd_kasteleyn(const std::string& graph_path, const std::string& weights_path,
                   const std::string& mode) {
    TorusGraph g = load_graph(graph_path);
    auto wc = io::parse_weights(io::load_file(weights_path), g.face_count());
    SignCocycle eps;
    if (!g.spec().eps.empty()) {
        eps.assign(g.edge_count(), 1);
        for (const auto& [id, s] : g.spec().eps) eps[size_t(g.edge_index(id))] = s;
    } else {
        eps = kasteleyn_sign(g);
    }
    Json j;
    j["schema"] = io::kSchema;
    Json ej;
    for (size_t e = 0; e < g.edge_count(); ++e) ej[g.edge_id(int(e))] = eps[e];
    j["eps"] = ej;
    if (mode == "exact")
        emit_kasteleyn(g, weight_cocycle(g, wc), eps, j);
    else
        emit_kasteleyn(g, weight_cocycle(g, to_numeric_weights(wc)), eps, j);
    return j;
}

Json cmd_forward(const std::string& graph_path, const std::string& weights_path,
                 const std::string& mode, double tol) {
    TorusGraph g = load_graph(graph_path);
    auto wc = io::parse_weights(io::load_file(weights_path), g.face_count());
    ForwardOptions opts;
    opts.tol = tol;
    if (mode == "exact") {
        auto sd = forward(g, wc, opts);
        return io::serialize_spectral(g, sd);
    }
    auto sd = forward(g, to_numeric_weights(wc), opts);
    return io::serialize_spectral(g, sd);
}

Json cmd_inverse(const std::string& graph_path, const std::string& spectral_path,
                 double tol, int jobs) {
    TorusGraph g = load_graph(graph_path);
    auto in = io::parse_spectral_numeric(io::load_file(spectral_path), g);
    InverseOptions opts;
    opts.tol = tol;
    opts.jobs = jobs;
    auto res = reconstruct_weights(g, in, opts);
    return io::serialize_weights_numeric(res.weights);
}

Json cmd_roundtrip(const std::string& graph_path, const std::string& weights_path,
                   const std::string& mode, double tol, int jobs, bool& pass) {
    TorusGraph g = load_graph(graph_path);
    auto wc = io::parse_weights(io::load_file(weights_path), g.face_count());
    ForwardOptions fopts;
    fopts.tol = std::min(tol, 1e-8);
    InverseInput<Cx> in;
    if (mode == "exact") {
        auto sd = forward(g, wc, fopts);
        in = to_inverse_input(sd);
    } else {
        auto sd = forward(g, to_numeric_weights(wc), fopts);
        in = to_inverse_input(sd);
    }
    InverseOptions opts;
    opts.tol = std::max(tol, 1e-9);
    opts.jobs = jobs;
    auto res = reconstruct_weights(g, in, opts);

    Json j;
    j["schema"] = io::kSchema;
    Json quantities;
    double max_rel = 0.0;
    auto add = [&](const std::string& name, const Rat& expected, const Cx& got) {
        Cx want = to_cx(expected);
        double abs_err = std::abs(got - want);
        double rel_err = abs_err / std::max(std::abs(want), 1e-300);
        max_rel = std::max(max_rel, rel_err);
        quantities[name] = Json{{"expected", rat_str(expected)},
                               {"recovered", Json{{"re", got.real()}, {"im", got.imag()}}},
                               {"abs_err", abs_err},
                               {"rel_err", rel_err}};
    };
    for (size_t f = 0; f < g.face_count(); ++f)
        add("X_f" + std::to_string(f + 1), wc.face_value(int(f), g.face_count()),
            res.all_faces.at(int(f)));
    add("A", wc.A, res.weights.A);
    add("B", wc.B, res.weights.B);
    j["quantities"] = quantities;
    j["max_rel_err"] = max_rel;
    pass = max_rel <= tol;
    j["ok"] = pass;
    return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"dimer spectral transform and its rational inverse"};
    app.require_subcommand(1);

    std::string graph_path, weights_path, spectral_path, out_path = "-";
    std::string mode = "exact";
    double tol = 1e-9;
    int jobs = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_graph) {
        if (needs_graph) cmd->add_option("--graph", graph_path, "graph JSON")->required();
        cmd->add_option("-o,--output", out_path, "output path, - for stdout");
    };

    auto* zz = app.add_subcommand("zigzag", "zig-zag paths and minimality report");
    add_common(zz, true);
    auto* nw = app.add_subcommand("newton", "Newton polygon of the graph");
    add_common(nw, true);
    auto* ka = app.add_subcommand("kasteleyn", "Kasteleyn sign, P and Casimirs");
    add_common(ka, true);
    ka->add_option("--weights", weights_path, "weights JSON")->required();
    ka->add_option("--mode", mode, "exact|numeric")->check(CLI::IsMember({"exact", "numeric"}));
    auto* fw = app.add_subcommand("forward", "spectral transform");
    add_common(fw, true);
    fw->add_option("--weights", weights_path, "weights JSON")->required();
    fw->add_option("--mode", mode, "exact|numeric")->check(CLI::IsMember({"exact", "numeric"}));
    fw->add_option("--tol", tol, "residual tolerance");
    auto* iv = app.add_subcommand("inverse", "reconstruct weights from spectral data");
    add_common(iv, true);
    iv->add_option("--spectral", spectral_path, "spectral JSON")->required();
    iv->add_option("--tol", tol, "numeric tolerance");
    iv->add_option("--jobs", jobs, "parallel solves");
    auto* rt = app.add_subcommand("roundtrip", "forward then inverse, with error report");
    add_common(rt, true);
    rt->add_option("--weights", weights_path, "weights JSON")->required();
    rt->add_option("--mode", mode, "exact|numeric")->check(CLI::IsMember({"exact", "numeric"}));
    rt->add_option("--tol", tol, "pass/fail threshold for the report");
    rt->add_option("--jobs", jobs, "parallel solves");
    rt->add_option("--report", out_path, "report path (same as -o)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Json out;
        bool pass = true;
        if (zz->parsed()) out = cmd_zigzag(graph_path);
        else if (nw->parsed()) out = cmd_newton(graph_path);
        else if (ka->parsed()) out = cmd_kasteleyn(graph_path, weights_path, mode);
        else if (fw->parsed()) out = cmd_forward(graph_path, weights_path, mode, tol);
        else if (iv->parsed()) out = cmd_inverse(graph_path, spectral_path, tol, jobs);
        else if (rt->parsed()) out = cmd_roundtrip(graph_path, weights_path, mode, tol, jobs, pass);
        io::write_output(out, out_path);
        return pass ? 0 : 1;
    } catch (const Error& e) {
        Json err;
        err["error"] = Json{{"kind", e.kind()}, {"detail", e.detail()}};
        std::cout << err.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = Json{{"kind", "InternalError"}, {"detail", e.what()}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
}

}  // namespace dimer
