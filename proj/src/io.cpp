#include "dimer/io.hpp"

#include <fstream>
#include <iostream>

namespace dimer::io {

namespace {

std::pair<std::string, bool> split_signed(const std::string& s) {
    require(!s.empty(), "ParseError", "empty signed edge id");
    if (s[0] == '-') return {s.substr(1), false};
    if (s[0] == '+') return {s.substr(1), true};
    return {s, true};
}

std::vector<std::pair<std::string, bool>> parse_walk(const Json& j) {
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& item : j) out.push_back(split_signed(item.get<std::string>()));
    return out;
}

Json walk_to_json(const std::vector<std::pair<std::string, bool>>& walk) {
    Json out = Json::array();
    for (const auto& [id, fwd] : walk) out.push_back(fwd ? id : "-" + id);
    return out;
}

Rat parse_rat_value(const Json& v) {
    if (v.is_string()) return rat_parse(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<int64_t>());
    require(v.is_number(), "ParseError", "expected a rational value");
    // Floating literals are accepted for convenience and converted exactly.
    double d = v.get<double>();
    Rat r(d);
    return r;
}

Json cx_json(const Cx& v) {
    Json j;
    j["re"] = v.real();
    j["im"] = v.imag();
    return j;
}

Cx parse_cx(const Json& j) {
    if (j.is_object()) return Cx(j.at("re").get<double>(), j.at("im").get<double>());
    if (j.is_string()) return to_cx(rat_parse(j.get<std::string>()));
    return Cx(j.get<double>(), 0.0);
}

}  // namespace

GraphSpec parse_graph(const Json& j) {
    require(j.value("schema", "") == kSchema, "ParseError",
            "graph file missing schema '" + std::string(kSchema) + "'");
    GraphSpec spec;
    for (const auto& v : j.at("vertices")) {
        std::string color = v.at("color").get<std::string>();
        require(color == "black" || color == "white", "ParseError",
                "vertex color must be black or white");
        spec.vertices.push_back({v.at("id").get<std::string>(), color == "black"});
    }
    for (const auto& e : j.at("edges")) {
        EdgeSpec es;
        es.id = e.at("id").get<std::string>();
        es.black = e.at("black").get<std::string>();
        es.white = e.at("white").get<std::string>();
        es.hom = {e.at("dz").get<int64_t>(), e.at("dw").get<int64_t>()};
        spec.edges.push_back(es);
    }
    for (const auto& f : j.at("faces")) spec.faces.push_back(parse_walk(f));
    spec.root_white = j.at("root_white").get<std::string>();
    spec.root_face = j.at("root_face").get<int>();
    if (j.contains("cycle_a")) spec.cycle_a = parse_walk(j.at("cycle_a"));
    if (j.contains("cycle_b")) spec.cycle_b = parse_walk(j.at("cycle_b"));
    if (j.contains("eps"))
        for (const auto& [id, s] : j.at("eps").items()) {
            int v = s.get<int>();
            require(v == 1 || v == -1, "ParseError", "eps values must be +-1");
            spec.eps[id] = v;
        }
    return spec;
}

Json serialize_graph(const GraphSpec& spec) {
    Json j;
    j["schema"] = kSchema;
    j["vertices"] = Json::array();
    for (const auto& v : spec.vertices)
        j["vertices"].push_back({{"id", v.id}, {"color", v.black ? "black" : "white"}});
    j["edges"] = Json::array();
    for (const auto& e : spec.edges)
        j["edges"].push_back({{"id", e.id},
                              {"black", e.black},
                              {"white", e.white},
                              {"dz", e.hom.x},
                              {"dw", e.hom.y}});
    j["faces"] = Json::array();
    for (const auto& f : spec.faces) j["faces"].push_back(walk_to_json(f));
    j["root_white"] = spec.root_white;
    j["root_face"] = spec.root_face;
    if (!spec.cycle_a.empty()) j["cycle_a"] = walk_to_json(spec.cycle_a);
    if (!spec.cycle_b.empty()) j["cycle_b"] = walk_to_json(spec.cycle_b);
    if (!spec.eps.empty()) {
        Json e;
        for (const auto& [id, s] : spec.eps) e[id] = s;
        j["eps"] = e;
    }
    return j;
}

WeightClass<Rat> parse_weights(const Json& j, size_t nfaces) {
    require(j.value("schema", "") == kSchema, "ParseError",
            "weights file missing schema '" + std::string(kSchema) + "'");
    WeightClass<Rat> wc;
    for (const auto& [key, val] : j.at("faces").items()) {
        require(key.size() >= 2 && key[0] == 'f', "ParseError",
                "face keys look like 'f1', got '" + key + "'");
        int idx = std::stoi(key.substr(1)) - 1;
        require(idx >= 0 && size_t(idx) < nfaces, "ParseError",
                "face key '" + key + "' out of range");
        wc.face_weights[idx] = parse_rat_value(val);
    }
    wc.A = parse_rat_value(j.at("A"));
    wc.B = parse_rat_value(j.at("B"));
    (void)wc.omitted_face(nfaces);
    return wc;
}

Json serialize_weights(const WeightClass<Rat>& wc) {
    Json j;
    j["schema"] = kSchema;
    Json faces;
    for (const auto& [f, x] : wc.face_weights) faces["f" + std::to_string(f + 1)] = rat_str(x);
    j["faces"] = faces;
    j["A"] = rat_str(wc.A);
    j["B"] = rat_str(wc.B);
    return j;
}

Json serialize_weights_numeric(const WeightClass<Cx>& wc) {
    Json j;
    j["schema"] = kSchema;
    Json faces;
    for (const auto& [f, x] : wc.face_weights) faces["f" + std::to_string(f + 1)] = cx_json(x);
    j["faces"] = faces;
    j["A"] = cx_json(wc.A);
    j["B"] = cx_json(wc.B);
    return j;
}

namespace {

Json poly_terms_json(const LaurentPoly<Rat>& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"i", e.x}, {"j", e.y}, {"value", rat_str(c)}});
    return terms;
}

Json poly_terms_json(const LaurentPoly<Cx>& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"i", e.x}, {"j", e.y}, {"re", c.real()}, {"im", c.imag()}});
    return terms;
}

Json casimir_json(const Rat& c) { return rat_str(c); }
Json casimir_json(const Cx& c) { return cx_json(c); }

}  // namespace

template <typename S>
Json serialize_spectral(const TorusGraph& g, const SpectralData<S>& sd) {
    Json j;
    j["schema"] = kSchema;
    j["mode"] = ScalarOps<S>::exact ? "exact" : "numeric";
    j["genus"] = sd.genus;
    Json newton = Json::array();
    for (auto v : sd.polygon.vertices()) newton.push_back({v.x, v.y});
    j["newton"] = newton;
    Json m0 = Json::array();
    for (int e : sd.m0) m0.push_back(g.edge_id(e));
    j["m0"] = m0;
    j["P"] = Json{{"terms", poly_terms_json(sd.P)}};
    Json divisor = Json::array();
    for (const auto& pt : sd.divisor)
        divisor.push_back({{"p", cx_json(pt.p)}, {"q", cx_json(pt.q)}});
    j["divisor"] = divisor;
    Json nu;
    for (const auto& [zz, ip] : sd.nu) {
        Json entry;
        entry["ray"] = ip.ray;
        entry["class"] = {g.zigzags()[size_t(zz)].cls.x, g.zigzags()[size_t(zz)].cls.y};
        entry["casimir"] = casimir_json(ip.casimir);
        nu["z" + std::to_string(zz)] = entry;
    }
    j["nu"] = nu;
    return j;
}

template Json serialize_spectral<Rat>(const TorusGraph&, const SpectralData<Rat>&);
template Json serialize_spectral<Cx>(const TorusGraph&, const SpectralData<Cx>&);

InverseInput<Cx> parse_spectral_numeric(const Json& j, TorusGraph& g) {
    require(j.value("schema", "") == kSchema, "ParseError",
            "spectral file missing schema '" + std::string(kSchema) + "'");
    InverseInput<Cx> in;
    for (const auto& t : j.at("P").at("terms")) {
        Vec2 e{t.at("i").get<int64_t>(), t.at("j").get<int64_t>()};
        Cx c = t.contains("value") ? to_cx(rat_parse(t.at("value").get<std::string>()))
                                   : Cx(t.at("re").get<double>(), t.at("im").get<double>());
        in.P.add_term(e, c);
    }
    in.polygon = NewtonPolygon::from_support(in.P.support());
    g.assign_rays(in.polygon);
    for (const auto& d : j.at("divisor"))
        in.divisor.emplace_back(parse_cx(d.at("p")), parse_cx(d.at("q")));
    for (const auto& [key, entry] : j.at("nu").items()) {
        require(key.size() >= 2 && key[0] == 'z', "ParseError",
                "nu keys look like 'z0', got '" + key + "'");
        int zz = std::stoi(key.substr(1));
        require(zz >= 0 && size_t(zz) < g.zigzags().size(), "ParseError",
                "nu key '" + key + "' out of range");
        int ray = g.zigzags()[size_t(zz)].ray;
        RayBasis basis =
            ray_basis(in.polygon.rays()[size_t(ray)].dir, in.polygon.rays()[size_t(ray)].u);
        in.nu.emplace(zz, InfinityPoint<Cx>{zz, ray, basis, parse_cx(entry.at("casimir"))});
    }
    require(in.nu.size() == g.zigzags().size(), "ParseError",
            "nu must parameterize every zig-zag path");
    return in;
}

Json load_file(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), "IoError", "cannot open '" + path + "'");
    Json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        fail("ParseError", "invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

void write_output(const Json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream os(out_path);
    require(os.good(), "IoError", "cannot write '" + out_path + "'");
    os << j.dump(2) << "\n";
}

}  // namespace dimer::io
