#include "dimer/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace dimer {

int TorusGraph::vertex_index(const std::string& id) const {
    auto it = vindex_.find(id);
    require(it != vindex_.end(), "UnknownVertex", "no vertex '" + id + "'");
    return it->second;
}

int TorusGraph::edge_index(const std::string& id) const {
    auto it = eindex_.find(id);
    require(it != eindex_.end(), "UnknownEdge", "no edge '" + id + "'");
    return it->second;
}

const TorusGraph::Turn& TorusGraph::turn_at(int v, int enter_edge) const {
    auto it = turns_[v].find(enter_edge);
    require(it != turns_[v].end(), "FaceInconsistency",
            "no zig-zag turn at vertex " + vertex_id(v) + " entering along " +
                edge_id(enter_edge));
    return it->second;
}

TorusGraph TorusGraph::build(const GraphSpec& spec) {
    TorusGraph g;
    g.spec_ = spec;
    g.validate_and_index();
    g.build_corners();
    g.build_zigzags();
    return g;
}

void TorusGraph::validate_and_index() {
    for (size_t i = 0; i < spec_.vertices.size(); ++i) {
        require(vindex_.emplace(spec_.vertices[i].id, int(i)).second, "DuplicateId",
                "vertex id '" + spec_.vertices[i].id + "' repeated");
    }
    size_t nb = 0, nw = 0;
    for (size_t i = 0; i < spec_.vertices.size(); ++i) {
        if (spec_.vertices[i].black) { black_pos_.push_back(int(blacks_.size())); blacks_.push_back(int(i)); white_pos_.push_back(-1); ++nb; }
        else { white_pos_.push_back(int(whites_.size())); whites_.push_back(int(i)); black_pos_.push_back(-1); ++nw; }
    }
    require(nb == nw && nb > 0, "NonBipartite",
            "need equal nonzero numbers of black and white vertices");

    incident_.assign(spec_.vertices.size(), {});
    for (size_t e = 0; e < spec_.edges.size(); ++e) {
        const auto& es = spec_.edges[e];
        require(eindex_.emplace(es.id, int(e)).second, "DuplicateId",
                "edge id '" + es.id + "' repeated");
        int b = vertex_index(es.black), w = vertex_index(es.white);
        require(is_black(b) && !is_black(w), "NonBipartite",
                "edge '" + es.id + "' does not join black to white");
        edge_black_.push_back(b);
        edge_white_.push_back(w);
        incident_[b].push_back(int(e));
        incident_[w].push_back(int(e));
    }

    auto resolve_walk = [&](const std::vector<std::pair<std::string, bool>>& in) {
        std::vector<Step> out;
        for (const auto& [id, fwd] : in) out.push_back({edge_index(id), fwd});
        return out;
    };
    for (const auto& f : spec_.faces) faces_.push_back(resolve_walk(f));
    if (!spec_.cycle_a.empty()) cycle_a_ = resolve_walk(spec_.cycle_a);
    if (!spec_.cycle_b.empty()) cycle_b_ = resolve_walk(spec_.cycle_b);
    root_white_ = vertex_index(spec_.root_white);
    require(!is_black(root_white_), "NonBipartite", "root_white must be white");
    require(spec_.root_face >= 0 && size_t(spec_.root_face) < faces_.size(),
            "FaceInconsistency", "root_face out of range");

    int64_t v = int64_t(spec_.vertices.size());
    int64_t e = int64_t(spec_.edges.size());
    int64_t f = int64_t(faces_.size());
    require(v - e + f == 0, "EulerMismatch",
            "V - E + F = " + std::to_string(v - e + f) + ", expected 0 on the torus");

    // Every directed edge side must be used exactly once across all faces.
    std::vector<int> fwd_face(spec_.edges.size(), -1), bwd_face(spec_.edges.size(), -1);
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        const auto& walk = faces_[fi];
        require(walk.size() % 2 == 0, "OddFace",
                "face " + std::to_string(fi) + " has odd length");
        require(!walk.empty(), "FaceInconsistency", "empty face");
        for (size_t k = 0; k < walk.size(); ++k) {
            const Step& s = walk[k];
            const Step& t = walk[(k + 1) % walk.size()];
            require(s.forward != t.forward, "FaceInconsistency",
                    "face walk does not alternate direction");
            int head = s.forward ? edge_white_[s.edge] : edge_black_[s.edge];
            int tail = t.forward ? edge_black_[t.edge] : edge_white_[t.edge];
            require(head == tail, "FaceInconsistency",
                    "face walk is not vertex-continuous");
            auto& slot = s.forward ? fwd_face[s.edge] : bwd_face[s.edge];
            require(slot == -1, "FaceInconsistency",
                    "edge side of '" + edge_id(s.edge) + "' used twice");
            slot = int(fi);
        }
        require(walk_class(walk, *this).is_zero(), "FaceInconsistency",
                "face " + std::to_string(fi) + " has nonzero homology offset sum");
    }
    faces_of_edge_.resize(spec_.edges.size());
    for (size_t e2 = 0; e2 < spec_.edges.size(); ++e2) {
        require(fwd_face[e2] >= 0 && bwd_face[e2] >= 0, "FaceInconsistency",
                "edge '" + edge_id(int(e2)) + "' not on exactly two faces");
        faces_of_edge_[e2] = {fwd_face[e2], bwd_face[e2]};
    }

    // Connectivity.
    std::vector<char> seen(spec_.vertices.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    size_t cnt = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int e3 : incident_[u]) {
            int other = edge_black_[e3] == u ? edge_white_[e3] : edge_black_[e3];
            if (!seen[other]) { seen[other] = 1; ++cnt; q.push(other); }
        }
    }
    require(cnt == spec_.vertices.size(), "FaceInconsistency", "graph is not connected");
}

void TorusGraph::build_corners() {
    corners_.assign(faces_.size(), {});
    turns_.assign(spec_.vertices.size(), {});
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        const auto& walk = faces_[fi];
        Vec2 tr{0, 0};
        for (size_t k = 0; k < walk.size(); ++k) {
            const Step& s = walk[k];
            const Step& t = walk[(k + 1) % walk.size()];
            // Translate of the vertex the walk arrives at after step s,
            // relative to the face's base lift (the tail of the first step).
            tr += s.forward ? hom(s.edge) : -hom(s.edge);
            Corner c;
            c.vertex = s.forward ? edge_white_[s.edge] : edge_black_[s.edge];
            c.in_edge = s.edge;
            c.out_edge = t.edge;
            c.translate = tr;
            corners_[fi].push_back(c);

            // Face walks are counterclockwise, so the strand separating the
            // corner vertex from the face enters along the incoming edge at a
            // white vertex and along the outgoing edge at a black vertex.
            int enter = is_black(c.vertex) ? c.out_edge : c.in_edge;
            int exit = is_black(c.vertex) ? c.in_edge : c.out_edge;
            require(turns_[c.vertex].emplace(enter, Turn{exit, -1}).second,
                    "FaceInconsistency",
                    "duplicate zig-zag turn at vertex " + vertex_id(c.vertex));
        }
    }
    for (size_t v = 0; v < spec_.vertices.size(); ++v)
        require(turns_[v].size() == incident_[v].size(), "FaceInconsistency",
                "vertex " + vertex_id(int(v)) + " has an incomplete turn structure");
}

void TorusGraph::build_zigzags() {
    // Directed edge sides: 2*e (black -> white) and 2*e+1 (white -> black).
    size_t nsides = 2 * spec_.edges.size();
    std::vector<int> zz_of_side(nsides, -1);
    zz_of_edge_.assign(spec_.edges.size(), {-1, -1});
    for (size_t s0 = 0; s0 < nsides; ++s0) {
        if (zz_of_side[s0] != -1) continue;
        int id = int(zigzags_.size());
        ZigZagPath path;
        size_t s = s0;
        do {
            zz_of_side[s] = id;
            int e = int(s / 2);
            bool fwd = (s % 2 == 0);
            path.steps.push_back({e, fwd});
            int v = fwd ? edge_white_[e] : edge_black_[e];
            Turn& turn = turns_[v].at(e);
            turn.zigzag = id;
            int e2 = turn.exit;
            s = fwd ? size_t(2 * e2 + 1) : size_t(2 * e2);
        } while (s != s0);
        path.cls = walk_class(path.steps, *this);
        zigzags_.push_back(std::move(path));
    }
    for (size_t e = 0; e < spec_.edges.size(); ++e)
        zz_of_edge_[e] = {zz_of_side[2 * e], zz_of_side[2 * e + 1]};
    for (auto& fc : corners_)
        for (auto& c : fc) {
            int enter = is_black(c.vertex) ? c.out_edge : c.in_edge;
            c.zigzag = turns_[c.vertex].at(enter).zigzag;
        }
}

std::vector<int> TorusGraph::zigzags_through(int v) const {
    std::set<int> ids;
    for (const auto& [enter, turn] : turns_[v]) ids.insert(turn.zigzag);
    return {ids.begin(), ids.end()};
}

std::pair<int, int> TorusGraph::zigzags_of_edge(int e) const { return zz_of_edge_[e]; }

NewtonPolygon TorusGraph::newton_polygon() const {
    std::vector<Vec2> classes;
    for (const auto& z : zigzags_) classes.push_back(z.cls);
    return NewtonPolygon::from_edge_vectors(classes);
}

void TorusGraph::assign_rays(const NewtonPolygon& fan) {
    for (auto& z : zigzags_) z.ray = fan.ray_of_direction(primitive_of(z.cls));
}

std::vector<int> TorusGraph::ray_members(int ray) const {
    std::vector<int> out;
    for (size_t i = 0; i < zigzags_.size(); ++i)
        if (zigzags_[i].ray == ray) out.push_back(int(i));
    return out;
}

namespace {

struct LiftStep {
    int edge;
    Vec2 copy;     // translate of the black end of the lifted edge
    int64_t time;  // position along the lift
};

// Lifted strand over several fundamental periods, each step tagged with the
// translate of its edge copy.
std::vector<LiftStep> lift_strand(const TorusGraph& g, const ZigZagPath& z, int periods,
                                  Vec2 offset) {
    std::vector<LiftStep> out;
    Vec2 t = offset + (-(periods / 2)) * z.cls;
    int64_t time = -int64_t(periods / 2) * int64_t(z.steps.size());
    for (int rep = 0; rep < periods; ++rep) {
        for (const auto& s : z.steps) {
            Vec2 copy = s.forward ? t : t - g.hom(s.edge);
            out.push_back({s.edge, copy, time});
            t += s.forward ? g.hom(s.edge) : -g.hom(s.edge);
            ++time;
        }
    }
    return out;
}

}  // namespace

std::vector<MinimalityViolation> TorusGraph::check_minimality() const {
    std::vector<MinimalityViolation> out;
    for (size_t i = 0; i < zigzags_.size(); ++i)
        if (zigzags_[i].cls.is_zero())
            out.push_back({"zig-zag " + std::to_string(i) + " has zero homology class"});

    // A strand using an edge in both directions self-intersects in the lift.
    for (size_t e = 0; e < spec_.edges.size(); ++e)
        if (zz_of_edge_[e].first == zz_of_edge_[e].second)
            out.push_back({"zig-zag " + std::to_string(zz_of_edge_[e].first) +
                           " passes through edge '" + edge_id(int(e)) + "' twice"});
    if (!out.empty()) return out;

    // Parallel bigons between lift pairs: two crossings consecutive on both
    // lifts with both strands running from the first to the second. Lift
    // pairs are enumerated through the offsets at which the pair actually
    // shares an edge copy; a window of a few periods covers every
    // combinatorially distinct pair for these finite graphs.
    const int periods = 5;
    for (size_t i = 0; i < zigzags_.size(); ++i) {
        auto lift_a = lift_strand(*this, zigzags_[i], periods, {0, 0});
        std::map<std::pair<int, Vec2>, const LiftStep*> a_index;
        for (const auto& s : lift_a) a_index[{s.edge, s.copy}] = &s;
        for (size_t j = 0; j < zigzags_.size(); ++j) {
            if (i == j) continue;
            // candidate lift offsets of strand j against strand i
            std::set<Vec2> offsets;
            for (const auto& sa : lift_a) {
                auto [z1, z2] = zz_of_edge_[size_t(sa.edge)];
                if (z1 != int(j) && z2 != int(j)) continue;
                for (const auto& sb : lift_strand(*this, zigzags_[j], 1, {0, 0}))
                    if (sb.edge == sa.edge) offsets.insert(sa.copy - sb.copy);
            }
            for (Vec2 off : offsets) {
                auto lift_b = lift_strand(*this, zigzags_[j], periods, off);
                // crossings indexed by time along each lift
                std::vector<std::pair<int64_t, int64_t>> crossings;
                for (const auto& sb : lift_b) {
                    auto it = a_index.find({sb.edge, sb.copy});
                    if (it != a_index.end())
                        crossings.push_back({it->second->time, sb.time});
                }
                std::sort(crossings.begin(), crossings.end());
                const int64_t half = int64_t(zigzags_[i].steps.size());
                for (size_t k = 0; k + 1 < crossings.size(); ++k) {
                    auto [ta1, tb1] = crossings[k];
                    auto [ta2, tb2] = crossings[k + 1];
                    // only judge pairs well inside the window
                    if (std::llabs(ta1) > half || std::llabs(ta2) > half) continue;
                    if (tb2 <= tb1) continue;  // opposite direction: antiparallel
                    bool consecutive_on_b = true;
                    for (const auto& [ta, tb] : crossings)
                        if (tb > tb1 && tb < tb2) consecutive_on_b = false;
                    if (consecutive_on_b)
                        out.push_back({"zig-zags " + std::to_string(i) + "," +
                                       std::to_string(j) + " bound a parallel bigon"});
                }
            }
        }
    }
    // deduplicate repeated reports for the same pair
    std::sort(out.begin(), out.end(),
              [](const MinimalityViolation& a, const MinimalityViolation& b) {
                  return a.what < b.what;
              });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const MinimalityViolation& a, const MinimalityViolation& b) {
                              return a.what == b.what;
                          }),
              out.end());
    return out;
}

std::optional<std::vector<int>> lex_min_matching(
    const std::vector<std::vector<std::pair<int, int>>>& whites_adj) {
    size_t n = whites_adj.size();
    std::vector<int> chosen(n, -1);
    std::set<int> black_used;
    // Backtracking over whites in order, trying edges in input order, gives
    // the lexicographically first matching.
    auto rec = [&](auto&& self, size_t wi) -> bool {
        if (wi == n) return true;
        for (const auto& [e, b] : whites_adj[wi]) {
            if (black_used.count(b)) continue;
            black_used.insert(b);
            chosen[wi] = e;
            if (self(self, wi + 1)) return true;
            black_used.erase(b);
            chosen[wi] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return chosen;
}

std::vector<int> TorusGraph::perfect_matching() const {
    std::vector<std::vector<std::pair<int, int>>> adj(whites_.size());
    for (size_t wi = 0; wi < whites_.size(); ++wi)
        for (int e : incident_[size_t(whites_[wi])]) adj[wi].push_back({e, edge_black_[e]});
    auto m = lex_min_matching(adj);
    require(m.has_value(), "NoPerfectMatching", "graph admits no perfect matching");
    return *m;
}

}  // namespace dimer
