#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimer/error.hpp"
#include "dimer/lattice.hpp"
#include "dimer/vec2.hpp"

namespace dimer {

struct VertexSpec {
    std::string id;
    bool black = false;
};

struct EdgeSpec {
    std::string id;
    std::string black;
    std::string white;
    Vec2 hom;  // exponent pair of phi(e) = z^dz w^dw for the edge oriented black -> white
};

// One step of a face boundary or cycle: edge index plus traversal direction.
// forward means black -> white.
struct Step {
    int edge = -1;
    bool forward = true;
};

// Plain input data for a bipartite torus graph. Faces are counterclockwise
// boundary walks; they determine the embedding, so no separate rotation data
// is needed.
struct GraphSpec {
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
    std::vector<std::vector<std::pair<std::string, bool>>> faces;  // (edge id, forward)
    std::string root_white;
    int root_face = 0;
    std::vector<std::pair<std::string, bool>> cycle_a, cycle_b;  // optional
    std::map<std::string, int> eps;                              // optional explicit signs
};

// A corner of a face: the boundary enters `vertex` along edge `in` and leaves
// along edge `out`. `translate` locates the corner's vertex lift relative to
// the face's base lift in the universal cover. `zigzag` is the strand that
// separates the vertex from the face.
struct Corner {
    int vertex = -1;
    int in_edge = -1;
    int out_edge = -1;
    Vec2 translate;
    int zigzag = -1;
};

struct ZigZagPath {
    std::vector<Step> steps;  // cyclic; forward step = traversed black -> white
    Vec2 cls;                 // homology class
    int ray = -1;             // index into the Newton polygon's rays
};

struct MinimalityViolation {
    std::string what;
};

class TorusGraph {
public:
    static TorusGraph build(const GraphSpec& spec);

    const GraphSpec& spec() const { return spec_; }
    size_t vertex_count() const { return spec_.vertices.size(); }
    size_t edge_count() const { return spec_.edges.size(); }
    size_t face_count() const { return faces_.size(); }

    bool is_black(int v) const { return spec_.vertices[v].black; }
    const std::string& vertex_id(int v) const { return spec_.vertices[v].id; }
    const std::string& edge_id(int e) const { return spec_.edges[e].id; }
    Vec2 hom(int e) const { return spec_.edges[e].hom; }
    int edge_black(int e) const { return edge_black_[e]; }
    int edge_white(int e) const { return edge_white_[e]; }

    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;

    const std::vector<int>& blacks() const { return blacks_; }
    const std::vector<int>& whites() const { return whites_; }
    int black_position(int v) const { return black_pos_[v]; }
    int white_position(int v) const { return white_pos_[v]; }

    int root_white() const { return root_white_; }
    int root_face() const { return spec_.root_face; }
    const std::vector<Step>& cycle_a() const { return cycle_a_; }
    const std::vector<Step>& cycle_b() const { return cycle_b_; }
    bool has_cycles() const { return !cycle_a_.empty() && !cycle_b_.empty(); }

    const std::vector<std::vector<Step>>& faces() const { return faces_; }
    const std::vector<std::vector<Corner>>& face_corners() const { return corners_; }
    const std::vector<int>& edges_at(int v) const { return incident_[v]; }

    // Zig-zag turn maps, keyed by the edge along which the strand enters the
    // vertex. Built from the face corners.
    int white_turn_exit(int w, int enter_edge) const { return turn_at(w, enter_edge).exit; }
    int black_turn_exit(int b, int enter_edge) const { return turn_at(b, enter_edge).exit; }
    int turn_zigzag(int v, int enter_edge) const { return turn_at(v, enter_edge).zigzag; }

    const std::vector<ZigZagPath>& zigzags() const { return zigzags_; }
    // Zig-zag ids through a vertex (each at most once for minimal graphs).
    std::vector<int> zigzags_through(int v) const;
    // The two strands along an edge: first traverses it black -> white.
    std::pair<int, int> zigzags_of_edge(int e) const;

    // Newton polygon from the zig-zag classes, lex-min vertex at the origin.
    NewtonPolygon newton_polygon() const;
    // Assign each zig-zag the ray of `fan` matching its class direction.
    void assign_rays(const NewtonPolygon& fan);
    std::vector<int> ray_members(int ray) const;  // zig-zag ids on a ray

    std::vector<MinimalityViolation> check_minimality() const;

    // Lexicographically first perfect matching with respect to the input edge
    // order; returns one edge per white vertex, indexed by white position.
    std::vector<int> perfect_matching() const;

    // Faces adjacent to edge e: (face containing the forward side, face
    // containing the backward side).
    std::pair<int, int> faces_of_edge(int e) const { return faces_of_edge_[e]; }

private:
    struct Turn {
        int exit = -1;
        int zigzag = -1;
    };
    const Turn& turn_at(int v, int enter_edge) const;

    void validate_and_index();
    void build_corners();
    void build_zigzags();

    GraphSpec spec_;
    std::vector<int> edge_black_, edge_white_;
    std::vector<std::vector<Step>> faces_;
    std::vector<Step> cycle_a_, cycle_b_;
    int root_white_ = -1;
    std::map<std::string, int> vindex_, eindex_;
    std::vector<int> blacks_, whites_, black_pos_, white_pos_;
    std::vector<std::vector<int>> incident_;
    std::vector<std::vector<Corner>> corners_;
    std::vector<std::map<int, Turn>> turns_;  // per vertex: enter edge -> turn
    std::vector<ZigZagPath> zigzags_;
    std::vector<std::pair<int, int>> faces_of_edge_;
    std::vector<std::pair<int, int>> zz_of_edge_;
};

// Lexicographically first system of distinct representatives: entry wi of the
// result picks one (edge, black) pair from whites_adj[wi] with all blacks
// distinct, minimizing the edge sequence in order. Empty when none exists.
std::optional<std::vector<int>> lex_min_matching(
    const std::vector<std::vector<std::pair<int, int>>>& whites_adj);

// Alternating product of per-edge values along a walk: forward steps
// contribute value, backward steps its inverse.
template <typename S>
S alternating_product(const std::vector<Step>& walk, const std::vector<S>& values) {
    S acc = ScalarOps<S>::one();
    for (const auto& s : walk) {
        if (s.forward)
            acc *= values[s.edge];
        else
            acc *= ScalarOps<S>::inv(values[s.edge]);
    }
    return acc;
}

// Homology class of a walk (alternating sum of homology offsets).
inline Vec2 walk_class(const std::vector<Step>& walk, const TorusGraph& g) {
    Vec2 c{0, 0};
    for (const auto& s : walk) c += s.forward ? g.hom(s.edge) : -g.hom(s.edge);
    return c;
}

}  // namespace dimer
