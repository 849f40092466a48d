#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "dimer/graph.hpp"
#include "dimer/inverse.hpp"
#include "dimer/kasteleyn.hpp"
#include "dimer/spectral.hpp"

namespace dimer::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "dimer-spectral/1";

GraphSpec parse_graph(const Json& j);
Json serialize_graph(const GraphSpec& spec);

// Weight classes are stored with face keys "f1", "f2", ... following the
// order of the faces array; the omitted key is the face whose weight is
// implied by the product-one relation.
WeightClass<Rat> parse_weights(const Json& j, size_t nfaces);
Json serialize_weights(const WeightClass<Rat>& wc);
Json serialize_weights_numeric(const WeightClass<Cx>& wc);

template <typename S>
Json serialize_spectral(const TorusGraph& g, const SpectralData<S>& sd);

// Inverse-map input parsed in numeric form; the graph supplies the zig-zag
// ray assignment and the ray bases are rebuilt from the polygon.
InverseInput<Cx> parse_spectral_numeric(const Json& j, TorusGraph& g);

Json load_file(const std::string& path);
void write_output(const Json& j, const std::string& out_path);  // "-" = stdout

}  // namespace dimer::io
