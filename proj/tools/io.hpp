// JSON and text encodings shared by the command line and the HTTP server.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusterforge/qp.hpp"
#include "clusterforge/quantum.hpp"
#include "clusterforge/quiver.hpp"

namespace cfio {

using json = nlohmann::json;
using namespace clusterforge;

// Small integers as numbers, the rest as decimal strings.
json integer_json(const Integer& z);
Integer integer_from(const json& j);
json matrix_json(const IntMatrix& m);
IntMatrix matrix_from(const json& j, std::size_t cols_hint = 0);

// {"m", "n", "matrix", "symmetrizer"}
json quiver_json(const Quiver& q);
Quiver quiver_from(const json& j);

// {"vertices", "arrows": [{"name", "from", "to"}], "potential": [{"cycle", "coeff"}], "truncation"}
json qp_json(const QuiverWithPotential& qp);
QuiverWithPotential qp_from(const json& j);

// {"form", "N", "terms": [{"alpha", "coeff"}]}
json series_json(const TruncatedSeries& s);
TruncatedSeries series_from(const json& j);

// Key-sorted, ", " / ": " separators, single line.
std::string canonical(const json& j);

// "1,2,1" or "1 2 1", 1-based; nullopt on malformed text.
std::optional<std::vector<std::size_t>> parse_sequence(const std::string& text);
json sequence_json(const std::vector<std::size_t>& zero_based);

std::string quiver_dot(const Quiver& q);
std::string matrix_table(const IntMatrix& m);
// Generic fallback for --format table.
std::string table(const json& j);

std::vector<std::string> names(const std::string& stem, std::size_t count);

}  // namespace cfio
