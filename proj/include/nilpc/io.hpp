#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilpc/morphism.hpp"
#include "nilpc/ring.hpp"

namespace nilpc {

using Json = nlohmann::ordered_json;

struct LoadOptions {
  bool check_consistency = true;
};

// Presentation file: {"name", "rank", "periods" (0 = infinite), "powers":
// {"i": [[k, x], ...]}, "commutators": {"j,i": [[k, x], ...]}}, 1-based.
PcPresentation presentation_from_json(const Json& j, const LoadOptions& options = {});
Json presentation_to_json(const PcPresentation& g);

PcPresentation parse_presentation(const std::string& text, const LoadOptions& options = {});
std::string emit_presentation(const PcPresentation& g);
PcPresentation load_presentation(const std::filesystem::path& path, const LoadOptions& options = {});

// Parses text as JSON, reporting the line and column of a syntax error.
Json parse_json(const std::string& text);
Json load_json(const std::filesystem::path& path);

// Map file: array with one sparse word per source generator, read in target.
std::vector<Element> images_from_json(const Json& j, const PcPresentation& target);
Json images_to_json(const std::vector<Element>& images);

// Bilinear map file: {"left": [...], "right": [...], "values": [...],
// "table": [[value of (a_i, b_j), ...], ...]}, periods 0 for Z.
BilinearMap bilinear_from_json(const Json& j);

Json int_to_json(const Int& x);
Int int_from_json(const Json& j);
Json vector_to_json(const IntVector& v);
Json matrix_to_json(const IntMatrix& m);
Json word_to_json(const Element& x);  // sparse, 1-based

}  // namespace nilpc
