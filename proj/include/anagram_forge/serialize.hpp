#pragma once

// JSON encodings of the file formats and command reports. Objects use
// nlohmann::json, whose keys are emitted in sorted order, so identical
// values always serialize to identical bytes.

#include <string>

#include <json.hpp>

#include "anagram_forge/anaconstruct.hpp"
#include "anagram_forge/gridmodel.hpp"
#include "anagram_forge/pathcheck.hpp"
#include "anagram_forge/treebound.hpp"
#include "anagram_forge/words.hpp"

namespace anagram_forge {

using Json = nlohmann::json;

/// Malformed or inconsistent JSON input.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Json to_json(const GridColouring& phi);
GridColouring grid_colouring_from_json(const Json& j);

/// {"c", "ell", "phi_star", "symbols": [{"k", "phi"}]}
Json to_json(const BlockString& s);
BlockString block_string_from_json(const Json& j);

Json vertex_names(const GridPath& p);
GridPath grid_path_from_json(const Json& names);

Json to_json(const SubstringWitness& w);
Json to_json(const ImbalanceReport& report, const Alphabet& alphabet);
Json to_json(const ColouringVerdict& verdict);
Json to_json(const ConstructionReport& report);
Json to_json(const Thresholds& t);
Json to_json(const LayerPartition& partition);
Json to_json(const TreeVerdict& verdict);
/// Per-node range, tau per symbol and unbalanced flags.
Json node_stats_json(const WeightedTree& tree, const Classification& stats);

/// Reads a whole file; throws FormatError if it cannot be opened.
std::string read_file(const std::string& path);
Json parse_json_file(const std::string& path);

/// Compact single-line text plus a trailing newline.
std::string dump(const Json& j);

}  // namespace anagram_forge
