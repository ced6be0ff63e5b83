#pragma once

// Explicit anagramish path through the coloured grid of a near-anagramish
// block string.
//
// Block indices follow the grid layout: colourful blocks H_1..H_{2r} and
// boring blocks Q_0..Q_{2r}. All index sets below are 1-based to match.
//
// Given delta_a = hist_a(first half) - hist_a(second half), the construction
// picks, for each symbol a with delta_a != 0, a "doubled" side holding
// 2|delta_a| blocks (paired into top/bottom traversals) and a "single" side
// holding |delta_a| blocks traversed by a zig-zag. A top plus a bottom
// traversal of two blocks of one symbol uses the same colours as a zig-zag
// through a third; each bottom traversal is entered and left through
// updown/downup detours in the neighbouring boring blocks, and those detours
// occur equally often in both halves. The result is an anagramish path.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anagram_forge/errors.hpp"
#include "anagram_forge/gridmodel.hpp"
#include "anagram_forge/pathcheck.hpp"
#include "anagram_forge/rational.hpp"
#include "anagram_forge/words.hpp"

namespace anagram_forge {

/// Distinct block symbols of a string (first-occurrence order) and the string
/// re-encoded over them.
struct SymbolTable {
    std::vector<BlockSymbol> symbols;
    std::vector<Symbol> word;
};

SymbolTable intern_symbols(const BlockString& s);

struct DeltaProfile {
    std::size_t r = 0;
    SymbolTable table;
    std::vector<std::int64_t> delta;
    /// Half the sum of |delta|, i.e. tau / 2.
    std::int64_t beta = 0;
};

struct Selection {
    /// Per interned symbol; indices in {1..r-1} (A) and {r+1..2r-1} (B), in
    /// the order chosen.
    std::vector<std::vector<std::size_t>> a_sets;
    std::vector<std::vector<std::size_t>> b_sets;
    /// (top, bottom) pairs on each symbol's doubled side; top is the smaller index.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

enum class ColourfulRole : std::uint8_t { Top, Bottom, ZigZag };
enum class BoringRole : std::uint8_t { Top, DownUp, UpDown };

struct RoleAssignment {
    /// colourful[i - 1] is the role of H_i, i = 1..2r.
    std::vector<ColourfulRole> colourful;
    /// boring[j] is the role of Q_j, j = 0..2r-1.
    std::vector<BoringRole> boring;

    ColourfulRole colourful_role(std::size_t i) const { return colourful.at(i - 1); }
};

enum class FragmentKind : std::uint8_t { Top, Bottom, ZigZag, DownUp, UpDown };

struct PathFragment {
    std::vector<GridVertex> vertices;
    Row entry = Row::Top;
    Row exit = Row::Top;
};

/// Construction preconditions. Returns one message per violated inequality.
std::vector<std::string> construction_violations(const BlockString& s, const Rational& eps);

/// Throws PreconditionError for odd-length strings.
DeltaProfile compute_delta(const BlockString& s);

/// Greedy left-to-right choice per symbol, never picking an index next to one
/// already chosen. Throws PreconditionError on violated preconditions or if
/// the greedy scan runs out of candidates.
Selection select_sets(const BlockString& s, const DeltaProfile& profile, const Rational& eps);

/// Same greedy choice without precondition checks; throws PreconditionError
/// only if candidates run out.
Selection select_sets_unchecked(const DeltaProfile& profile);

RoleAssignment assign_roles(const DeltaProfile& profile, const Selection& selection);

/// Traversal of the block occupying columns [lo, hi).
PathFragment block_subpath(FragmentKind kind, std::size_t lo, std::size_t hi);

struct AssembledPath {
    GridPath path;
    /// Number of vertices in Q_0, H_1, ..., Q_{r-1}, H_r.
    std::size_t midpoint_index = 0;
};

/// Concatenates the fragments for Q_0, H_1, Q_1, ..., Q_{2r-1}, H_{2r}.
/// Throws std::logic_error naming the junction if two fragments do not meet.
AssembledPath assemble_path(const BlockString& s, const RoleAssignment& roles);

struct ConstructionReport {
    bool valid_path = false;
    std::string path_problem;
    bool anagramish = false;
    std::size_t length = 0;
    /// Colour histograms of the two halves of the colour trace (index 0 = colour 1).
    std::vector<std::int64_t> first_half;
    std::vector<std::int64_t> second_half;
    std::vector<std::int64_t> residual;
    std::optional<Colour> first_differing_colour;
};

/// Re-derives the colour trace from the realized grid and checks it.
ConstructionReport verify_construction(const BlockString& s, const GridPath& path);

struct Construction {
    DeltaProfile profile;
    Selection selection;
    RoleAssignment roles;
    AssembledPath assembled;
};

/// compute_delta -> select_sets -> assign_roles -> assemble_path.
Construction construct_anagramish_path(const BlockString& s, const Rational& eps);

const char* to_string(ColourfulRole role);
const char* to_string(BoringRole role);

}  // namespace anagram_forge
