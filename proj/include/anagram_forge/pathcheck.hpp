#pragma once

// Simple paths of G_n, anagram-free colouring verification and small
// exhaustive anagram-free chromatic number searches.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "anagram_forge/gridmodel.hpp"
#include "anagram_forge/words.hpp"

namespace anagram_forge {

struct GridPath {
    std::vector<GridVertex> vertices;

    std::size_t size() const { return vertices.size(); }
    GridPath reversed() const { return {{vertices.rbegin(), vertices.rend()}}; }
    bool operator==(const GridPath&) const = default;
};

/// Non-empty, every vertex inside G_n, consecutive vertices adjacent, no repeats.
bool is_simple_path(const GridPath& p, std::size_t n);
/// Same check, but returns a description of the first violation (empty if valid).
std::string describe_path_violation(const GridPath& p, std::size_t n);

/// Visits every simple path of G_n with min_len..max_len vertices exactly
/// once up to reversal (first vertex < last vertex). Paths come out in
/// depth-first order: by start vertex, then lexicographically. The visitor
/// returns false to stop early. Returns the number of paths visited.
std::uint64_t enumerate_simple_paths(std::size_t n, std::size_t min_len, std::size_t max_len,
                                     const std::function<bool(const GridPath&)>& visit);

/// Colour sequence along a path, over the alphabet {1..c}.
Word colour_trace(const GridPath& p, const GridColouring& phi);

struct ColouringVerdict {
    bool anagram_free = true;
    /// Shortest anagramish path, lexicographically first among equals.
    std::optional<GridPath> witness;
    std::uint64_t paths_checked = 0;
};

/// Exhaustive check of every even-length simple path. `workers` splits the
/// work by start vertex; the verdict does not depend on it.
ColouringVerdict verify_colouring(const GridColouring& phi, unsigned workers = 1);

// ---------------------------------------------------------------------------
// afcn search

struct AfcnTaskOutcome {
    bool found = false;
    std::optional<GridColouring> colouring;
    std::uint64_t nodes = 0;
};

/// Persistence hook for interruptible afcn_grid runs.
class AfcnCheckpoint {
public:
    virtual ~AfcnCheckpoint() = default;
    virtual std::optional<AfcnTaskOutcome> load(std::size_t c, std::size_t task) = 0;
    virtual void store(std::size_t c, std::size_t task, const AfcnTaskOutcome& outcome) = 0;
};

struct AfcnOptions {
    unsigned workers = 1;
    AfcnCheckpoint* checkpoint = nullptr;
    /// Stop after computing this many tasks that were not in the checkpoint.
    std::optional<std::size_t> fresh_task_limit;
};

struct AfcnResult {
    std::optional<std::size_t> afcn;
    /// Lexicographically first canonical anagram-free colouring with afcn colours.
    std::optional<GridColouring> colouring;
    std::uint64_t nodes = 0;
    /// Tasks per colour count (the prefix partition used for checkpoints).
    std::vector<std::size_t> tasks_per_colour;
    std::size_t tasks_loaded = 0;
    bool interrupted = false;
};

/// Smallest c <= c_max admitting an anagram-free c-colouring of G_n.
///
/// Colourings are built vertex by vertex in the order a_0, b_0, a_1, b_1, ...
/// with colours introduced in first-use order, and a partial colouring is
/// rejected as soon as any even path inside its coloured prefix is anagramish.
/// The search for each c is split into tasks, one per canonical colouring of
/// the first min(2n, 4) vertices.
AfcnResult afcn_grid(std::size_t n, std::size_t c_max, const AfcnOptions& options = {});

struct AfcnPathResult {
    std::optional<std::size_t> afcn;
    std::optional<Word> colouring;
    std::uint64_t nodes = 0;
};

/// afcn of the path on m vertices: anagram-free colour strings of length m.
AfcnPathResult afcn_path(std::size_t m, std::size_t c_max);

}  // namespace anagram_forge
