#pragma once

// Executable form of the weighted-tree argument: an l-periodic word with no
// balanced node substring yields a symbol a* whose unbalanced nodes shrink
// geometrically from layer to layer, which caps the word length.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "anagram_forge/errors.hpp"
#include "anagram_forge/rational.hpp"
#include "anagram_forge/words.hpp"

namespace anagram_forge {

using BigInt = boost::multiprecision::cpp_int;

struct TreeNode {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t depth = 0;
    std::vector<std::int64_t> hist;
    /// Counts in the first half: the left child, or the first r0/2 letters of a leaf.
    std::vector<std::int64_t> first_half;

    std::size_t length() const { return end - begin; }
};

/// Complete binary tree over a word of length r0 * 2^h. Nodes are stored in
/// heap order: root 0, children 2i+1 and 2i+2.
class WeightedTree {
public:
    const Word& source() const { return source_; }
    std::size_t r0() const { return r0_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return nodes_.size(); }
    const TreeNode& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<TreeNode>& nodes() const { return nodes_; }

    bool is_leaf(std::size_t i) const { return 2 * i + 1 >= nodes_.size(); }
    static std::size_t left(std::size_t i) { return 2 * i + 1; }
    static std::size_t right(std::size_t i) { return 2 * i + 2; }
    static std::size_t parent(std::size_t i) { return (i - 1) / 2; }
    /// u == v or u lies below v.
    static bool descends_from(std::size_t u, std::size_t v);

private:
    friend WeightedTree build_tree(const Word& w, std::size_t r0);
    WeightedTree(Word source, std::size_t r0, std::size_t height)
        : source_(std::move(source)), r0_(r0), height_(height) {}

    Word source_;
    std::size_t r0_;
    std::size_t height_;
    std::vector<TreeNode> nodes_;
};

/// Throws PreconditionError unless |w| = r0 * 2^h and r0 is even and positive.
WeightedTree build_tree(const Word& w, std::size_t r0);

struct NodeStats {
    std::size_t length = 0;
    std::vector<std::int64_t> tau_per_symbol;
    /// a-unbalanced: tau_a > eps * |v| / ell.
    std::vector<bool> unbalanced;

    bool balanced() const;
    std::int64_t tau() const;
};

struct Classification {
    Rational eps;
    std::size_t ell = 1;
    std::vector<NodeStats> nodes;
    /// S_a: nodes that are a-unbalanced, per symbol, in heap order.
    std::vector<std::vector<std::size_t>> unbalanced_sets;
};

Classification classify(const WeightedTree& tree, const Rational& eps, std::size_t ell);

/// Structural facts that hold for every tree: child weights add up, and for
/// an ell-periodic source with ell | r0 every node has hist_a >= |v| / ell.
struct TreeInvariantReport {
    bool additive = true;
    bool periodic_lower_bound = true;
    std::optional<std::size_t> first_failure;
};

TreeInvariantReport check_tree_invariants(const WeightedTree& tree, std::size_t ell);

struct Thresholds {
    /// ceil(log(2 ell) / log(1 / (1 - eps/ell))), computed exactly.
    std::uint64_t t = 0;
    /// ell * t * 2^(t+1).
    BigInt h_min;
    /// r0 * 2^h_min when h_min <= 4096, otherwise absent.
    std::optional<BigInt> n;
    /// ell * (1/2 - eps/(2 ell))^t <= 2^-(t+1) checked directly.
    bool formula_t_sufficient = false;
    /// Smallest t satisfying that inequality.
    std::uint64_t minimal_sufficient_t = 0;
};

/// Throws PreconditionError unless 0 < eps < ell, ell >= 1, r0 >= 1, and the
/// resulting t stays below 100000.
Thresholds thresholds(const Rational& eps, std::size_t ell, std::size_t r0);

struct BalancedWitness {
    std::size_t node = 0;
    std::size_t offset = 0;
    std::size_t length = 0;
    std::int64_t tau = 0;
};

struct NodeInequality {
    std::size_t node = 0;
    std::int64_t length = 0;
    std::int64_t weight = 0;
    std::size_t lighter_child = 0;
    std::int64_t lighter_weight = 0;
    /// W(R(v)) <= W(v)/2 - eps |v| / (2 ell)
    bool unbalance_bound = false;
    /// W(R(v)) <= (1/2 - eps/(2 ell)) W(v)
    bool ratio_bound = false;
};

struct ChainStep {
    std::size_t j = 0;
    std::int64_t length = 0;        // L(A_j)
    std::int64_t weight = 0;        // W(A_j)
    std::int64_t parent_r_weight = 0;  // W(R(A_{j-1}))
    /// W(A_j) <= W(R(A_{j-1})) <= (1/2 - eps/(2 ell)) W(A_{j-1})
    bool holds = false;
};

struct DecayCheck {
    std::size_t i = 0;
    std::int64_t layer_length = 0;      // L(X_i)
    std::int64_t later_layer_length = 0;  // L(X_{i+t})
    /// L(X_{i+t}) <= (1 - 2^-(t+1)) L(X_i)
    bool holds = false;
    /// L(X_{i+t}) <= (1 - 2^-t) L(X_i) + L(A_t)
    bool split_bound = false;
    std::vector<ChainStep> chain;
    /// L(A_t) <= ell W(A_t) <= ell (1/2 - eps/(2 ell))^t L(X_i) <= L(X_i) / 2^(t+1)
    bool tail_bound = false;
};

struct LayerPartition {
    Symbol a_star = 0;
    std::vector<std::size_t> members;
    std::vector<std::vector<std::size_t>> layers;
    std::vector<std::int64_t> layer_lengths;
    std::vector<std::int64_t> layer_weights;
    /// n >= L(X_0) >= L(X_1) >= ... >= L(X_h)
    bool lengths_nonincreasing = false;
    /// Every node of X_i (i >= 1) has an ancestor in X_{i-1}.
    bool ancestors_in_previous_layer = false;
    /// Sum of the layer lengths equals L(X).
    bool partition_exact = false;
    std::vector<NodeInequality> node_checks;
    std::optional<std::uint64_t> t;
    std::vector<DecayCheck> decay;

    bool all_hold() const;
};

/// Layers and inequalities for X = S_{a*}. These hold for any ell-periodic
/// source with ell | r0, whether or not a balanced node exists.
LayerPartition analyze_layers(const WeightedTree& tree, const Classification& stats, Symbol a_star,
                              std::optional<std::uint64_t> t);

struct UnbalancedCertificate {
    /// L(S_a) per symbol.
    std::vector<std::int64_t> unbalanced_mass;
    /// (h + 1) * n = sum of all node lengths.
    std::int64_t total_mass = 0;
    std::size_t occurring_symbols = 0;
    /// sum_a L(S_a) >= (h + 1) n
    bool coverage = false;
    /// L(S_{a*}) >= (h + 1) n / |Sigma| >= (h + 1) n / ell
    bool a_star_mass = false;
    LayerPartition partition;

    bool all_hold() const;
};

struct TreeVerdict {
    std::optional<BalancedWitness> witness;
    std::optional<UnbalancedCertificate> certificate;
    /// Set when CertifyOptions::check_all_substrings is on: any even substring
    /// of length >= r0 with tau <= eps * length.
    std::optional<SubstringWitness> substring_witness;
    bool substrings_checked = false;
};

struct CertifyOptions {
    bool check_all_substrings = false;
};

/// Either a balanced node (shallowest, leftmost) or a certificate that every
/// step of the decay argument holds. Throws PreconditionError if w is not
/// ell-periodic, r0 is not a multiple of ell, or the tree shape is wrong.
TreeVerdict certify_or_refute(const Word& w, std::size_t r0, const Rational& eps, std::size_t ell,
                              const CertifyOptions& options = {});

/// The symbol maximising L(S_a) (ties: smallest index).
Symbol heaviest_unbalanced_symbol(const Classification& stats);

struct EmpiricalOptions {
    std::size_t alphabet_size = 2;
    std::size_t ell = 3;
    Rational eps{1, 2};
    std::size_t r0 = 2;
    std::size_t n_cap = 24;
    std::uint64_t node_budget = 500'000'000;
    unsigned workers = 1;
};

struct EmpiricalBound {
    /// Minimal n forcing a qualifying substring in every ell-periodic word, if <= n_cap.
    std::optional<std::size_t> n;
    /// Longest ell-periodic word with no qualifying substring (capped at n_cap).
    Word longest_avoiding;
    std::uint64_t nodes = 0;
    bool budget_exhausted = false;
};

/// Exhaustive depth-first enumeration of ell-periodic words (prefixes that
/// break periodicity or contain a substring of length 2r >= 2 r0 with
/// tau <= eps r are not extended). Symbols are introduced in first-use order.
EmpiricalBound empirical_lemma_bound(const EmpiricalOptions& options);

}  // namespace anagram_forge
