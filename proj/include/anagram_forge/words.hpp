#pragma once

// String machinery: histograms, imbalance, anagramish detection,
// periodicity, near-anagramish search and backtracking word search.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "anagram_forge/rational.hpp"

namespace anagram_forge {

/// Index of a letter within its alphabet.
using Symbol = std::uint32_t;

class Alphabet {
public:
    /// Throws std::invalid_argument when empty or when tokens repeat.
    explicit Alphabet(std::vector<std::string> symbols);

    /// "a", "b", ..., "z", then "s26", "s27", ...
    static Alphabet letters(std::size_t k);
    /// "1", "2", ..., "c" -- the colour alphabet of a c-colouring.
    static Alphabet colours(std::size_t c);

    std::size_t size() const { return symbols_.size(); }
    const std::string& token(Symbol s) const { return symbols_.at(s); }
    const std::vector<std::string>& tokens() const { return symbols_; }
    std::optional<Symbol> find(std::string_view token) const;
    /// True when every token is exactly one character long.
    bool single_character() const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> symbols_;
};

/// A finite (possibly empty) sequence over an alphabet.
class Word {
public:
    Word(Alphabet alphabet, std::vector<Symbol> letters);
    Word(std::shared_ptr<const Alphabet> alphabet, std::vector<Symbol> letters);

    /// Parses comma/whitespace separated tokens, or contiguous characters
    /// when the text has no separators. The alphabet is the sorted set of
    /// distinct tokens.
    static Word parse(std::string_view text);
    /// Parses against a fixed alphabet; unknown tokens throw.
    static Word parse(std::string_view text, const Alphabet& alphabet);

    const Alphabet& alphabet() const { return *alphabet_; }
    const std::shared_ptr<const Alphabet>& alphabet_ptr() const { return alphabet_; }
    std::span<const Symbol> letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Symbol operator[](std::size_t i) const { return letters_[i]; }

    Word substr(std::size_t offset, std::size_t length) const;
    Word reversed() const;
    /// Contiguous text for single-character alphabets, else comma separated.
    std::string to_string() const;
    std::vector<std::string> tokens() const;

    bool operator==(const Word& other) const;

private:
    std::shared_ptr<const Alphabet> alphabet_;
    std::vector<Symbol> letters_;
};

struct Histogram {
    std::vector<std::int64_t> counts;

    std::int64_t total() const;
    bool operator==(const Histogram&) const = default;
};

/// Prefix sums over a letter sequence; any window costs O(alphabet) to query.
class PrefixHistogram {
public:
    PrefixHistogram(std::span<const Symbol> letters, std::size_t alphabet_size);

    std::size_t size() const { return length_; }
    std::size_t alphabet_size() const { return k_; }
    /// Occurrences of `a` in [i, j). No range checks.
    std::int64_t count(Symbol a, std::size_t i, std::size_t j) const {
        return table_[j * k_ + a] - table_[i * k_ + a];
    }
    /// Throws std::out_of_range unless i <= j <= size().
    Histogram window(std::size_t i, std::size_t j) const;
    /// tau of the even-length window [i, i + 2r).
    std::int64_t tau(std::size_t i, std::size_t r) const;

private:
    std::size_t length_;
    std::size_t k_;
    std::vector<std::int32_t> table_;
};

struct ImbalanceReport {
    /// First-half count minus second-half count, per symbol.
    std::vector<std::int64_t> per_symbol_delta;
    std::vector<std::int64_t> per_symbol_tau;
    std::int64_t tau = 0;
};

struct SubstringWitness {
    std::size_t offset = 0;
    std::size_t length = 0;
    std::int64_t tau_value = 0;

    std::size_t half_length() const { return length / 2; }
    bool operator==(const SubstringWitness&) const = default;
};

Histogram histogram(const Word& w, std::size_t i, std::size_t j);

/// Throws std::invalid_argument for odd-length words.
ImbalanceReport imbalance(const Word& w);

/// False for empty and odd-length words.
bool is_anagramish(const Word& w);
bool is_anagramish(std::span<const Symbol> letters, std::size_t alphabet_size);

/// First anagramish factor by (offset, length), or nullopt if w is anagram-free.
std::optional<SubstringWitness> find_anagramish_substring(const Word& w);
std::optional<SubstringWitness> find_anagramish_substring(std::span<const Symbol> letters,
                                                          std::size_t alphabet_size);

enum class PeriodicityAlphabet { Occurring, Declared };

/// Every length-ell window contains every symbol (of those occurring in w,
/// or of the declared alphabet). Vacuously true when |w| < ell.
bool is_ell_periodic(const Word& w, std::size_t ell,
                     PeriodicityAlphabet basis = PeriodicityAlphabet::Occurring);
bool is_ell_periodic(std::span<const Symbol> letters, std::size_t alphabet_size, std::size_t ell,
                     PeriodicityAlphabet basis = PeriodicityAlphabet::Occurring);

/// Substring of length 2r >= 2*r0 with tau <= eps*r minimising tau/r
/// (ties: smaller offset, then shorter).
std::optional<SubstringWitness> find_near_anagramish(const Word& w, std::size_t r0,
                                                     const Rational& eps);
std::optional<SubstringWitness> find_near_anagramish(std::span<const Symbol> letters,
                                                     std::size_t alphabet_size, std::size_t r0,
                                                     const Rational& eps);

struct LongestSearchOptions {
    std::size_t k = 3;
    std::size_t max_len = 8;
    std::uint64_t node_budget = 10'000'000;
    /// Only extend with symbols whose first occurrence is in index order.
    bool canonical = false;
    unsigned workers = 1;
};

struct LongestSearchResult {
    Word word;
    std::uint64_t nodes = 0;
    /// The whole search space was explored without hitting the budget.
    bool exhausted = false;
    bool reached_max = false;
};

/// Depth-first search for the longest anagram-free word over k letters.
///
/// The search is split into one task per admissible first letter. Each task
/// gets an equal share of node_budget (a node is one candidate extension).
/// Tasks are merged as if run in index order, stopping at the first task that
/// reaches max_len, so the result does not depend on the worker count.
LongestSearchResult longest_anagram_free(const LongestSearchOptions& options);

/// Black-box hereditary predicate on letter sequences.
using WordPredicate = std::function<bool(std::span<const Symbol>)>;

struct CoreAlphabetResult {
    /// Indices into the probed alphabet.
    std::vector<Symbol> core;
    /// Smallest window making every witness periodic over `core`;
    /// nullopt if some witness misses a core symbol entirely.
    std::optional<std::size_t> ell;
    /// All words of length n_probe over `core` accepted by the predicate.
    std::vector<Word> witnesses;
    bool witnesses_truncated = false;
    std::size_t n_probe = 0;
};

class NoCoreAlphabet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Probe-bounded search for a minimal sub-alphabet that keeps the predicate
/// satisfiable at every length up to n_probe. Subsets are tried by increasing
/// size, then lexicographically. This only approximates the existential
/// statement: nothing beyond n_probe is checked.
/// Throws NoCoreAlphabet when even the full alphabet fails.
CoreAlphabetResult minimal_core_alphabet(const WordPredicate& predicate, const Alphabet& sigma,
                                         std::size_t n_probe,
                                         std::size_t max_witnesses = 1'000'000);

}  // namespace anagram_forge
