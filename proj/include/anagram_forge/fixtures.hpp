#pragma once

// Seeded generators for test and demo inputs: random ell-periodic letter
// sequences and planted block strings that meet the path-construction
// preconditions with a prescribed tau.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "anagram_forge/errors.hpp"
#include "anagram_forge/gridmodel.hpp"
#include "anagram_forge/rational.hpp"
#include "anagram_forge/words.hpp"

namespace anagram_forge {

/// Uniform integer in [0, bound) from raw engine output, identical on every platform.
inline std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

/// A sequence of `length` symbols from [0, m) in which every window of `ell`
/// consecutive positions contains all m symbols (when length >= ell).
/// Requires 1 <= m <= ell.
std::vector<Symbol> random_periodic_letters(std::mt19937_64& rng, std::size_t m, std::size_t ell,
                                            std::size_t length);

GridColouring random_colouring(std::mt19937_64& rng, std::size_t n, std::size_t c);

struct PlantOptions {
    std::size_t ell = 2;
    std::size_t r = 8;
    std::int64_t tau = 0;
    /// Defaults to tau / r when tau > 0, else 1 / (8 ell).
    std::optional<Rational> eps;
    std::size_t c = 4;
    std::uint64_t seed = 0;
    std::size_t attempts_per_alphabet = 2000;
};

struct PlantedInstance {
    BlockString string;
    Rational eps;
    /// Number of distinct block symbols used.
    std::size_t alphabet_size = 0;
    std::uint64_t attempts = 0;
};

/// No string with the requested (ell, r, tau) was found. Some combinations
/// cannot exist: with ell = 2 every block string alternates, so tau = 0 for even r.
class Unattainable : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Throws PreconditionError (listing each violated inequality) when the
/// parameters break the construction preconditions, Unattainable when the
/// rejection sampler finds no string with exactly the requested tau.
PlantedInstance plant(const PlantOptions& options);

}  // namespace anagram_forge
