#include "anagram_forge/fixtures.hpp"

#include <algorithm>
#include <string>

#include "anagram_forge/anaconstruct.hpp"

namespace anagram_forge {

namespace {

/// Symbols of [0, m) absent from letters[begin, end).
std::size_t missing_count(const std::vector<Symbol>& letters, std::size_t begin, std::size_t end, std::size_t m) {
    std::vector<bool> seen(m, false);
    for (std::size_t p = begin; p < end; ++p) seen[letters[p]] = true;
    return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), false));
}

}  // namespace

std::vector<Symbol> random_periodic_letters(std::mt19937_64& rng, std::size_t m, std::size_t ell, std::size_t length) {
    if (m == 0 || m > ell) throw PreconditionError("need 1 <= m <= ell");
    std::vector<Symbol> letters;
    letters.reserve(length);
    std::vector<Symbol> options;
    while (letters.size() < length) {
        const std::size_t p = letters.size();
        options.clear();
        for (Symbol x = 0; x < m; ++x) {
            letters.push_back(x);
            // Every window overlapping position p must still be completable.
            bool ok = true;
            for (std::size_t end = p + 1; end <= std::min(length, p + ell) && ok; ++end) {
                if (end < ell && length >= ell) {
                    ok = missing_count(letters, 0, p + 1, m) <= ell - (p + 1);
                    continue;
                }
                if (length < ell) continue;
                const std::size_t begin = end - ell;
                ok = missing_count(letters, begin, p + 1, m) <= end - (p + 1);
            }
            letters.pop_back();
            if (ok) options.push_back(x);
        }
        if (options.empty()) {
            letters.clear();  // unreachable with the look-ahead above; restart defensively
            continue;
        }
        letters.push_back(options[draw(rng, options.size())]);
    }
    return letters;
}

GridColouring random_colouring(std::mt19937_64& rng, std::size_t n, std::size_t c) {
    std::vector<Colour> top(n), bottom(n);
    for (auto& x : top) x = static_cast<Colour>(1 + draw(rng, c));
    for (auto& x : bottom) x = static_cast<Colour>(1 + draw(rng, c));
    return GridColouring(c, std::move(top), std::move(bottom));
}

PlantedInstance plant(const PlantOptions& opt) {
    if (opt.ell == 0) throw PreconditionError("ell must be positive");
    if (opt.c == 0) throw PreconditionError("c must be positive");
    if (opt.tau < 0 || opt.tau % 2 != 0) throw PreconditionError("tau must be even and non-negative");
    const Rational eps = opt.eps ? *opt.eps
                         : opt.tau > 0 ? Rational(opt.tau, static_cast<std::int64_t>(opt.r))
                                       : Rational(1, 8 * static_cast<std::int64_t>(opt.ell));
    const auto r = static_cast<std::int64_t>(opt.r);
    const auto ell = static_cast<std::int64_t>(opt.ell);
    std::vector<std::string> violations;
    if (eps <= 0) violations.push_back("eps > 0");
    if (r < 2 * ell) violations.push_back("r >= 2 ell: " + std::to_string(r) + " < " + std::to_string(2 * ell));
    if (eps * (4 * ell) >= 1) violations.push_back("eps < 1/(4 ell): eps = " + to_string(eps));
    if (eps * r < opt.tau) violations.push_back("tau <= eps r: " + std::to_string(opt.tau) + " > " + to_string(eps * r));
    if (r >= 1 && eps * (2 * r) >= (r - 1) / ell) {
        violations.push_back("2 eps r < floor((r-1)/ell): " + to_string(eps * (2 * r)) + " >= " + std::to_string((r - 1) / ell));
    }
    if (!violations.empty()) {
        std::string msg = "plant parameters violate:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw PreconditionError(msg);
    }

    std::mt19937_64 rng(opt.seed);
    PlantedInstance out;
    out.eps = eps;
    std::vector<Symbol> letters;
    bool found = false;
    for (std::size_t m = opt.ell; m >= 1 && !found; --m) {
        for (std::size_t attempt = 0; attempt < opt.attempts_per_alphabet; ++attempt) {
            ++out.attempts;
            letters = random_periodic_letters(rng, m, opt.ell, 2 * opt.r);
            if (imbalance(Word(Alphabet::letters(m), letters)).tau == opt.tau) {
                out.alphabet_size = m;
                found = true;
                break;
            }
        }
    }
    if (!found) {
        throw Unattainable("no " + std::to_string(opt.ell) + "-periodic block string of length " +
                           std::to_string(2 * opt.r) + " with tau = " + std::to_string(opt.tau) + " found in " +
                           std::to_string(out.attempts) + " attempts");
    }

    BlockString& s = out.string;
    s.c = opt.c;
    s.ell = opt.ell;
    s.phi_star = BlockColouring{random_colouring(rng, 4, opt.c)};
    std::vector<BlockSymbol> table;
    while (table.size() < out.alphabet_size) {
        const std::size_t k = 1 + draw(rng, opt.ell);
        BlockSymbol sym{k, BlockColouring{random_colouring(rng, 4 * k, opt.c)}};
        if (std::find(table.begin(), table.end(), sym) == table.end()) table.push_back(std::move(sym));
    }
    for (Symbol x : letters) s.symbols.push_back(table[x]);

    if (const auto problems = construction_violations(s, eps); !problems.empty()) {
        std::string msg = "planted string failed re-verification:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw std::logic_error(msg);
    }
    return out;
}

}  // namespace anagram_forge
