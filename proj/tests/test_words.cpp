#include <doctest.h>

#include <numeric>
#include <random>

#include "anagram_forge/fixtures.hpp"
#include "anagram_forge/words.hpp"
#include "oracles.hpp"

using namespace anagram_forge;

namespace {

std::vector<Symbol> letters_of(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

Word random_word(std::mt19937_64& rng, std::size_t k, std::size_t n) {
    std::vector<Symbol> s(n);
    for (auto& x : s) x = static_cast<Symbol>(draw(rng, k));
    return Word(Alphabet::letters(k), s);
}

}  // namespace

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), std::invalid_argument);
    CHECK(Alphabet::letters(28).token(27) == "s27");
    CHECK(Alphabet::colours(3).token(2) == "3");
}

TEST_CASE("word parsing") {
    const Word w = Word::parse("aab");
    CHECK(w.size() == 3);
    CHECK(w.alphabet().tokens() == std::vector<std::string>{"a", "b"});
    CHECK(w.to_string() == "aab");
    const Word t = Word::parse("x1, y2 x1");
    CHECK(t.size() == 3);
    CHECK(t.to_string() == "x1,y2,x1");
    CHECK(Word::parse("").empty());
    CHECK_THROWS(Word::parse("abz", Alphabet::letters(2)));
}

TEST_CASE("histogram examples") {
    CHECK(histogram(Word::parse("aab"), 0, 3).counts == std::vector<std::int64_t>{2, 1});
    CHECK(histogram(Word::parse("aab"), 1, 1).counts == std::vector<std::int64_t>{0, 0});
    CHECK(histogram(Word::parse("abab"), 1, 3).counts == std::vector<std::int64_t>{1, 1});
    CHECK_THROWS_AS(histogram(Word::parse("aab"), 2, 1), std::out_of_range);
    CHECK_THROWS_AS(histogram(Word::parse("aab"), 0, 4), std::out_of_range);
}

TEST_CASE("prefix-sum histogram equals direct recount on 1000 random windows") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 1 + draw(rng, 5);
        const Word w = random_word(rng, k, draw(rng, 40));
        const std::size_t i = draw(rng, w.size() + 1);
        const std::size_t j = i + draw(rng, w.size() - i + 1);
        std::vector<std::int64_t> direct(k, 0);
        for (std::size_t p = i; p < j; ++p) ++direct[w[p]];
        const auto h = histogram(w, i, j);
        REQUIRE(h.counts == direct);
        REQUIRE(h.total() == static_cast<std::int64_t>(j - i));
    }
}

TEST_CASE("imbalance examples") {
    CHECK(imbalance(Word::parse("abba")).tau == 0);
    const auto r = imbalance(Word::parse("aabb"));
    CHECK(r.per_symbol_delta == std::vector<std::int64_t>{2, -2});
    CHECK(r.per_symbol_tau == std::vector<std::int64_t>{2, 2});
    CHECK(r.tau == 4);
    CHECK(imbalance(Word::parse("abab")).tau == 0);
    CHECK_THROWS_AS(imbalance(Word::parse("abc")), std::invalid_argument);
}

TEST_CASE("is_anagramish examples") {
    CHECK(is_anagramish(Word::parse("aa")));
    CHECK_FALSE(is_anagramish(Word::parse("ab")));
    CHECK_FALSE(is_anagramish(Word::parse("abc")));
    CHECK_FALSE(is_anagramish(Word::parse("")));
}

TEST_CASE("find_anagramish_substring examples") {
    CHECK_FALSE(find_anagramish_substring(Word::parse("abc")));
    const auto abab = find_anagramish_substring(Word::parse("abab"));
    REQUIRE(abab);
    CHECK(abab->offset == 0);
    CHECK(abab->length == 4);
    const auto aacb = find_anagramish_substring(Word::parse("aacb"));
    REQUIRE(aacb);
    CHECK(*aacb == SubstringWitness{0, 2, 0});
}

TEST_CASE("anagramish properties on random words") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t k = 1 + draw(rng, 4);
        const Word w = random_word(rng, k, draw(rng, 16));
        const auto s = letters_of(w);
        if (w.size() % 2 == 0) {
            // anagramish iff tau = 0, and tau matches direct counting
            REQUIRE(imbalance(w).tau == oracle::tau(s, k));
            REQUIRE(is_anagramish(w) == (!w.empty() && imbalance(w).tau == 0));
            REQUIRE(imbalance(w).tau % 2 == 0);
        }
        REQUIRE(is_anagramish(w) == oracle::anagramish(s));
        REQUIRE(is_anagramish(w) == is_anagramish(w.reversed()));

        // permutation invariance
        std::vector<Symbol> pi(k);
        std::iota(pi.begin(), pi.end(), 0);
        std::shuffle(pi.begin(), pi.end(), rng);
        std::vector<Symbol> permuted;
        for (Symbol x : s) permuted.push_back(pi[x]);
        const Word pw(Alphabet::letters(k), permuted);
        if (w.size() % 2 == 0) REQUIRE(imbalance(pw).tau == imbalance(w).tau);
        const auto a = find_anagramish_substring(w);
        const auto b = find_anagramish_substring(pw);
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
            REQUIRE(a->offset == b->offset);
            REQUIRE(a->length == b->length);
        }
        const auto expected = oracle::first_anagramish(s);
        REQUIRE(a.has_value() == expected.has_value());
        if (a) {
            REQUIRE(a->offset == expected->first);
            REQUIRE(a->length == expected->second);
        }
    }
}

TEST_CASE("is_ell_periodic examples") {
    CHECK(is_ell_periodic(Word::parse("abab"), 2));
    CHECK_FALSE(is_ell_periodic(Word::parse("aab"), 2));
    CHECK(is_ell_periodic(Word::parse("aabaab"), 3));
    CHECK(is_ell_periodic(Word::parse("ab"), 3));
    CHECK_THROWS(is_ell_periodic(Word::parse("ab"), 0));
    // Declared basis: "aaa" over {a, b} lacks b everywhere.
    const Word aaa = Word::parse("aaa", Alphabet::letters(2));
    CHECK(is_ell_periodic(aaa, 2));
    CHECK_FALSE(is_ell_periodic(aaa, 2, PeriodicityAlphabet::Declared));
}

TEST_CASE("periodic words have every occurring symbol floor(len/ell) times per window") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t ell = 1 + draw(rng, 4);
        const std::size_t m = 1 + draw(rng, ell);
        const auto s = random_periodic_letters(rng, m, ell, draw(rng, 30));
        const Word w(Alphabet::letters(m), s);
        REQUIRE(oracle::periodic(s, ell));
        REQUIRE(is_ell_periodic(w, ell));
        const auto root = histogram(w, 0, w.size());
        for (std::size_t i = 0; i <= w.size(); ++i) {
            for (std::size_t j = i + ell; j <= w.size(); ++j) {
                const auto h = histogram(w, i, j);
                for (std::size_t a = 0; a < m; ++a) {
                    if (root.counts[a] > 0) REQUIRE(h.counts[a] >= static_cast<std::int64_t>((j - i) / ell));
                }
            }
        }
    }
}

TEST_CASE("find_near_anagramish examples") {
    const auto w = find_near_anagramish(Word::parse("abab"), 2, Rational(1, 2));
    REQUIRE(w);
    CHECK(*w == SubstringWitness{0, 4, 0});
    CHECK_FALSE(find_near_anagramish(Word::parse("aabbab"), 3, Rational(1, 10)));
    CHECK_FALSE(find_near_anagramish(Word::parse(""), 1, Rational(1)));
}

TEST_CASE("find_near_anagramish matches the brute-force oracle on every binary word up to length 14") {
    const std::vector<std::pair<std::size_t, Rational>> params{
        {1, Rational(1, 2)}, {2, Rational(1, 2)}, {2, Rational(1)}, {3, Rational(1, 3)}, {1, Rational(1, 10)}};
    for (std::size_t n = 0; n <= 14; ++n) {
        oracle::for_each_word(2, n, [&](const std::vector<Symbol>& s) {
            const Word w(Alphabet::letters(2), s);
            for (const auto& [r0, eps] : params) {
                const auto got = find_near_anagramish(w, r0, eps);
                const auto want = oracle::near(s, 2, r0, eps);
                REQUIRE(got.has_value() == want.has_value());
                if (got) {
                    REQUIRE(got->offset == want->offset);
                    REQUIRE(got->length == want->length);
                    REQUIRE(got->tau_value == want->tau);
                }
            }
        });
    }
}

TEST_CASE("longest_anagram_free") {
    SUBCASE("one letter") {
        const auto r = longest_anagram_free({1, 10, 1000, false, 1});
        CHECK(r.word.size() == 1);
        CHECK(r.exhausted);
    }
    SUBCASE("three letters: 7 is the maximum") {
        const auto r = longest_anagram_free({3, 8, 10'000'000, false, 1});
        CHECK(r.word.size() == 7);
        CHECK(r.exhausted);
        CHECK_FALSE(r.reached_max);
        CHECK(oracle::anagram_free(letters_of(r.word)));
        // Independent confirmation: no word of length 8 over 3 letters is anagram-free.
        bool any = false;
        oracle::for_each_word(3, 8, [&](const std::vector<Symbol>& s) { any = any || oracle::anagram_free(s); });
        CHECK_FALSE(any);
    }
    SUBCASE("four letters reach 30") {
        const auto r = longest_anagram_free({4, 30, 10'000'000, false, 1});
        CHECK(r.reached_max);
        CHECK(r.word.size() == 30);
        CHECK(oracle::anagram_free(letters_of(r.word)));
    }
    SUBCASE("result does not depend on the worker count") {
        for (bool canonical : {false, true}) {
            const auto one = longest_anagram_free({4, 40, 200'000, canonical, 1});
            const auto four = longest_anagram_free({4, 40, 200'000, canonical, 4});
            CHECK(one.word == four.word);
            CHECK(one.nodes == four.nodes);
            CHECK(one.exhausted == four.exhausted);
        }
    }
    SUBCASE("budget exhaustion is reported") {
        const auto r = longest_anagram_free({4, 200, 1000, false, 1});
        CHECK_FALSE(r.exhausted);
        CHECK_FALSE(r.reached_max);
        CHECK(oracle::anagram_free(letters_of(r.word)));
    }
}

TEST_CASE("minimal_core_alphabet") {
    const auto anagram_free_pred = [](std::span<const Symbol> s) {
        return oracle::anagram_free({s.begin(), s.end()});
    };
    SUBCASE("binary anagram-free fails at length 4") {
        CHECK_THROWS_AS(minimal_core_alphabet(anagram_free_pred, Alphabet::letters(2), 4), NoCoreAlphabet);
    }
    SUBCASE("trivial predicate needs a single letter") {
        const auto r = minimal_core_alphabet([](std::span<const Symbol>) { return true; }, Alphabet::letters(3), 5);
        CHECK(r.core == std::vector<Symbol>{0});
        REQUIRE(r.ell);
        CHECK(*r.ell == 1);
    }
    SUBCASE("four letters, probe 8: no three-letter subset survives") {
        const auto r = minimal_core_alphabet(anagram_free_pred, Alphabet::letters(4), 8);
        CHECK(r.core == std::vector<Symbol>{0, 1, 2, 3});
        REQUIRE_FALSE(r.witnesses.empty());
        // Independently: every witness is anagram-free, and ell is minimal.
        for (const auto& w : r.witnesses) CHECK(oracle::anagram_free(letters_of(w)));
        REQUIRE(r.ell);
        auto covers = [&](std::size_t ell) {
            for (const auto& w : r.witnesses) {
                const auto s = letters_of(w);
                for (std::size_t i = 0; i + ell <= s.size(); ++i) {
                    std::set<Symbol> seen(s.begin() + i, s.begin() + i + ell);
                    if (seen.size() != 4) return false;
                }
            }
            return true;
        };
        CHECK(covers(*r.ell));
        CHECK_FALSE(covers(*r.ell - 1));
    }
}
