#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include <unistd.h>

#include "anagram_forge/checkpoint.hpp"
#include "anagram_forge/fixtures.hpp"
#include "anagram_forge/pathcheck.hpp"
#include "oracles.hpp"

using namespace anagram_forge;

namespace {

std::vector<std::uint32_t> ids(const GridPath& p) {
    std::vector<std::uint32_t> out;
    for (const auto& v : p.vertices) out.push_back(v.id());
    return out;
}

std::vector<Symbol> trace_letters(const GridPath& p, const GridColouring& phi) {
    const Word w = colour_trace(p, phi);
    return {w.letters().begin(), w.letters().end()};
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("anagram_forge_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("path validity") {
    CHECK(is_simple_path({{top(0), bottom(0), bottom(1)}}, 2));
    CHECK_FALSE(is_simple_path({{top(0), bottom(1)}}, 2));
    CHECK_FALSE(is_simple_path({{top(0), bottom(0), top(0)}}, 2));
    CHECK_FALSE(is_simple_path({{top(0), top(1)}}, 1));
    CHECK_FALSE(is_simple_path({}, 1));
}

TEST_CASE("enumerate_simple_paths examples") {
    std::vector<GridPath> seen;
    CHECK(enumerate_simple_paths(1, 2, 2, [&](const GridPath& p) { seen.push_back(p); return true; }) == 1);
    REQUIRE(seen.size() == 1);
    CHECK(seen[0] == GridPath{{top(0), bottom(0)}});
    CHECK(enumerate_simple_paths(2, 2, 2, [](const GridPath&) { return true; }) == 4);
    CHECK(enumerate_simple_paths(2, 2, 4, [](const GridPath&) { return true; }) == 12);
}

TEST_CASE("enumerate_simple_paths yields each path once up to reversal") {
    for (int n = 1; n <= 5; ++n) {
        // Oracle: all directed paths with >= 2 vertices, halved.
        const auto directed = oracle::all_directed_paths(n, 2);
        std::set<std::vector<std::uint32_t>> canonical;
        std::uint64_t count = enumerate_simple_paths(n, 2, 2 * n, [&](const GridPath& p) {
            REQUIRE(is_simple_path(p, n));
            auto forward = ids(p);
            auto backward = ids(p.reversed());
            REQUIRE(canonical.insert(std::min(forward, backward)).second);
            return true;
        });
        CHECK(count == directed.size() / 2);
        CHECK(canonical.size() == count);
    }
}

TEST_CASE("colour_trace") {
    const GridColouring phi(2, {1}, {2});
    const GridPath p{{top(0), bottom(0)}};
    CHECK(colour_trace(p, phi).to_string() == "12");
    CHECK(colour_trace(p.reversed(), phi).to_string() == "21");
    CHECK(colour_trace(GridPath{{bottom(0)}}, phi).size() == 1);
    CHECK_THROWS(colour_trace(GridPath{{top(1)}}, phi));
}

TEST_CASE("verify_colouring examples") {
    const auto bad = verify_colouring(GridColouring(1, {1}, {1}));
    CHECK_FALSE(bad.anagram_free);
    REQUIRE(bad.witness);
    CHECK(*bad.witness == GridPath{{top(0), bottom(0)}});
    CHECK(verify_colouring(GridColouring(2, {1}, {2})).anagram_free);
    const GridColouring square(2, {1, 2}, {2, 1});
    const auto v = verify_colouring(square);
    CHECK_FALSE(v.anagram_free);
    REQUIRE(v.witness);
    CHECK(oracle::anagramish(trace_letters(*v.witness, square)));
}

TEST_CASE("verify_colouring agrees with the oracle and is symmetric") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(draw(rng, 5));
        const std::size_t c = 2 + draw(rng, 4);
        const GridColouring phi = random_colouring(rng, n, c);
        const auto verdict = verify_colouring(phi, 1 + static_cast<unsigned>(draw(rng, 3)));
        const bool expected = oracle::colouring_anagram_free(phi, oracle::all_directed_paths(n, 2));
        REQUIRE(verdict.anagram_free == expected);
        REQUIRE(verdict.witness.has_value() == !verdict.anagram_free);
        if (verdict.witness) {
            REQUIRE(is_simple_path(*verdict.witness, n));
            REQUIRE(verdict.witness->size() % 2 == 0);
            REQUIRE(oracle::anagramish(trace_letters(*verdict.witness, phi)));
        }
        REQUIRE(verify_colouring(phi.mirrored()).anagram_free == verdict.anagram_free);
        std::vector<Colour> pi(c);
        std::iota(pi.begin(), pi.end(), 1);
        std::shuffle(pi.begin(), pi.end(), rng);
        std::vector<Colour> top_row, bottom_row;
        for (Colour x : phi.top_row()) top_row.push_back(pi[x - 1]);
        for (Colour x : phi.bottom_row()) bottom_row.push_back(pi[x - 1]);
        REQUIRE(verify_colouring(GridColouring(c, top_row, bottom_row)).anagram_free == verdict.anagram_free);
    }
}

TEST_CASE("verify_colouring witness does not depend on workers") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const GridColouring phi = random_colouring(rng, 2 + draw(rng, 6), 3 + draw(rng, 3));
        const auto one = verify_colouring(phi, 1);
        const auto four = verify_colouring(phi, 4);
        REQUIRE(one.anagram_free == four.anagram_free);
        REQUIRE(one.witness == four.witness);
    }
}

TEST_CASE("afcn_grid examples") {
    CHECK(afcn_grid(1, 3).afcn == std::optional<std::size_t>(2));
    CHECK_FALSE(afcn_grid(1, 1).afcn);
    CHECK_THROWS(afcn_grid(0, 3));
}

TEST_CASE("afcn_grid equals the unpruned oracle for n <= 3, c_max <= 4") {
    std::optional<std::size_t> previous;
    for (int n = 1; n <= 3; ++n) {
        for (std::size_t c_max = 1; c_max <= 4; ++c_max) {
            const auto got = afcn_grid(n, c_max);
            CHECK(got.afcn == oracle::afcn_grid(n, c_max));
            if (got.colouring) {
                CHECK(verify_colouring(*got.colouring).anagram_free);
                CHECK(got.colouring->c() == *got.afcn);
            }
        }
        const auto value = afcn_grid(n, 4).afcn;
        REQUIRE(value);
        if (previous) CHECK(*previous <= *value);
        previous = value;
    }
}

TEST_CASE("afcn_grid is worker independent") {
    for (std::size_t n = 1; n <= 4; ++n) {
        AfcnOptions four;
        four.workers = 4;
        const auto a = afcn_grid(n, 4);
        const auto b = afcn_grid(n, 4, four);
        CHECK(a.afcn == b.afcn);
        CHECK(a.colouring == b.colouring);
        CHECK(a.nodes == b.nodes);
    }
}

TEST_CASE("afcn_grid resumes from a checkpoint with the same result") {
    const auto dir = fresh_dir("resume");
    const std::size_t n = 4;
    const auto uninterrupted = afcn_grid(n, 4);

    std::size_t rounds = 0;
    AfcnResult resumed;
    do {
        FileCheckpoint checkpoint(dir, n);
        AfcnOptions opt;
        opt.checkpoint = &checkpoint;
        opt.fresh_task_limit = 2;
        resumed = afcn_grid(n, 4, opt);
        ++rounds;
        REQUIRE(rounds < 1000);
    } while (resumed.interrupted);
    CHECK(rounds > 1);
    CHECK(resumed.afcn == uninterrupted.afcn);
    CHECK(resumed.colouring == uninterrupted.colouring);
    CHECK(resumed.nodes == uninterrupted.nodes);

    // A stale header is ignored rather than trusted.
    {
        std::ofstream out(dir / "afcn_grid_n4.ndjson", std::ios::trunc);
        out << "{\"format\":\"anagram-forge/afcn-grid-checkpoint\",\"n\":4,\"version\":0}\n";
        out << "{\"c\":1,\"colouring\":null,\"found\":true,\"nodes\":0,\"task\":0}\n";
    }
    FileCheckpoint stale(dir, n);
    CHECK(stale.discarded_stale());
    CHECK(stale.entries() == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("afcn_path matches exhaustive word search for m <= 8") {
    const std::vector<std::size_t> expected{1, 2, 2, 3, 3, 3, 3, 4};
    for (std::size_t m = 1; m <= 8; ++m) {
        const auto got = afcn_path(m, 5);
        CHECK(got.afcn == oracle::afcn_path(m, 5));
        CHECK(got.afcn == std::optional<std::size_t>(expected[m - 1]));
        REQUIRE(got.colouring);
        CHECK(oracle::anagram_free({got.colouring->letters().begin(), got.colouring->letters().end()}));
    }
    CHECK(afcn_path(1, 1).afcn == std::optional<std::size_t>(1));
    CHECK(afcn_path(2, 2).afcn == std::optional<std::size_t>(2));
    CHECK(afcn_path(4, 3).afcn == std::optional<std::size_t>(3));
    CHECK_FALSE(afcn_path(4, 2).afcn);
}
