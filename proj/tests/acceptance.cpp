// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (0 when everything passes).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "anagram_forge/anaconstruct.hpp"
#include "anagram_forge/fixtures.hpp"
#include "anagram_forge/gridmodel.hpp"
#include "anagram_forge/pathcheck.hpp"
#include "anagram_forge/treebound.hpp"
#include "anagram_forge/words.hpp"
#include "oracles.hpp"

using namespace anagram_forge;
namespace fs = std::filesystem;

namespace {

// Runtime limits, in seconds.
constexpr double kLimitFootnote = 1.0;
constexpr double kLimitLongWords = 60.0;
constexpr double kLimitConstruction = 60.0;
constexpr double kLimitEmpirical = 120.0;

constexpr std::size_t kRoundTrips = 1000;
constexpr std::size_t kPlanted = 50;
constexpr std::size_t kTriples = 200;
constexpr std::size_t kTreeWords = 100;
constexpr std::uint64_t kLongWordBudget = 10'000'000;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_seconds(double s) {
    std::ostringstream out;
    out.precision(3);
    out << std::fixed << s << "s";
    return out.str();
}

std::vector<Symbol> letters_of(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

std::vector<oracle::V> as_pairs(const GridPath& p) {
    std::vector<oracle::V> out;
    for (const auto& v : p.vertices) out.emplace_back(static_cast<int>(v.row), static_cast<int>(v.column));
    return out;
}

bool oracle_simple_path(const std::vector<oracle::V>& p, int n) {
    std::set<oracle::V> seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].second < 0 || p[i].second >= n || !seen.insert(p[i]).second) return false;
        if (i > 0 && !oracle::grid_adjacent(p[i - 1], p[i])) return false;
    }
    return !p.empty();
}

Outcome footnote() {
    Stopwatch clock;
    LongestSearchOptions opt;
    opt.k = 3;
    opt.max_len = 8;
    const auto res = longest_anagram_free(opt);
    bool none_of_8 = true;
    oracle::for_each_word(3, 8, [&](const std::vector<Symbol>& w) { none_of_8 = none_of_8 && !oracle::anagram_free(w); });
    const bool seven = res.word.size() == 7 && oracle::anagram_free(letters_of(res.word));
    const double t = clock.seconds();
    Outcome o;
    o.pass = res.exhausted && !res.reached_max && seven && none_of_8 && t < kLimitFootnote;
    o.detail = "best length " + std::to_string(res.word.size()) + " (" + res.word.to_string() + "), exhausted=" +
               (res.exhausted ? "true" : "false") + ", oracle finds no length-8 word=" + (none_of_8 ? "true" : "false") +
               ", " + fmt_seconds(t) + " < " + fmt_seconds(kLimitFootnote);
    return o;
}

Outcome long_words() {
    Stopwatch clock;
    LongestSearchOptions opt;
    opt.k = 4;
    opt.max_len = 30;
    opt.node_budget = kLongWordBudget;
    const auto res = longest_anagram_free(opt);
    const bool verified = oracle::anagram_free(letters_of(res.word));
    const double t = clock.seconds();
    Outcome o;
    o.pass = res.word.size() >= 30 && res.nodes <= kLongWordBudget && verified && t < kLimitLongWords;
    o.detail = "length " + std::to_string(res.word.size()) + " in " + std::to_string(res.nodes) +
               " nodes, oracle verified=" + (verified ? "true" : "false") + ", " + fmt_seconds(t) + " < " +
               fmt_seconds(kLimitLongWords);
    return o;
}

Outcome round_trips() {
    std::mt19937_64 rng(2024);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < kRoundTrips; ++i) {
        const std::size_t width = 1 + draw(rng, 8);
        const std::size_t count = 1 + draw(rng, 6);
        const std::size_t c = 1 + draw(rng, 5);
        std::vector<BlockColouring> blocks;
        for (std::size_t b = 0; b < count; ++b) blocks.push_back(BlockColouring{random_colouring(rng, width, c)});
        if (split_blocks(concat_blocks(blocks), width) != blocks) ++failures;
        const GridColouring phi = random_colouring(rng, width * count, c);
        if (concat_blocks(split_blocks(phi, width)) != phi) ++failures;
    }
    return {failures == 0, std::to_string(kRoundTrips) + " instances, " + std::to_string(failures) + " failures"};
}

Outcome construction() {
    Stopwatch clock;
    std::size_t built = 0, good = 0, skipped = 0, nonzero_tau = 0;
    for (std::uint64_t seed = 0; built < kPlanted && seed < 100000; ++seed) {
        std::mt19937_64 rng(seed);
        PlantOptions opt;
        opt.ell = 2 + draw(rng, 2);
        opt.r = 2 * opt.ell + draw(rng, 41 - 2 * opt.ell);
        opt.tau = 2 * static_cast<std::int64_t>(draw(rng, 3));
        opt.seed = seed;
        PlantedInstance inst;
        try {
            inst = plant(opt);
        } catch (const PreconditionError&) {
            ++skipped;
            continue;
        }
        ++built;
        const BlockString& s = inst.string;
        const auto result = construct_anagramish_path(s, inst.eps);
        nonzero_tau += result.profile.beta > 0;
        const GridColouring phi = realize_sigma_string(s);
        const auto pairs = as_pairs(result.assembled.path);
        std::vector<Symbol> trace;
        for (const auto& v : pairs) trace.push_back(oracle::colour_at(phi, v));
        const std::size_t boundary = boring_block(layout_offsets(s), opt.r).begin;
        const std::size_t mid = result.assembled.midpoint_index;
        const bool at_boundary = 2 * mid == pairs.size() && mid > 0 &&
                                 static_cast<std::size_t>(pairs[mid - 1].second) < boundary &&
                                 static_cast<std::size_t>(pairs[mid].second) >= boundary;
        if (oracle_simple_path(pairs, static_cast<int>(phi.n())) && oracle::anagramish(trace) && at_boundary) ++good;
    }
    const double t = clock.seconds();
    Outcome o;
    o.pass = built == kPlanted && good == built && nonzero_tau > 0 && t < kLimitConstruction;
    o.detail = std::to_string(good) + "/" + std::to_string(built) + " anagramish with midpoint at the H_r/Q_r boundary (" +
               std::to_string(nonzero_tau) + " with tau > 0, " + std::to_string(skipped) +
               " parameter draws rejected), " + fmt_seconds(t) + " < " + fmt_seconds(kLimitConstruction);
    return o;
}

Outcome multiset_identity() {
    std::mt19937_64 rng(77);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < kTriples; ++i) {
        const std::size_t w = 4 * (1 + draw(rng, 3));
        const BlockColouring block{random_colouring(rng, w, 1 + draw(rng, 6))};
        const GridColouring phi = concat_blocks({block, block, block});
        std::multiset<Colour> lhs, rhs;
        for (const auto& v : block_subpath(FragmentKind::Top, 0, w).vertices) lhs.insert(phi.at(v));
        for (const auto& v : block_subpath(FragmentKind::Bottom, w, 2 * w).vertices) lhs.insert(phi.at(v));
        for (const auto& v : block_subpath(FragmentKind::ZigZag, 2 * w, 3 * w).vertices) rhs.insert(phi.at(v));
        failures += lhs != rhs;
    }
    return {failures == 0, std::to_string(kTriples) + " triples, " + std::to_string(failures) + " mismatches"};
}

std::string show(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(">cmax"); }

Outcome afcn_cross() {
    std::vector<std::string> problems;
    for (int n = 1; n <= 3; ++n) {
        for (std::size_t c = 1; c <= 4; ++c) {
            if (afcn_grid(n, c).afcn != oracle::afcn_grid(n, c)) {
                problems.push_back("grid n=" + std::to_string(n) + " cmax=" + std::to_string(c));
            }
        }
    }
    const bool g1 = afcn_grid(1, 4).afcn == std::optional<std::size_t>(2);
    std::string path_values;
    for (std::size_t m = 1; m <= 8; ++m) {
        const auto got = afcn_path(m, 4).afcn;
        if (got != oracle::afcn_path(m, 4)) problems.push_back("path m=" + std::to_string(m));
        path_values += (m > 1 ? "," : "") + show(got);
    }
    // Values above c_max count as c_max + 1 for monotonicity.
    std::string grid_values;
    std::size_t previous = 0;
    bool monotone = true;
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto got = afcn_grid(n, 4).afcn;
        const std::size_t value = got.value_or(5);
        monotone = monotone && value >= previous;
        previous = value;
        grid_values += (n > 1 ? "," : "") + show(got);
    }
    Outcome o;
    o.pass = problems.empty() && g1 && monotone;
    o.detail = "afcn(G_1..6)=" + grid_values + ", afcn(P_1..8)=" + path_values + ", oracle mismatches " +
               std::to_string(problems.size());
    for (const auto& p : problems) o.detail += " [" + p + "]";
    return o;
}

/// Everywhere-unbalanced words (no balanced node) so the certificate branch is exercised.
std::vector<Word> unbalanced_fixtures() {
    std::vector<Word> out;
    std::vector<Symbol> s;
    const std::size_t ell = 4, r0 = 8, n = 16;
    auto extend = [&](auto&& self) -> void {
        if (out.size() >= 20) return;
        if (s.size() == n) {
            const Word w(Alphabet::letters(2), s);
            const auto stats = classify(build_tree(w, r0), Rational(1, 4), ell);
            if (std::none_of(stats.nodes.begin(), stats.nodes.end(), [](const NodeStats& x) { return x.balanced(); })) {
                out.push_back(w);
            }
            return;
        }
        for (Symbol a = 0; a < 2; ++a) {
            s.push_back(a);
            if (s.size() < ell || std::count(s.end() - ell, s.end(), a) < static_cast<std::ptrdiff_t>(ell)) self(self);
            s.pop_back();
        }
    };
    extend(extend);
    return out;
}

Outcome tree_verifier() {
    std::mt19937_64 rng(99);
    std::size_t witnesses = 0, certificates = 0, bad = 0, telemetry_failures = 0;
    auto check = [&](const Word& w, std::size_t r0, const Rational& eps, std::size_t ell) {
        const auto tree = build_tree(w, r0);
        const auto inv = check_tree_invariants(tree, ell);
        const auto stats = classify(tree, eps, ell);
        const auto verdict = certify_or_refute(w, r0, eps, ell);
        bool ok = inv.additive && inv.periodic_lower_bound;
        if (verdict.witness) {
            ++witnesses;
            const auto& node = tree.node(verdict.witness->node);
            const auto letters = letters_of(w);
            const auto half = node.length() / 2;
            // Each symbol: tau_a * ell <= eps * |v|.
            for (Symbol a = 0; a < w.alphabet().size(); ++a) {
                std::int64_t d = 0;
                for (std::size_t i = node.begin; i < node.end; ++i) {
                    if (letters[i] == a) d += i < node.begin + half ? 1 : -1;
                }
                const Rational lhs(std::abs(d) * static_cast<std::int64_t>(ell));
                ok = ok && lhs <= eps * static_cast<std::int64_t>(node.length());
            }
        } else if (verdict.certificate) {
            ++certificates;
            ok = ok && verdict.certificate->all_hold();
        } else {
            ok = false;
        }
        std::optional<std::uint64_t> t;
        if (eps < Rational(static_cast<std::int64_t>(ell))) t = thresholds(eps, ell, r0).t;
        telemetry_failures += !analyze_layers(tree, stats, heaviest_unbalanced_symbol(stats), t).all_hold();
        bad += !ok;
    };
    const std::vector<Rational> eps_choices{Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2)};
    for (std::size_t i = 0; i < kTreeWords; ++i) {
        const std::size_t ell = 1 + draw(rng, 4);
        const std::size_t k = 1 + draw(rng, ell);
        // r0: an even multiple of ell.
        const std::size_t r0 = ell * (ell % 2 == 0 ? 1 + draw(rng, 2) : 2);
        const std::size_t h = draw(rng, 7);
        const Word w(Alphabet::letters(k), random_periodic_letters(rng, k, ell, r0 << h));
        check(w, r0, eps_choices[draw(rng, eps_choices.size())], ell);
    }
    const auto fixtures = unbalanced_fixtures();
    for (const auto& w : fixtures) check(w, 8, Rational(1, 4), 4);
    Outcome o;
    o.pass = bad == 0 && telemetry_failures == 0 && certificates >= fixtures.size() && !fixtures.empty();
    o.detail = std::to_string(kTreeWords) + " random words plus " + std::to_string(fixtures.size()) +
               " everywhere-unbalanced fixtures: " + std::to_string(witnesses) + " balanced witnesses, " +
               std::to_string(certificates) + " certificates, " + std::to_string(bad) + " failures, " +
               std::to_string(telemetry_failures) + " layer telemetry failures";
    return o;
}

Outcome empirical() {
    Stopwatch clock;
    std::vector<std::optional<std::size_t>> seen;
    std::string detail;
    for (unsigned workers : {1u, 4u, 1u, 4u}) {
        EmpiricalOptions opt;
        opt.alphabet_size = 2;
        opt.ell = 3;
        opt.eps = Rational(1, 2);
        opt.r0 = 2;
        opt.n_cap = 24;
        opt.workers = workers;
        const auto res = empirical_lemma_bound(opt);
        if (res.budget_exhausted) seen.push_back(std::nullopt);
        else seen.push_back(res.n);
        if (detail.empty()) {
            detail = "n=" + show(res.n) + ", longest avoiding word " + res.longest_avoiding.to_string() + ", " +
                     std::to_string(res.nodes) + " nodes";
        }
    }
    const double t = clock.seconds();
    const bool stable = std::all_of(seen.begin(), seen.end(), [&](const auto& v) { return v == seen.front(); });
    Outcome o;
    o.pass = seen.front().has_value() && stable && t < kLimitEmpirical;
    o.detail = detail + ", stable over 4 runs with workers {1,4}=" + (stable ? "true" : "false") + ", " + fmt_seconds(t) +
               " < " + fmt_seconds(kLimitEmpirical);
    return o;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
    return s;
}

struct ScriptLine {
    std::string name;
    int expected = 0;
    std::string args;
};

std::vector<ScriptLine> read_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<ScriptLine> out;
    for (std::string line; std::getline(in, line);) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto p1 = line.find('|');
        const auto p2 = line.find('|', p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos) throw std::runtime_error("bad line: " + line);
        out.push_back({trim(line.substr(0, p1)), std::stoi(trim(line.substr(p1 + 1, p2 - p1 - 1))),
                       trim(line.substr(p2 + 1))});
    }
    return out;
}

/// Runs every script line and returns stdout, exit codes and written files as one transcript.
std::string run_script(const std::vector<ScriptLine>& lines, unsigned workers, const fs::path& work,
                       std::vector<std::string>& wrong_exit) {
    fs::remove_all(work);
    fs::create_directories(work);
    std::string transcript;
    for (const auto& line : lines) {
        std::string args = replace_all(line.args, "$WORK", work.string());
        args = replace_all(args, "$DATA", ANAGRAM_FORGE_DATA_DIR);
        const std::string cmd = std::string("'") + ANAGRAM_FORGE_CLI + "' --format json --workers " +
                                std::to_string(workers) + " " + args + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) throw std::runtime_error("popen failed");
        std::string out;
        char buf[4096];
        for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
        const int status = pclose(pipe);
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        if (code != line.expected) wrong_exit.push_back(line.name + " exit " + std::to_string(code));
        transcript += "== " + line.name + " exit " + std::to_string(code) + "\n" + out;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(work)) {
        if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        transcript += "== file " + fs::relative(f, work).string() + "\n" + body.str();
    }
    return transcript;
}

Outcome determinism() {
    const auto lines = read_script(ANAGRAM_FORGE_REPRO_COMMANDS);
    const fs::path base = fs::temp_directory_path() / ("anagram-forge-acceptance-" + std::to_string(::getpid()));
    std::vector<std::string> wrong_exit;
    std::vector<std::string> transcripts;
    for (int run = 0; run < 3; ++run) {
        for (unsigned workers : {1u, 4u}) transcripts.push_back(run_script(lines, workers, base / "work", wrong_exit));
    }
    fs::remove_all(base);
    std::size_t differing = 0;
    for (const auto& t : transcripts) differing += t != transcripts.front();
    std::sort(wrong_exit.begin(), wrong_exit.end());
    wrong_exit.erase(std::unique(wrong_exit.begin(), wrong_exit.end()), wrong_exit.end());
    Outcome o;
    o.pass = differing == 0 && wrong_exit.empty();
    o.detail = std::to_string(lines.size()) + " commands x 3 runs x workers {1,4}: " + std::to_string(differing) +
               " transcripts differ from the first, " + std::to_string(wrong_exit.size()) + " unexpected exit codes";
    for (const auto& w : wrong_exit) o.detail += " [" + w + "]";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exhaustive search: no anagram-free ternary word of length 8, one of length 7", footnote},
        {"4-letter anagram-free word of length >= 30 within 1e7 nodes", long_words},
        {"block split/concat round trips", round_trips},
        {"planted near-anagramish block strings yield anagramish paths", construction},
        {"top + bottom = zig-zag colour multisets", multiset_identity},
        {"afcn cross-validation against brute force", afcn_cross},
        {"tree-proof verifier on random periodic words", tree_verifier},
        {"empirical near-anagram bound for |Sigma|=2, ell=3, eps=1/2, r0=2", empirical},
        {"byte-identical CLI output across runs and worker counts", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " | " << criteria[i].first << " | "
                  << o.detail << std::endl;
    }
    return failed;
}
