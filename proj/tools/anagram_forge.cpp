// anagram-forge: command-line front end.
//
// Exit codes: 0 the property holds or the search succeeded, 1 it fails (a
// witness is reported), 2 usage, input or precondition error. Reports go to
// stdout; progress and resume notes go to stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "anagram_forge/anaconstruct.hpp"
#include "anagram_forge/checkpoint.hpp"
#include "anagram_forge/fixtures.hpp"
#include "anagram_forge/gridmodel.hpp"
#include "anagram_forge/pathcheck.hpp"
#include "anagram_forge/serialize.hpp"
#include "anagram_forge/treebound.hpp"
#include "anagram_forge/words.hpp"

namespace af = anagram_forge;
using af::Json;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

constexpr std::size_t kGridCheckCap = 12;
constexpr std::size_t kAfcnNCap = 6;
constexpr std::size_t kAfcnColourCap = 4;
constexpr std::uint64_t kWordNodeCap = 10'000'000;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Global {
    std::string format = "text";
    unsigned workers = 1;
    bool force = false;
    std::string output;

    bool json() const { return format == "json"; }
};

struct Emitter {
    const Global& g;

    /// Writes the JSON report (json mode) or the text lines (text mode).
    void operator()(const Json& report, const std::string& text) const {
        const std::string body = g.json() ? af::dump(report) : text;
        if (g.output.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(g.output, std::ios::binary | std::ios::trunc);
            if (!out) throw UsageError("cannot write " + g.output);
            out << body;
        }
    }
};

af::Word load_word(const std::string& inline_text, const std::string& file) {
    if (!file.empty()) {
        std::string text = af::read_file(file);
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
        return af::Word::parse(text);
    }
    return af::Word::parse(inline_text);
}

std::string word_text(const af::Word& w, std::size_t offset, std::size_t length) {
    return w.substr(offset, length).to_string();
}

Json witness_json(const af::Word& w, const af::SubstringWitness& s) {
    Json j = af::to_json(s);
    j["text"] = word_text(w, s.offset, s.length);
    return j;
}

af::Rational rational_arg(const std::string& text, const char* name) {
    try {
        return af::parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--") + name + ": " + e.what());
    }
}

void require_cap(bool ok, const std::string& what, const Global& g) {
    if (!ok && !g.force) throw UsageError(what + " (pass --force to override)");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// word

struct WordArgs {
    std::string word;
    std::string file;
    std::size_t ell = 1;
    bool declared = false;
    std::size_t k = 3;
    std::size_t max_len = 8;
    std::uint64_t budget = kWordNodeCap;
    bool canonical = false;
    std::size_t r0 = 1;
    std::string eps = "1";
    std::string predicate = "anagram-free";
    std::size_t probe = 4;
};

int word_check(const WordArgs& a, const Global& g) {
    const af::Word w = load_word(a.word, a.file);
    const auto witness = af::find_anagramish_substring(w);
    Json report{{"command", "word check"}, {"word", w.to_string()}, {"length", w.size()},
                {"anagram_free", !witness}, {"witness", witness ? witness_json(w, *witness) : Json(nullptr)}};
    std::ostringstream text;
    if (witness) {
        text << "anagramish factor \"" << word_text(w, witness->offset, witness->length) << "\" at offset "
             << witness->offset << " (length " << witness->length << ")\n";
    } else {
        text << "anagram-free (length " << w.size() << ")\n";
    }
    Emitter{g}(report, text.str());
    return witness ? kFails : kHolds;
}

int word_tau(const WordArgs& a, const Global& g) {
    const af::Word w = load_word(a.word, a.file);
    if (w.size() % 2 != 0) throw UsageError("tau needs an even-length word, got length " + std::to_string(w.size()));
    const auto report = af::imbalance(w);
    Json j = af::to_json(report, w.alphabet());
    j["command"] = "word tau";
    j["word"] = w.to_string();
    std::ostringstream text;
    text << "tau = " << report.tau;
    for (std::size_t s = 0; s < w.alphabet().size(); ++s) {
        text << "  delta_" << w.alphabet().token(static_cast<af::Symbol>(s)) << " = " << report.per_symbol_delta[s];
    }
    text << "\n" << (report.tau == 0 ? "anagramish\n" : "not anagramish\n");
    Emitter{g}(j, text.str());
    return report.tau == 0 ? kHolds : kFails;
}

int word_periodic(const WordArgs& a, const Global& g) {
    if (a.ell == 0) throw UsageError("--ell must be positive");
    const af::Word w = load_word(a.word, a.file);
    const auto basis = a.declared ? af::PeriodicityAlphabet::Declared : af::PeriodicityAlphabet::Occurring;
    const bool ok = af::is_ell_periodic(w, a.ell, basis);
    Json witness = nullptr;
    std::string text = ok ? "every window of length " + std::to_string(a.ell) + " contains every symbol\n" : "";
    if (!ok) {
        // First failing window and what it lacks.
        const std::size_t k = w.alphabet().size();
        std::vector<bool> occurs(k, a.declared);
        for (std::size_t p = 0; p < w.size(); ++p) occurs[w[p]] = true;
        for (std::size_t i = 0; i + a.ell <= w.size() && witness.is_null(); ++i) {
            const auto h = af::histogram(w, i, i + a.ell);
            Json missing = Json::array();
            for (std::size_t s = 0; s < k; ++s) {
                if (occurs[s] && h.counts[s] == 0) missing.push_back(w.alphabet().token(static_cast<af::Symbol>(s)));
            }
            if (!missing.empty()) {
                witness = Json{{"offset", i}, {"text", word_text(w, i, a.ell)}, {"missing", missing}};
                text = "window \"" + word_text(w, i, a.ell) + "\" at offset " + std::to_string(i) + " lacks " +
                       missing.dump() + "\n";
            }
        }
    }
    Json report{{"command", "word periodic"}, {"word", w.to_string()}, {"ell", a.ell},
                {"basis", a.declared ? "declared" : "occurring"}, {"periodic", ok}, {"witness", witness}};
    Emitter{g}(report, text);
    return ok ? kHolds : kFails;
}

int word_longest(const WordArgs& a, const Global& g) {
    if (a.k == 0 || a.max_len == 0 || a.budget == 0) throw UsageError("--k, --max and --budget must be positive");
    require_cap(a.budget <= kWordNodeCap, "--budget above " + std::to_string(kWordNodeCap) + " nodes", g);
    af::LongestSearchOptions opt;
    opt.k = a.k;
    opt.max_len = a.max_len;
    opt.node_budget = a.budget;
    opt.canonical = a.canonical;
    opt.workers = g.workers;
    const auto r = af::longest_anagram_free(opt);
    const bool verified = !af::find_anagramish_substring(r.word);
    Json report{{"command", "word longest"}, {"k", a.k}, {"max_len", a.max_len}, {"node_budget", a.budget},
                {"canonical", a.canonical}, {"word", r.word.to_string()}, {"length", r.word.size()},
                {"nodes", r.nodes}, {"exhausted", r.exhausted}, {"reached_max", r.reached_max},
                {"verified_anagram_free", verified}};
    std::ostringstream text;
    text << "longest anagram-free word found: " << r.word.to_string() << " (length " << r.word.size() << ")\n"
         << "nodes " << r.nodes << ", exhausted " << yes_no(r.exhausted) << ", reached max " << yes_no(r.reached_max)
         << ", re-verified " << yes_no(verified) << "\n";
    Emitter{g}(report, text.str());
    return (r.exhausted || r.reached_max) && verified ? kHolds : kFails;
}

int word_near(const WordArgs& a, const Global& g) {
    const af::Rational eps = rational_arg(a.eps, "eps");
    if (a.r0 == 0 || eps <= 0) throw UsageError("--r0 and --eps must be positive");
    const af::Word w = load_word(a.word, a.file);
    const auto witness = af::find_near_anagramish(w, a.r0, eps);
    Json report{{"command", "word near"}, {"word", w.to_string()}, {"r0", a.r0}, {"eps", af::to_string(eps)},
                {"found", witness.has_value()}, {"witness", witness ? witness_json(w, *witness) : Json(nullptr)}};
    std::ostringstream text;
    if (witness) {
        text << "near-anagramish factor \"" << word_text(w, witness->offset, witness->length) << "\" at offset "
             << witness->offset << ": length " << witness->length << ", tau " << witness->tau_value << "\n";
    } else {
        text << "no factor of length >= " << 2 * a.r0 << " with tau <= " << af::to_string(eps) << " * r\n";
    }
    Emitter{g}(report, text.str());
    return witness ? kHolds : kFails;
}

int word_core(const WordArgs& a, const Global& g) {
    if (a.k == 0 || a.probe == 0) throw UsageError("--k and --probe must be positive");
    af::WordPredicate predicate;
    if (a.predicate == "anagram-free") {
        predicate = [k = a.k](std::span<const af::Symbol> s) { return !af::find_anagramish_substring(s, k); };
    } else if (a.predicate == "always") {
        predicate = [](std::span<const af::Symbol>) { return true; };
    } else {
        throw UsageError("--predicate must be anagram-free or always");
    }
    const af::Alphabet sigma = af::Alphabet::letters(a.k);
    Json report{{"command", "word core"}, {"k", a.k}, {"predicate", a.predicate}, {"n_probe", a.probe},
                {"approximation", true}};
    std::ostringstream text;
    try {
        const auto r = af::minimal_core_alphabet(predicate, sigma, a.probe);
        Json core = Json::array();
        for (auto s : r.core) core.push_back(sigma.token(s));
        Json witnesses = Json::array();
        for (const auto& w : r.witnesses) witnesses.push_back(w.to_string());
        report["found"] = true;
        report["core"] = core;
        report["ell"] = r.ell ? Json(*r.ell) : Json(nullptr);
        report["witnesses"] = witnesses;
        report["witnesses_truncated"] = r.witnesses_truncated;
        text << "core alphabet " << core.dump() << ", ell " << (r.ell ? std::to_string(*r.ell) : "none") << ", "
             << r.witnesses.size() << " witnesses of length " << a.probe << " (probe-bounded)\n";
        Emitter{g}(report, text.str());
        return kHolds;
    } catch (const af::NoCoreAlphabet& e) {
        report["found"] = false;
        report["core"] = nullptr;
        report["ell"] = nullptr;
        report["witnesses"] = Json::array();
        report["witnesses_truncated"] = false;
        text << e.what() << "\n";
        Emitter{g}(report, text.str());
        return kFails;
    }
}

// ---------------------------------------------------------------------------
// grid

struct GridArgs {
    std::string file;
    std::size_t n = 1;
    std::size_t c_max = 3;
    std::size_t m = 1;
    std::string cache;
    std::optional<std::size_t> max_fresh_tasks;
};

int grid_check(const GridArgs& a, const Global& g) {
    const af::GridColouring phi = af::grid_colouring_from_json(af::parse_json_file(a.file));
    require_cap(phi.n() <= kGridCheckCap, "grid check is capped at n <= " + std::to_string(kGridCheckCap), g);
    const auto verdict = af::verify_colouring(phi, g.workers);
    Json report = af::to_json(verdict);
    report["command"] = "grid check";
    report["n"] = phi.n();
    report["c"] = phi.c();
    std::ostringstream text;
    if (verdict.anagram_free) {
        text << "anagram-free colouring of G_" << phi.n() << " (" << verdict.paths_checked << " paths checked)\n";
    } else {
        text << "anagramish path:";
        for (const auto& v : verdict.witness->vertices) text << ' ' << v.name();
        text << "\ncolours: " << af::colour_trace(*verdict.witness, phi).to_string() << "\n";
    }
    Emitter{g}(report, text.str());
    return verdict.anagram_free ? kHolds : kFails;
}

int grid_afcn(const GridArgs& a, const Global& g) {
    if (a.n == 0 || a.c_max == 0) throw UsageError("--n and --cmax must be positive");
    require_cap(a.n <= kAfcnNCap && a.c_max <= kAfcnColourCap,
                "afcn search is capped at n <= " + std::to_string(kAfcnNCap) + ", cmax <= " +
                    std::to_string(kAfcnColourCap),
                g);
    af::AfcnOptions opt;
    opt.workers = g.workers;
    opt.fresh_task_limit = a.max_fresh_tasks;
    std::optional<af::FileCheckpoint> checkpoint;
    if (const auto dir = af::cache_directory(a.cache.empty() ? std::nullopt : std::optional(a.cache))) {
        checkpoint.emplace(*dir, a.n);
        if (checkpoint->discarded_stale()) std::cerr << "ignoring stale checkpoint " << checkpoint->path() << "\n";
        if (checkpoint->entries() > 0) {
            std::cerr << "resuming from " << checkpoint->path() << " (" << checkpoint->entries() << " tasks)\n";
        }
        opt.checkpoint = &*checkpoint;
    }
    const auto r = af::afcn_grid(a.n, a.c_max, opt);
    if (checkpoint) std::cerr << "loaded " << r.tasks_loaded << " finished tasks from the checkpoint\n";
    Json report{{"command", "grid afcn"}, {"n", a.n}, {"c_max", a.c_max},
                {"afcn", r.afcn ? Json(*r.afcn) : Json(nullptr)},
                {"colouring", r.colouring ? af::to_json(*r.colouring) : Json(nullptr)},
                {"nodes", r.nodes}, {"tasks_per_colour", r.tasks_per_colour}, {"interrupted", r.interrupted}};
    std::ostringstream text;
    if (r.interrupted) {
        text << "search interrupted after the fresh-task limit; rerun with the same cache to resume\n";
    } else if (r.afcn) {
        text << "afcn(G_" << a.n << ") = " << *r.afcn << "\n";
        text << "top:    " << Json(r.colouring->top_row()).dump() << "\nbottom: " << Json(r.colouring->bottom_row()).dump()
             << "\n";
    } else {
        text << "afcn(G_" << a.n << ") > " << a.c_max << "\n";
    }
    Emitter{g}(report, text.str());
    return r.afcn && !r.interrupted ? kHolds : kFails;
}

int grid_afcn_path(const GridArgs& a, const Global& g) {
    if (a.m == 0 || a.c_max == 0) throw UsageError("--m and --cmax must be positive");
    const auto r = af::afcn_path(a.m, a.c_max);
    Json report{{"command", "grid afcn-path"}, {"m", a.m}, {"c_max", a.c_max},
                {"afcn", r.afcn ? Json(*r.afcn) : Json(nullptr)},
                {"colouring", r.colouring ? Json(r.colouring->to_string()) : Json(nullptr)}, {"nodes", r.nodes}};
    std::ostringstream text;
    if (r.afcn) text << "afcn(P_" << a.m << ") = " << *r.afcn << " via " << r.colouring->to_string() << "\n";
    else text << "afcn(P_" << a.m << ") > " << a.c_max << "\n";
    Emitter{g}(report, text.str());
    return r.afcn ? kHolds : kFails;
}

// ---------------------------------------------------------------------------
// construct

struct ConstructArgs {
    std::size_t ell = 2;
    std::size_t r = 8;
    std::int64_t tau = 0;
    std::string eps;
    std::size_t c = 4;
    std::uint64_t seed = 0;
    std::string block_file;
    std::string path_file;
};

af::Rational eps_for(const ConstructArgs& a, const Json& block_json, const af::BlockString& s) {
    if (!a.eps.empty()) return rational_arg(a.eps, "eps");
    if (block_json.contains("provenance") && block_json["provenance"].contains("eps")) {
        return rational_arg(block_json["provenance"]["eps"].get<std::string>(), "eps");
    }
    return af::Rational(1, 8 * static_cast<std::int64_t>(s.ell));
}

int construct_plant(const ConstructArgs& a, const Global& g) {
    af::PlantOptions opt;
    opt.ell = a.ell;
    opt.r = a.r;
    opt.tau = a.tau;
    opt.c = a.c;
    opt.seed = a.seed;
    if (!a.eps.empty()) opt.eps = rational_arg(a.eps, "eps");
    const auto planted = af::plant(opt);
    Json j = af::to_json(planted.string);
    j["provenance"] = Json{{"generator", "plant"}, {"seed", a.seed}, {"ell", a.ell}, {"r", a.r}, {"tau", a.tau},
                           {"eps", af::to_string(planted.eps)}, {"alphabet_size", planted.alphabet_size},
                           {"attempts", planted.attempts}};
    std::ostringstream text;
    text << af::dump(j);
    // The block string is the product in both modes.
    Emitter{g}(j, text.str());
    return kHolds;
}

int construct_run(const ConstructArgs& a, const Global& g) {
    const Json input = af::parse_json_file(a.block_file);
    const af::BlockString s = af::block_string_from_json(input);
    const af::Rational eps = eps_for(a, input, s);
    if (const auto problems = af::construction_violations(s, eps); !problems.empty()) {
        std::string msg = "preconditions violated (eps = " + af::to_string(eps) + "):";
        for (const auto& p : problems) msg += "\n  " + p;
        throw UsageError(msg);
    }
    const auto built = af::construct_anagramish_path(s, eps);
    const auto report = af::verify_construction(s, built.assembled.path);
    const bool midpoint_ok = 2 * built.assembled.midpoint_index == built.assembled.path.size();
    Json roles_colourful = Json::array();
    for (auto role : built.roles.colourful) roles_colourful.push_back(af::to_string(role));
    Json roles_boring = Json::array();
    for (auto role : built.roles.boring) roles_boring.push_back(af::to_string(role));
    Json j{{"vertices", af::vertex_names(built.assembled.path)}, {"anagramish", report.anagramish},
           {"midpoint_index", built.assembled.midpoint_index}, {"midpoint_at_half", midpoint_ok},
           {"length", built.assembled.path.size()}, {"beta", built.profile.beta}, {"eps", af::to_string(eps)},
           {"roles", Json{{"colourful", roles_colourful}, {"boring", roles_boring}}}};
    std::ostringstream text;
    text << af::dump(j);
    Emitter{g}(j, text.str());
    return report.anagramish && report.valid_path && midpoint_ok ? kHolds : kFails;
}

int construct_verify(const ConstructArgs& a, const Global& g) {
    const af::BlockString s = af::block_string_from_json(af::parse_json_file(a.block_file));
    const Json path_json = af::parse_json_file(a.path_file);
    if (!path_json.contains("vertices")) throw af::FormatError("path file lacks \"vertices\"");
    const af::GridPath path = af::grid_path_from_json(path_json["vertices"]);
    const auto report = af::verify_construction(s, path);

    // The midpoint must fall where the path leaves H_r.
    Json midpoint = nullptr;
    if (s.symbols.size() % 2 == 0 && !s.symbols.empty() && report.valid_path) {
        const auto offsets = af::layout_offsets(s);
        const std::size_t boundary = af::boring_block(offsets, s.symbols.size() / 2).begin;
        std::size_t before = 0;
        for (const auto& v : path.vertices) before += v.column < boundary ? 1 : 0;
        midpoint = 2 * before == path.size();
    }
    Json j = af::to_json(report);
    j["command"] = "construct verify";
    j["midpoint_at_boundary"] = midpoint;
    std::ostringstream text;
    if (!report.valid_path) {
        text << "not a simple path: " << report.path_problem << "\n";
    } else if (report.anagramish) {
        text << "anagramish path of length " << report.length << "\n";
    } else {
        text << "not anagramish; first differing colour " << *report.first_differing_colour
             << ", residual " << Json(report.residual).dump() << "\n";
    }
    Emitter{g}(j, text.str());
    return report.valid_path && report.anagramish && midpoint != Json(false) ? kHolds : kFails;
}

// ---------------------------------------------------------------------------
// tree

struct TreeArgs {
    std::string word;
    std::string file;
    std::size_t r0 = 2;
    std::string eps = "1/2";
    std::size_t ell = 2;
    bool all_substrings = false;
    std::size_t sigma = 2;
    std::size_t cap = 24;
    std::uint64_t budget = 500'000'000;
};

int tree_build(const TreeArgs& a, const Global& g) {
    const af::Word w = load_word(a.word, a.file);
    const auto tree = af::build_tree(w, a.r0);
    Json nodes = Json::array();
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const auto& node = tree.node(i);
        nodes.push_back(Json{{"index", i}, {"begin", node.begin}, {"end", node.end}, {"depth", node.depth},
                             {"hist", node.hist}, {"first_half", node.first_half}});
    }
    const auto inv = af::check_tree_invariants(tree, a.ell);
    Json report{{"command", "tree build"}, {"word", w.to_string()}, {"r0", a.r0}, {"height", tree.height()},
                {"alphabet", w.alphabet().tokens()}, {"nodes", nodes}, {"additive", inv.additive}};
    std::ostringstream text;
    text << "tree of height " << tree.height() << " with " << tree.size() << " nodes over leaves of width " << a.r0
         << "\n";
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const auto& node = tree.node(i);
        text << std::string(2 * node.depth, ' ') << "[" << node.begin << ", " << node.end << ") "
             << Json(node.hist).dump() << "\n";
    }
    Emitter{g}(report, text.str());
    return inv.additive ? kHolds : kFails;
}

int tree_certify(const TreeArgs& a, const Global& g) {
    const af::Rational eps = rational_arg(a.eps, "eps");
    const af::Word w = load_word(a.word, a.file);
    const auto verdict = af::certify_or_refute(w, a.r0, eps, a.ell, af::CertifyOptions{a.all_substrings});
    const auto tree = af::build_tree(w, a.r0);
    const auto stats = af::classify(tree, eps, a.ell);
    const auto invariants = af::check_tree_invariants(tree, a.ell);
    std::optional<std::uint64_t> t;
    if (eps < af::Rational(static_cast<std::int64_t>(a.ell))) t = af::thresholds(eps, a.ell, a.r0).t;
    const auto telemetry = af::analyze_layers(tree, stats, af::heaviest_unbalanced_symbol(stats), t);

    Json report = af::to_json(verdict);
    report["command"] = "tree certify";
    report["word"] = w.to_string();
    report["r0"] = a.r0;
    report["eps"] = af::to_string(eps);
    report["ell"] = a.ell;
    report["height"] = tree.height();
    report["nodes"] = af::node_stats_json(tree, stats);
    report["invariants"] = Json{{"additive", invariants.additive},
                                {"periodic_lower_bound", invariants.periodic_lower_bound}};
    report["layers"] = af::to_json(telemetry);

    const bool holds = invariants.additive && invariants.periodic_lower_bound && telemetry.all_hold() &&
                       (verdict.witness || verdict.certificate->all_hold());
    std::ostringstream text;
    if (verdict.witness) {
        text << "balanced node " << verdict.witness->node << ": [" << verdict.witness->offset << ", "
             << verdict.witness->offset + verdict.witness->length << "), tau " << verdict.witness->tau << "\n";
    } else {
        text << "every node is unbalanced; certificate " << (verdict.certificate->all_hold() ? "holds" : "FAILS")
             << " (a* = " << w.alphabet().token(verdict.certificate->partition.a_star) << ")\n";
    }
    text << "layer inequalities for a* = " << w.alphabet().token(telemetry.a_star) << ": "
         << (telemetry.all_hold() ? "all hold" : "VIOLATED") << ", layer lengths "
         << Json(telemetry.layer_lengths).dump() << "\n";
    if (verdict.substrings_checked) {
        if (verdict.substring_witness) {
            text << "balanced substring at offset " << verdict.substring_witness->offset << ", length "
                 << verdict.substring_witness->length << "\n";
        } else {
            text << "no balanced substring of length >= " << a.r0 << "\n";
        }
    }
    Emitter{g}(report, text.str());
    return holds ? kHolds : kFails;
}

int tree_thresholds(const TreeArgs& a, const Global& g) {
    const af::Rational eps = rational_arg(a.eps, "eps");
    const auto t = af::thresholds(eps, a.ell, a.r0);
    Json report = af::to_json(t);
    report["command"] = "tree thresholds";
    report["eps"] = af::to_string(eps);
    report["ell"] = a.ell;
    report["r0"] = a.r0;
    std::ostringstream text;
    text << "t = " << t.t << "\nh_min = " << t.h_min << "\nn = " << (t.n ? "r0 * 2^h_min = " + t.n->str() : "r0 * 2^h_min (too large to print)")
         << "\nformula t sufficient: " << yes_no(t.formula_t_sufficient)
         << " (minimal sufficient t = " << t.minimal_sufficient_t << ")\n";
    Emitter{g}(report, text.str());
    return t.formula_t_sufficient ? kHolds : kFails;
}

int tree_empirical(const TreeArgs& a, const Global& g) {
    af::EmpiricalOptions opt;
    opt.alphabet_size = a.sigma;
    opt.ell = a.ell;
    opt.eps = rational_arg(a.eps, "eps");
    opt.r0 = a.r0;
    opt.n_cap = a.cap;
    opt.node_budget = a.budget;
    opt.workers = g.workers;
    require_cap(a.cap <= 64, "tree empirical is capped at --cap <= 64", g);
    const auto r = af::empirical_lemma_bound(opt);
    Json report{{"command", "tree empirical"}, {"sigma", a.sigma}, {"ell", a.ell}, {"eps", af::to_string(opt.eps)},
                {"r0", a.r0}, {"n_cap", a.cap}, {"n", r.budget_exhausted || !r.n ? Json(nullptr) : Json(*r.n)},
                {"longest_avoiding", r.longest_avoiding.to_string()},
                {"longest_avoiding_length", r.longest_avoiding.size()}, {"nodes", r.nodes},
                {"budget_exhausted", r.budget_exhausted}};
    std::ostringstream text;
    if (r.budget_exhausted) {
        text << "node budget exhausted after " << r.nodes << " nodes; no conclusion\n";
    } else if (r.n) {
        text << "minimal n = " << *r.n << "; longest avoiding word " << r.longest_avoiding.to_string() << " (length "
             << r.longest_avoiding.size() << "), " << r.nodes << " nodes\n";
    } else {
        text << "some " << a.ell << "-periodic word of length " << a.cap << " avoids qualifying substrings: "
             << r.longest_avoiding.to_string() << "\n";
    }
    Emitter{g}(report, text.str());
    return r.n && !r.budget_exhausted ? kHolds : kFails;
}

void add_word_input(CLI::App* cmd, WordArgs& a) {
    cmd->add_option("word", a.word, "Word: contiguous characters or comma/space separated tokens");
    cmd->add_option("--file", a.file, "Read the word from a file");
}

void add_tree_input(CLI::App* cmd, TreeArgs& a) {
    cmd->add_option("word", a.word, "Word: contiguous characters or comma/space separated tokens");
    cmd->add_option("--file", a.file, "Read the word from a file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anagram-forge: anagram-free words, grid colourings and their proof machinery"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--workers", g.workers, "Worker threads (results do not depend on this)")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    app.add_flag("--force", g.force, "Override feasibility caps");
    app.add_option("-o,--output", g.output, "Write the report to a file instead of stdout");

    WordArgs wa;
    GridArgs ga;
    ConstructArgs ca;
    TreeArgs ta;
    std::function<int()> action;

    auto* word = app.add_subcommand("word", "String machinery")->require_subcommand(1);
    auto* w_check = word->add_subcommand("check", "Find an anagramish factor");
    add_word_input(w_check, wa);
    w_check->callback([&] { action = [&] { return word_check(wa, g); }; });
    auto* w_tau = word->add_subcommand("tau", "Imbalance of an even-length word");
    add_word_input(w_tau, wa);
    w_tau->callback([&] { action = [&] { return word_tau(wa, g); }; });
    auto* w_periodic = word->add_subcommand("periodic", "Check ell-periodicity");
    add_word_input(w_periodic, wa);
    w_periodic->add_option("--ell", wa.ell, "Window length")->required();
    w_periodic->add_flag("--declared", wa.declared, "Require every symbol of the declared alphabet");
    w_periodic->callback([&] { action = [&] { return word_periodic(wa, g); }; });
    auto* w_longest = word->add_subcommand("longest", "Backtracking search for a long anagram-free word");
    w_longest->add_option("--k", wa.k, "Alphabet size")->capture_default_str();
    w_longest->add_option("--max", wa.max_len, "Stop at this length")->capture_default_str();
    w_longest->add_option("--budget", wa.budget, "Node budget")->capture_default_str();
    w_longest->add_flag("--canonical", wa.canonical, "Introduce letters in alphabetical order only");
    w_longest->callback([&] { action = [&] { return word_longest(wa, g); }; });
    auto* w_near = word->add_subcommand("near", "Find the factor of length >= 2 r0 minimising tau / r");
    add_word_input(w_near, wa);
    w_near->add_option("--r0", wa.r0, "Minimum half-length")->required();
    w_near->add_option("--eps", wa.eps, "Threshold: tau <= eps * r")->required();
    w_near->callback([&] { action = [&] { return word_near(wa, g); }; });
    auto* w_core = word->add_subcommand("core", "Probe-bounded minimal core alphabet for a built-in predicate");
    w_core->add_option("--predicate", wa.predicate, "anagram-free or always")->capture_default_str();
    w_core->add_option("--k", wa.k, "Alphabet size")->capture_default_str();
    w_core->add_option("--probe", wa.probe, "Probe length")->capture_default_str();
    w_core->callback([&] { action = [&] { return word_core(wa, g); }; });

    auto* grid = app.add_subcommand("grid", "Grid colourings")->require_subcommand(1);
    auto* g_check = grid->add_subcommand("check", "Verify a colouring is anagram-free");
    g_check->add_option("file", ga.file, "Colouring JSON")->required();
    g_check->callback([&] { action = [&] { return grid_check(ga, g); }; });
    auto* g_afcn = grid->add_subcommand("afcn", "Exhaustive anagram-free chromatic number of G_n");
    g_afcn->add_option("--n", ga.n, "Columns")->required();
    g_afcn->add_option("--cmax", ga.c_max, "Largest colour count to try")->capture_default_str();
    g_afcn->add_option("--cache", ga.cache, "Checkpoint directory (default: $ANAGRAM_FORGE_CACHE)");
    g_afcn->add_option("--max-fresh-tasks", ga.max_fresh_tasks, "Stop after this many uncached tasks");
    g_afcn->callback([&] { action = [&] { return grid_afcn(ga, g); }; });
    auto* g_path = grid->add_subcommand("afcn-path", "Anagram-free chromatic number of the path on m vertices");
    g_path->add_option("--m", ga.m, "Vertices")->required();
    g_path->add_option("--cmax", ga.c_max, "Largest colour count to try")->capture_default_str();
    g_path->callback([&] { action = [&] { return grid_afcn_path(ga, g); }; });

    auto* construct = app.add_subcommand("construct", "Anagramish paths through block strings")->require_subcommand(1);
    auto* c_plant = construct->add_subcommand("plant", "Generate a block string meeting the construction preconditions");
    c_plant->add_option("--ell", ca.ell, "Periodicity")->required();
    c_plant->add_option("--r", ca.r, "Half-length")->required();
    c_plant->add_option("--tau", ca.tau, "Target imbalance")->capture_default_str();
    c_plant->add_option("--eps", ca.eps, "Epsilon (default tau/r, or 1/(8 ell) when tau = 0)");
    c_plant->add_option("--c", ca.c, "Colour count")->capture_default_str();
    c_plant->add_option("--seed", ca.seed, "Random seed")->capture_default_str();
    c_plant->callback([&] { action = [&] { return construct_plant(ca, g); }; });
    auto* c_run = construct->add_subcommand("run", "Build the anagramish path");
    c_run->add_option("file", ca.block_file, "Block string JSON")->required();
    c_run->add_option("--eps", ca.eps, "Epsilon (default: provenance, else 1/(8 ell))");
    c_run->callback([&] { action = [&] { return construct_run(ca, g); }; });
    auto* c_verify = construct->add_subcommand("verify", "Re-check a path against a block string");
    c_verify->add_option("block", ca.block_file, "Block string JSON")->required();
    c_verify->add_option("path", ca.path_file, "Path JSON")->required();
    c_verify->callback([&] { action = [&] { return construct_verify(ca, g); }; });

    auto* tree = app.add_subcommand("tree", "Weighted-tree argument")->require_subcommand(1);
    auto* t_build = tree->add_subcommand("build", "Build the weighted tree");
    add_tree_input(t_build, ta);
    t_build->add_option("--r0", ta.r0, "Leaf width")->required();
    t_build->callback([&] { action = [&] { return tree_build(ta, g); }; });
    auto* t_certify = tree->add_subcommand("certify", "Balanced node or unbalanced certificate");
    add_tree_input(t_certify, ta);
    t_certify->add_option("--r0", ta.r0, "Leaf width")->required();
    t_certify->add_option("--eps", ta.eps, "Epsilon")->required();
    t_certify->add_option("--ell", ta.ell, "Periodicity")->required();
    t_certify->add_flag("--all-substrings", ta.all_substrings, "Also search every substring");
    t_certify->callback([&] { action = [&] { return tree_certify(ta, g); }; });
    auto* t_thresholds = tree->add_subcommand("thresholds", "t, h_min and n");
    t_thresholds->add_option("--eps", ta.eps, "Epsilon")->required();
    t_thresholds->add_option("--ell", ta.ell, "Periodicity")->required();
    t_thresholds->add_option("--r0", ta.r0, "Leaf width")->required();
    t_thresholds->callback([&] { action = [&] { return tree_thresholds(ta, g); }; });
    auto* t_empirical = tree->add_subcommand("empirical", "Exhaustive minimal n at small parameters");
    t_empirical->add_option("--sigma", ta.sigma, "Alphabet size")->capture_default_str();
    t_empirical->add_option("--ell", ta.ell, "Periodicity")->required();
    t_empirical->add_option("--eps", ta.eps, "Epsilon")->required();
    t_empirical->add_option("--r0", ta.r0, "Minimum half-length")->required();
    t_empirical->add_option("--cap", ta.cap, "Longest length enumerated")->capture_default_str();
    t_empirical->add_option("--budget", ta.budget, "Node budget")->capture_default_str();
    t_empirical->callback([&] { action = [&] { return tree_empirical(ta, g); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const af::Unattainable& e) {
        std::cerr << "unattainable: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
    }
    return kUsage;
}
