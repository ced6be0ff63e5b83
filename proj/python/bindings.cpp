// Python extension: each call takes plain values and returns the same JSON
// text the CLI emits, which the package decodes into dicts.

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anagram_forge/anaconstruct.hpp"
#include "anagram_forge/fixtures.hpp"
#include "anagram_forge/pathcheck.hpp"
#include "anagram_forge/serialize.hpp"
#include "anagram_forge/treebound.hpp"
#include "anagram_forge/words.hpp"

namespace py = pybind11;
namespace af = anagram_forge;
using af::Json;

namespace {

Json optional_witness(const std::optional<af::SubstringWitness>& w) { return w ? af::to_json(*w) : Json(nullptr); }

std::string tau(const std::string& word) {
    const auto w = af::Word::parse(word);
    return af::to_json(af::imbalance(w), w.alphabet()).dump();
}

std::string find_anagramish_substring(const std::string& word) {
    return optional_witness(af::find_anagramish_substring(af::Word::parse(word))).dump();
}

std::string find_near_anagramish(const std::string& word, std::size_t r0, const std::string& eps) {
    return optional_witness(af::find_near_anagramish(af::Word::parse(word), r0, af::parse_rational(eps))).dump();
}

std::string longest_anagram_free(std::size_t k, std::size_t max_len, std::uint64_t budget, bool canonical,
                                 unsigned workers) {
    af::LongestSearchOptions opt{k, max_len, budget, canonical, workers};
    af::LongestSearchResult r = [&] {
        py::gil_scoped_release release;
        return af::longest_anagram_free(opt);
    }();
    return Json{{"word", r.word.to_string()}, {"length", r.word.size()}, {"nodes", r.nodes},
                {"exhausted", r.exhausted}, {"reached_max", r.reached_max}}
        .dump();
}

std::string verify_colouring(const std::string& colouring_json, unsigned workers) {
    const auto phi = af::grid_colouring_from_json(Json::parse(colouring_json));
    py::gil_scoped_release release;
    return af::to_json(af::verify_colouring(phi, workers)).dump();
}

std::string afcn_grid(std::size_t n, std::size_t c_max, unsigned workers) {
    af::AfcnOptions opt;
    opt.workers = workers;
    af::AfcnResult r = [&] {
        py::gil_scoped_release release;
        return af::afcn_grid(n, c_max, opt);
    }();
    return Json{{"afcn", r.afcn ? Json(*r.afcn) : Json(nullptr)},
                {"colouring", r.colouring ? af::to_json(*r.colouring) : Json(nullptr)},
                {"nodes", r.nodes}}
        .dump();
}

std::string afcn_path(std::size_t m, std::size_t c_max) {
    const auto r = af::afcn_path(m, c_max);
    return Json{{"afcn", r.afcn ? Json(*r.afcn) : Json(nullptr)},
                {"colouring", r.colouring ? Json(r.colouring->to_string()) : Json(nullptr)}}
        .dump();
}

std::string plant(std::size_t ell, std::size_t r, std::int64_t tau_target, std::optional<std::string> eps,
                  std::size_t c, std::uint64_t seed) {
    af::PlantOptions opt;
    opt.ell = ell;
    opt.r = r;
    opt.tau = tau_target;
    opt.c = c;
    opt.seed = seed;
    if (eps) opt.eps = af::parse_rational(*eps);
    const auto planted = af::plant(opt);
    Json j = af::to_json(planted.string);
    j["provenance"] = Json{{"generator", "plant"}, {"seed", seed}, {"ell", ell}, {"r", r}, {"tau", tau_target},
                           {"eps", af::to_string(planted.eps)}, {"alphabet_size", planted.alphabet_size},
                           {"attempts", planted.attempts}};
    return j.dump();
}

std::string construct_path(const std::string& block_json, const std::string& eps) {
    const auto s = af::block_string_from_json(Json::parse(block_json));
    const auto built = af::construct_anagramish_path(s, af::parse_rational(eps));
    const auto report = af::verify_construction(s, built.assembled.path);
    return Json{{"vertices", af::vertex_names(built.assembled.path)},
                {"anagramish", report.anagramish},
                {"midpoint_index", built.assembled.midpoint_index}}
        .dump();
}

std::string verify_construction(const std::string& block_json, const std::string& path_json) {
    const auto s = af::block_string_from_json(Json::parse(block_json));
    const auto path = af::grid_path_from_json(Json::parse(path_json).at("vertices"));
    return af::to_json(af::verify_construction(s, path)).dump();
}

std::string thresholds(const std::string& eps, std::size_t ell, std::size_t r0) {
    return af::to_json(af::thresholds(af::parse_rational(eps), ell, r0)).dump();
}

std::string certify(const std::string& word, std::size_t r0, const std::string& eps, std::size_t ell) {
    return af::to_json(af::certify_or_refute(af::Word::parse(word), r0, af::parse_rational(eps), ell)).dump();
}

std::string empirical(std::size_t sigma, std::size_t ell, const std::string& eps, std::size_t r0, std::size_t cap,
                      unsigned workers) {
    af::EmpiricalOptions opt;
    opt.alphabet_size = sigma;
    opt.ell = ell;
    opt.eps = af::parse_rational(eps);
    opt.r0 = r0;
    opt.n_cap = cap;
    opt.workers = workers;
    af::EmpiricalBound r = [&] {
        py::gil_scoped_release release;
        return af::empirical_lemma_bound(opt);
    }();
    return Json{{"n", r.n ? Json(*r.n) : Json(nullptr)}, {"longest_avoiding", r.longest_avoiding.to_string()},
                {"nodes", r.nodes}, {"budget_exhausted", r.budget_exhausted}}
        .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "anagram-forge native core";
    py::register_exception<af::PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    m.def("is_anagramish", [](const std::string& w) { return af::is_anagramish(af::Word::parse(w)); });
    m.def("is_ell_periodic", [](const std::string& w, std::size_t ell) {
        return af::is_ell_periodic(af::Word::parse(w), ell);
    });
    m.def("tau", &tau);
    m.def("find_anagramish_substring", &find_anagramish_substring);
    m.def("find_near_anagramish", &find_near_anagramish);
    m.def("longest_anagram_free", &longest_anagram_free);
    m.def("verify_colouring", &verify_colouring);
    m.def("afcn_grid", &afcn_grid);
    m.def("afcn_path", &afcn_path);
    m.def("plant", &plant);
    m.def("construct_path", &construct_path);
    m.def("verify_construction", &verify_construction);
    m.def("thresholds", &thresholds);
    m.def("certify", &certify);
    m.def("empirical", &empirical);
}
