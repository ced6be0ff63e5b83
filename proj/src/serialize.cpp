#include "anagram_forge/serialize.hpp"

#include <fstream>
#include <sstream>

namespace anagram_forge {

namespace {

template <typename T>
T get_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("field \"") + key + "\": " + e.what());
    }
}

std::string big_to_string(const BigInt& v) { return v.str(); }

}  // namespace

Json to_json(const GridColouring& phi) {
    return Json{{"n", phi.n()}, {"c", phi.c()}, {"top", phi.top_row()}, {"bottom", phi.bottom_row()}};
}

GridColouring grid_colouring_from_json(const Json& j) {
    const auto c = get_field<std::size_t>(j, "c");
    auto top = get_field<std::vector<Colour>>(j, "top");
    auto bottom = get_field<std::vector<Colour>>(j, "bottom");
    if (j.contains("n") && get_field<std::size_t>(j, "n") != top.size()) {
        throw FormatError("field \"n\" disagrees with the row length");
    }
    try {
        return GridColouring(c, std::move(top), std::move(bottom));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

Json to_json(const BlockString& s) {
    Json symbols = Json::array();
    for (const auto& sym : s.symbols) symbols.push_back(Json{{"k", sym.k}, {"phi", to_json(sym.phi.colouring)}});
    return Json{{"c", s.c}, {"ell", s.ell}, {"phi_star", to_json(s.phi_star.colouring)}, {"symbols", symbols}};
}

BlockString block_string_from_json(const Json& j) {
    BlockString s;
    s.c = get_field<std::size_t>(j, "c");
    s.ell = get_field<std::size_t>(j, "ell");
    s.phi_star = BlockColouring{grid_colouring_from_json(get_field<Json>(j, "phi_star"))};
    const auto symbols = get_field<Json>(j, "symbols");
    if (!symbols.is_array()) throw FormatError("field \"symbols\" must be an array");
    for (const auto& sym : symbols) {
        s.symbols.push_back(BlockSymbol{get_field<std::size_t>(sym, "k"),
                                        BlockColouring{grid_colouring_from_json(get_field<Json>(sym, "phi"))}});
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return s;
}

Json vertex_names(const GridPath& p) {
    Json out = Json::array();
    for (const auto& v : p.vertices) out.push_back(v.name());
    return out;
}

GridPath grid_path_from_json(const Json& names) {
    if (!names.is_array()) throw FormatError("path must be an array of vertex names");
    GridPath p;
    for (const auto& name : names) {
        if (!name.is_string()) throw FormatError("vertex names must be strings");
        try {
            p.vertices.push_back(GridVertex::parse(name.get<std::string>()));
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    return p;
}

Json to_json(const SubstringWitness& w) {
    return Json{{"offset", w.offset}, {"length", w.length}, {"half_length", w.half_length()}, {"tau", w.tau_value}};
}

Json to_json(const ImbalanceReport& report, const Alphabet& alphabet) {
    Json delta = Json::object();
    Json tau = Json::object();
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
        delta[alphabet.token(static_cast<Symbol>(a))] = report.per_symbol_delta[a];
        tau[alphabet.token(static_cast<Symbol>(a))] = report.per_symbol_tau[a];
    }
    return Json{{"delta", delta}, {"tau_per_symbol", tau}, {"tau", report.tau}, {"anagramish", report.tau == 0}};
}

Json to_json(const ColouringVerdict& verdict) {
    Json out{{"anagram_free", verdict.anagram_free}, {"paths_checked", verdict.paths_checked}};
    if (verdict.witness) out["witness_path"] = vertex_names(*verdict.witness);
    return out;
}

Json to_json(const ConstructionReport& report) {
    Json out{{"valid_path", report.valid_path},
             {"anagramish", report.anagramish},
             {"length", report.length},
             {"first_half", report.first_half},
             {"second_half", report.second_half},
             {"residual", report.residual}};
    if (!report.path_problem.empty()) out["path_problem"] = report.path_problem;
    out["first_differing_colour"] =
        report.first_differing_colour ? Json(*report.first_differing_colour) : Json(nullptr);
    return out;
}

Json to_json(const Thresholds& t) {
    return Json{{"t", t.t},
                {"h_min", big_to_string(t.h_min)},
                {"n", t.n ? Json(big_to_string(*t.n)) : Json(nullptr)},
                {"formula_t_sufficient", t.formula_t_sufficient},
                {"minimal_sufficient_t", t.minimal_sufficient_t}};
}

Json to_json(const LayerPartition& p) {
    Json node_checks = Json::array();
    for (const auto& c : p.node_checks) {
        node_checks.push_back(Json{{"node", c.node},
                                   {"length", c.length},
                                   {"weight", c.weight},
                                   {"lighter_child", c.lighter_child},
                                   {"lighter_weight", c.lighter_weight},
                                   {"unbalance_bound", c.unbalance_bound},
                                   {"ratio_bound", c.ratio_bound}});
    }
    Json decay = Json::array();
    for (const auto& d : p.decay) {
        Json chain = Json::array();
        for (const auto& s : d.chain) {
            chain.push_back(Json{{"j", s.j},
                                 {"length", s.length},
                                 {"weight", s.weight},
                                 {"parent_r_weight", s.parent_r_weight},
                                 {"holds", s.holds}});
        }
        decay.push_back(Json{{"i", d.i},
                             {"layer_length", d.layer_length},
                             {"later_layer_length", d.later_layer_length},
                             {"holds", d.holds},
                             {"split_bound", d.split_bound},
                             {"tail_bound", d.tail_bound},
                             {"chain", chain}});
    }
    return Json{{"a_star", p.a_star},
                {"members", p.members},
                {"layers", p.layers},
                {"layer_lengths", p.layer_lengths},
                {"layer_weights", p.layer_weights},
                {"lengths_nonincreasing", p.lengths_nonincreasing},
                {"ancestors_in_previous_layer", p.ancestors_in_previous_layer},
                {"partition_exact", p.partition_exact},
                {"node_checks", node_checks},
                {"t", p.t ? Json(*p.t) : Json(nullptr)},
                {"decay", decay},
                {"all_hold", p.all_hold()}};
}

Json to_json(const TreeVerdict& verdict) {
    Json out = Json::object();
    if (verdict.witness) {
        const auto& w = *verdict.witness;
        out["outcome"] = "balanced_witness";
        out["witness"] = Json{{"node", w.node}, {"offset", w.offset}, {"length", w.length}, {"tau", w.tau}};
    } else {
        const auto& c = *verdict.certificate;
        out["outcome"] = "certificate";
        out["certificate"] = Json{{"unbalanced_mass", c.unbalanced_mass},
                                  {"total_mass", c.total_mass},
                                  {"occurring_symbols", c.occurring_symbols},
                                  {"coverage", c.coverage},
                                  {"a_star_mass", c.a_star_mass},
                                  {"partition", to_json(c.partition)},
                                  {"all_hold", c.all_hold()}};
    }
    if (verdict.substrings_checked) {
        out["substring_witness"] = verdict.substring_witness ? to_json(*verdict.substring_witness) : Json(nullptr);
    }
    return out;
}

Json node_stats_json(const WeightedTree& tree, const Classification& stats) {
    Json nodes = Json::array();
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const auto& node = tree.node(i);
        nodes.push_back(Json{{"index", i},
                             {"begin", node.begin},
                             {"end", node.end},
                             {"depth", node.depth},
                             {"hist", node.hist},
                             {"tau_per_symbol", stats.nodes[i].tau_per_symbol},
                             {"unbalanced", stats.nodes[i].unbalanced},
                             {"balanced", stats.nodes[i].balanced()}});
    }
    return nodes;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Json parse_json_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

}  // namespace anagram_forge
