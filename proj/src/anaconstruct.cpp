#include "anagram_forge/anaconstruct.hpp"

#include <algorithm>

namespace anagram_forge {

SymbolTable intern_symbols(const BlockString& s) {
    SymbolTable table;
    table.word.reserve(s.symbols.size());
    for (const auto& sym : s.symbols) {
        auto it = std::find(table.symbols.begin(), table.symbols.end(), sym);
        if (it == table.symbols.end()) {
            table.symbols.push_back(sym);
            it = table.symbols.end() - 1;
        }
        table.word.push_back(static_cast<Symbol>(it - table.symbols.begin()));
    }
    return table;
}

DeltaProfile compute_delta(const BlockString& s) {
    if (s.symbols.size() % 2 != 0) {
        throw PreconditionError("block string length " + std::to_string(s.symbols.size()) + " is odd");
    }
    DeltaProfile profile;
    profile.r = s.symbols.size() / 2;
    profile.table = intern_symbols(s);
    profile.delta.assign(profile.table.symbols.size(), 0);
    for (std::size_t p = 0; p < profile.table.word.size(); ++p) {
        profile.delta[profile.table.word[p]] += p < profile.r ? 1 : -1;
    }
    std::int64_t tau = 0;
    for (auto d : profile.delta) tau += d < 0 ? -d : d;
    profile.beta = tau / 2;
    return profile;
}

std::vector<std::string> construction_violations(const BlockString& s, const Rational& eps) {
    std::vector<std::string> out;
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        out.emplace_back(e.what());
        return out;
    }
    const std::size_t len = s.symbols.size();
    if (len == 0 || len % 2 != 0) {
        out.push_back("block string length " + std::to_string(len) + " must be even and positive");
        return out;
    }
    const auto r = static_cast<std::int64_t>(len / 2);
    const auto ell = static_cast<std::int64_t>(s.ell);
    const auto table = intern_symbols(s);

    if (eps <= 0) out.push_back("eps > 0 fails: eps = " + to_string(eps));
    if (!is_ell_periodic(table.word, table.symbols.size(), s.ell)) {
        out.push_back("string is not " + std::to_string(s.ell) + "-periodic over its block symbols");
    }
    if (r < 2 * ell) out.push_back("r >= 2*ell fails: r = " + std::to_string(r) + ", ell = " + std::to_string(ell));
    if (!(eps < Rational(1, 4 * ell))) {
        out.push_back("eps < 1/(4*ell) fails: eps = " + to_string(eps) + ", 1/(4*ell) = " + to_string(Rational(1, 4 * ell)));
    }
    const DeltaProfile profile = compute_delta(s);
    const std::int64_t tau = 2 * profile.beta;
    if (!leq_scaled(tau, eps, r)) {
        out.push_back("tau <= eps*r fails: tau = " + std::to_string(tau) + ", eps*r = " + to_string(eps * r));
    }
    const std::int64_t floor_term = (r - 1) / ell;
    if (!(eps * (2 * r) < Rational(floor_term))) {
        out.push_back("2*eps*r < floor((r-1)/ell) fails: 2*eps*r = " + to_string(eps * (2 * r)) +
                      ", floor((r-1)/ell) = " + std::to_string(floor_term));
    }
    return out;
}

Selection select_sets_unchecked(const DeltaProfile& profile) {
    const std::size_t r = profile.r;
    const auto& word = profile.table.word;
    const std::size_t symbols = profile.table.symbols.size();
    Selection sel;
    sel.a_sets.resize(symbols);
    sel.b_sets.resize(symbols);
    // chosen[i] for block index i in 0..2r+1 (0 and 2r+1 are sentinels).
    std::vector<bool> chosen(2 * r + 2, false);

    auto pick = [&](Symbol a, std::size_t lo, std::size_t hi, std::size_t need, std::vector<std::size_t>& into) {
        for (std::size_t i = lo; i <= hi && into.size() < need; ++i) {
            if (word[i - 1] != a || chosen[i] || chosen[i - 1] || chosen[i + 1]) continue;
            chosen[i] = true;
            into.push_back(i);
        }
        if (into.size() < need) {
            throw PreconditionError("greedy selection ran out of candidates for symbol " + std::to_string(a) +
                                    " in blocks " + std::to_string(lo) + ".." + std::to_string(hi) +
                                    " (needed " + std::to_string(need) + ", found " + std::to_string(into.size()) +
                                    "); the string violates the construction preconditions");
        }
    };

    for (Symbol a = 0; a < symbols; ++a) {
        const std::int64_t d = profile.delta[a];
        if (d == 0) continue;
        const auto magnitude = static_cast<std::size_t>(d < 0 ? -d : d);
        const std::size_t need_a = d > 0 ? 2 * magnitude : magnitude;
        const std::size_t need_b = d > 0 ? magnitude : 2 * magnitude;
        pick(a, 1, r - 1, need_a, sel.a_sets[a]);
        pick(a, r + 1, 2 * r - 1, need_b, sel.b_sets[a]);

        const auto& doubled = d > 0 ? sel.a_sets[a] : sel.b_sets[a];
        for (std::size_t i = 0; i + 1 < doubled.size(); i += 2) {
            sel.pairs.emplace_back(std::min(doubled[i], doubled[i + 1]), std::max(doubled[i], doubled[i + 1]));
        }
    }
    return sel;
}

Selection select_sets(const BlockString& s, const DeltaProfile& profile, const Rational& eps) {
    const auto violations = construction_violations(s, eps);
    if (!violations.empty()) {
        std::string message = "construction preconditions violated:";
        for (const auto& v : violations) message += "\n  " + v;
        throw PreconditionError(message);
    }
    return select_sets_unchecked(profile);
}

RoleAssignment assign_roles(const DeltaProfile& profile, const Selection& selection) {
    const std::size_t r = profile.r;
    RoleAssignment roles;
    roles.colourful.assign(2 * r, ColourfulRole::Top);
    roles.boring.assign(2 * r, BoringRole::Top);

    for (const auto& [top_index, bottom_index] : selection.pairs) {
        roles.colourful[top_index - 1] = ColourfulRole::Top;
        roles.colourful[bottom_index - 1] = ColourfulRole::Bottom;
    }
    for (std::size_t a = 0; a < profile.delta.size(); ++a) {
        const std::int64_t d = profile.delta[a];
        if (d == 0) continue;
        const auto& single = d > 0 ? selection.b_sets[a] : selection.a_sets[a];
        for (std::size_t i : single) roles.colourful[i - 1] = ColourfulRole::ZigZag;
    }
    for (std::size_t j = 0; j < 2 * r; ++j) {
        const bool after_bottom = j >= 1 && roles.colourful[j - 1] == ColourfulRole::Bottom;
        const bool before_bottom = roles.colourful[j] == ColourfulRole::Bottom;
        if (after_bottom && before_bottom) {
            throw std::logic_error("boring block Q_" + std::to_string(j) + " sits between two bottom blocks");
        }
        if (after_bottom) roles.boring[j] = BoringRole::DownUp;
        if (before_bottom) roles.boring[j] = BoringRole::UpDown;
    }
    return roles;
}

PathFragment block_subpath(FragmentKind kind, std::size_t lo, std::size_t hi) {
    if (hi <= lo) throw std::invalid_argument("block [" + std::to_string(lo) + ", " + std::to_string(hi) + ") is empty");
    const std::size_t width = hi - lo;
    const auto col = [](std::size_t j) { return static_cast<std::uint32_t>(j); };
    PathFragment f;
    switch (kind) {
        case FragmentKind::Top:
            for (std::size_t j = lo; j < hi; ++j) f.vertices.push_back(top(col(j)));
            f.entry = f.exit = Row::Top;
            break;
        case FragmentKind::Bottom:
            for (std::size_t j = lo; j < hi; ++j) f.vertices.push_back(bottom(col(j)));
            f.entry = f.exit = Row::Bottom;
            break;
        case FragmentKind::ZigZag:
            if (width % 4 != 0) throw std::invalid_argument("zig-zag needs a width divisible by 4");
            for (std::size_t j = lo; j < hi; j += 2) {
                f.vertices.insert(f.vertices.end(), {top(col(j)), bottom(col(j)), bottom(col(j + 1)), top(col(j + 1))});
            }
            f.entry = f.exit = Row::Top;
            break;
        case FragmentKind::DownUp:
        case FragmentKind::UpDown: {
            if (width != 4) throw std::invalid_argument("boring blocks are 4 columns wide");
            const bool down_up = kind == FragmentKind::DownUp;
            const Row first = down_up ? Row::Bottom : Row::Top;
            const Row rest = down_up ? Row::Top : Row::Bottom;
            f.vertices.push_back({first, col(lo)});
            for (std::size_t j = lo; j < hi; ++j) f.vertices.push_back({rest, col(j)});
            f.entry = first;
            f.exit = rest;
            break;
        }
    }
    return f;
}

namespace {

FragmentKind fragment_for(ColourfulRole role) {
    switch (role) {
        case ColourfulRole::Top: return FragmentKind::Top;
        case ColourfulRole::Bottom: return FragmentKind::Bottom;
        case ColourfulRole::ZigZag: return FragmentKind::ZigZag;
    }
    return FragmentKind::Top;
}

FragmentKind fragment_for(BoringRole role) {
    switch (role) {
        case BoringRole::Top: return FragmentKind::Top;
        case BoringRole::DownUp: return FragmentKind::DownUp;
        case BoringRole::UpDown: return FragmentKind::UpDown;
    }
    return FragmentKind::Top;
}

}  // namespace

AssembledPath assemble_path(const BlockString& s, const RoleAssignment& roles) {
    const std::size_t blocks = s.symbols.size();
    if (roles.colourful.size() != blocks || roles.boring.size() != blocks) {
        throw std::invalid_argument("role assignment does not match the block string length");
    }
    const auto offsets = layout_offsets(s);
    const std::size_t r = blocks / 2;
    AssembledPath out;
    std::size_t junction = 0;
    auto append = [&](const PathFragment& f) {
        if (!out.path.vertices.empty() && !adjacent(out.path.vertices.back(), f.vertices.front())) {
            throw std::logic_error("junction " + std::to_string(junction) + ": " + out.path.vertices.back().name() +
                                   " is not adjacent to " + f.vertices.front().name());
        }
        ++junction;
        out.path.vertices.insert(out.path.vertices.end(), f.vertices.begin(), f.vertices.end());
    };
    for (std::size_t j = 0; j < blocks; ++j) {
        const ColumnRange q = boring_block(offsets, j);
        append(block_subpath(fragment_for(roles.boring[j]), q.begin, q.end));
        const ColumnRange h = colourful_block(offsets, j + 1);
        append(block_subpath(fragment_for(roles.colourful[j]), h.begin, h.end));
        if (j + 1 == r) out.midpoint_index = out.path.vertices.size();
    }
    return out;
}

ConstructionReport verify_construction(const BlockString& s, const GridPath& path) {
    ConstructionReport report;
    const GridColouring phi = realize_sigma_string(s);
    report.path_problem = describe_path_violation(path, phi.n());
    report.valid_path = report.path_problem.empty();
    report.length = path.size();
    const std::size_t c = phi.c();
    report.first_half.assign(c, 0);
    report.second_half.assign(c, 0);
    report.residual.assign(c, 0);
    if (!report.valid_path) return report;

    const Word trace = colour_trace(path, phi);
    const std::size_t half = trace.size() / 2;
    for (std::size_t p = 0; p < 2 * half; ++p) {
        (p < half ? report.first_half : report.second_half)[trace[p]] += 1;
    }
    for (std::size_t x = 0; x < c; ++x) {
        report.residual[x] = report.first_half[x] - report.second_half[x];
        if (report.residual[x] != 0 && !report.first_differing_colour) {
            report.first_differing_colour = static_cast<Colour>(x + 1);
        }
    }
    report.anagramish = is_anagramish(trace);
    return report;
}

Construction construct_anagramish_path(const BlockString& s, const Rational& eps) {
    Construction out;
    out.profile = compute_delta(s);
    out.selection = select_sets(s, out.profile, eps);
    out.roles = assign_roles(out.profile, out.selection);
    out.assembled = assemble_path(s, out.roles);
    return out;
}

const char* to_string(ColourfulRole role) {
    switch (role) {
        case ColourfulRole::Top: return "top";
        case ColourfulRole::Bottom: return "bottom";
        case ColourfulRole::ZigZag: return "zigzag";
    }
    return "?";
}

const char* to_string(BoringRole role) {
    switch (role) {
        case BoringRole::Top: return "top";
        case BoringRole::DownUp: return "downup";
        case BoringRole::UpDown: return "updown";
    }
    return "?";
}

}  // namespace anagram_forge
