#include "anagram_forge/pathcheck.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

#include "anagram_forge/parallel.hpp"

namespace anagram_forge {
namespace {

using VertexId = std::uint32_t;

std::vector<std::vector<VertexId>> adjacency(std::size_t n) {
    std::vector<std::vector<VertexId>> adj(2 * n);
    for (VertexId v = 0; v < 2 * n; ++v) {
        for (GridVertex u : neighbours(GridVertex::from_id(v), n)) adj[v].push_back(u.id());
    }
    return adj;
}

GridPath to_path(const std::vector<VertexId>& ids) {
    GridPath p;
    p.vertices.reserve(ids.size());
    for (VertexId id : ids) p.vertices.push_back(GridVertex::from_id(id));
    return p;
}

}  // namespace

std::string describe_path_violation(const GridPath& p, std::size_t n) {
    if (p.vertices.empty()) return "path is empty";
    std::vector<bool> seen(2 * n, false);
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        const GridVertex v = p.vertices[i];
        if (v.column >= n) return "vertex " + v.name() + " outside G_" + std::to_string(n);
        if (seen[v.id()]) return "vertex " + v.name() + " repeated at position " + std::to_string(i);
        seen[v.id()] = true;
        if (i > 0 && !adjacent(p.vertices[i - 1], v)) {
            return "vertices " + p.vertices[i - 1].name() + " and " + v.name() + " at positions " +
                   std::to_string(i - 1) + "," + std::to_string(i) + " are not adjacent";
        }
    }
    return {};
}

bool is_simple_path(const GridPath& p, std::size_t n) { return describe_path_violation(p, n).empty(); }

std::uint64_t enumerate_simple_paths(std::size_t n, std::size_t min_len, std::size_t max_len,
                                     const std::function<bool(const GridPath&)>& visit) {
    if (n == 0) throw std::invalid_argument("grid needs at least one column");
    min_len = std::max<std::size_t>(min_len, 1);
    max_len = std::min(max_len, 2 * n);
    if (min_len > max_len) return 0;

    const auto adj = adjacency(n);
    std::vector<VertexId> path;
    std::vector<bool> used(2 * n, false);
    std::uint64_t count = 0;
    bool stopped = false;

    std::function<void()> extend = [&] {
        const std::size_t len = path.size();
        if (len >= min_len && (len == 1 || path.front() < path.back())) {
            ++count;
            if (!visit(to_path(path))) {
                stopped = true;
                return;
            }
        }
        if (len == max_len) return;
        for (VertexId u : adj[path.back()]) {
            if (used[u]) continue;
            used[u] = true;
            path.push_back(u);
            extend();
            path.pop_back();
            used[u] = false;
            if (stopped) return;
        }
    };
    for (VertexId start = 0; start < 2 * n && !stopped; ++start) {
        used[start] = true;
        path.assign(1, start);
        extend();
        used[start] = false;
    }
    return count;
}

Word colour_trace(const GridPath& p, const GridColouring& phi) {
    std::vector<Symbol> letters;
    letters.reserve(p.size());
    for (GridVertex v : p.vertices) {
        if (v.column >= phi.n()) throw std::out_of_range("vertex " + v.name() + " outside the colouring");
        letters.push_back(phi.at(v) - 1);
    }
    return Word(Alphabet::colours(phi.c()), std::move(letters));
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct StartOutcome {
    std::vector<VertexId> best;
    std::uint64_t checked = 0;
};

StartOutcome search_from_start(VertexId start, const std::vector<std::vector<VertexId>>& adj,
                               const std::vector<Colour>& colour_of, std::size_t c) {
    const std::size_t vertices = adj.size();
    StartOutcome out;
    std::size_t best_len = vertices + 1;
    std::vector<VertexId> path{start};
    std::vector<bool> used(vertices, false);
    used[start] = true;
    // counts[len * (c + 1) + x]: occurrences of colour x among the first len vertices.
    std::vector<std::int32_t> counts((vertices + 1) * (c + 1), 0);
    counts[(c + 1) + colour_of[start]] = 1;

    std::function<void()> extend = [&] {
        const std::size_t len = path.size();
        if (len % 2 == 0 && path.front() < path.back()) {
            ++out.checked;
            const std::int32_t* full = &counts[len * (c + 1)];
            const std::int32_t* half = &counts[(len / 2) * (c + 1)];
            bool anagramish = true;
            for (std::size_t x = 1; x <= c; ++x) {
                if (full[x] != 2 * half[x]) {
                    anagramish = false;
                    break;
                }
            }
            if (anagramish && len < best_len) {
                best_len = len;
                out.best = path;
                return;
            }
        }
        if (len + 1 >= best_len) return;
        for (VertexId u : adj[path.back()]) {
            if (used[u]) continue;
            used[u] = true;
            path.push_back(u);
            std::copy_n(counts.begin() + len * (c + 1), c + 1, counts.begin() + (len + 1) * (c + 1));
            counts[(len + 1) * (c + 1) + colour_of[u]] += 1;
            extend();
            path.pop_back();
            used[u] = false;
        }
    };
    extend();
    return out;
}

}  // namespace

ColouringVerdict verify_colouring(const GridColouring& phi, unsigned workers) {
    ColouringVerdict verdict;
    const std::size_t n = phi.n();
    if (n == 0) return verdict;
    const auto adj = adjacency(n);
    std::vector<Colour> colour_of(2 * n);
    for (VertexId v = 0; v < 2 * n; ++v) colour_of[v] = phi.at(GridVertex::from_id(v));

    std::vector<StartOutcome> outcomes(2 * n);
    run_tasks(2 * n, workers, [&](std::size_t start) {
        outcomes[start] = search_from_start(static_cast<VertexId>(start), adj, colour_of, phi.c());
    });

    const std::vector<VertexId>* best = nullptr;
    for (const auto& o : outcomes) {
        verdict.paths_checked += o.checked;
        if (o.best.empty()) continue;
        if (!best || o.best.size() < best->size() || (o.best.size() == best->size() && o.best < *best)) {
            best = &o.best;
        }
    }
    if (best) {
        verdict.anagram_free = false;
        verdict.witness = to_path(*best);
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// afcn of G_n

namespace {

/// Even simple paths of G_n grouped by their largest vertex id, so that once
/// vertices 0..p are coloured, group p holds exactly the paths that became
/// fully coloured with vertex p.
struct PathIndex {
    std::vector<std::vector<std::vector<VertexId>>> by_last_vertex;

    explicit PathIndex(std::size_t n) : by_last_vertex(2 * n) {
        enumerate_simple_paths(n, 2, 2 * n, [&](const GridPath& p) {
            if (p.size() % 2 != 0) return true;
            std::vector<VertexId> ids;
            VertexId top_id = 0;
            for (GridVertex v : p.vertices) {
                ids.push_back(v.id());
                top_id = std::max(top_id, v.id());
            }
            by_last_vertex[top_id].push_back(std::move(ids));
            return true;
        });
        for (auto& group : by_last_vertex) {
            std::stable_sort(group.begin(), group.end(),
                             [](const auto& x, const auto& y) { return x.size() < y.size(); });
        }
    }
};

class GridColourSearch {
public:
    GridColourSearch(std::size_t n, std::size_t c, const PathIndex& index)
        : n_(n), c_(c), index_(index), colour_(2 * n, 0), diff_(c + 1, 0) {}

    /// Tries to complete `prefix`; returns the first colouring found.
    AfcnTaskOutcome run(const std::vector<Colour>& prefix, const std::atomic<bool>& cancel, bool& cancelled) {
        AfcnTaskOutcome out;
        nodes_ = 0;
        cancel_ = &cancel;
        cancelled_ = false;
        Colour max_used = 0;
        for (std::size_t p = 0; p < prefix.size(); ++p) {
            colour_[p] = prefix[p];
            max_used = std::max(max_used, prefix[p]);
            ++nodes_;
            if (!consistent(p)) {
                out.nodes = nodes_;
                return out;
            }
        }
        out.found = extend(prefix.size(), max_used);
        out.nodes = nodes_;
        cancelled = cancelled_;
        if (out.found) {
            std::vector<Colour> top(n_), bottom(n_);
            for (std::size_t j = 0; j < n_; ++j) {
                top[j] = colour_[2 * j];
                bottom[j] = colour_[2 * j + 1];
            }
            out.colouring = GridColouring(c_, std::move(top), std::move(bottom));
        }
        return out;
    }

private:
    bool consistent(std::size_t p) {
        for (const auto& ids : index_.by_last_vertex[p]) {
            std::fill(diff_.begin(), diff_.end(), 0);
            const std::size_t half = ids.size() / 2;
            for (std::size_t i = 0; i < half; ++i) ++diff_[colour_[ids[i]]];
            for (std::size_t i = half; i < ids.size(); ++i) --diff_[colour_[ids[i]]];
            if (std::all_of(diff_.begin(), diff_.end(), [](int d) { return d == 0; })) return false;
        }
        return true;
    }

    bool extend(std::size_t p, Colour max_used) {
        if (p == 2 * n_) return true;
        const Colour limit = static_cast<Colour>(std::min<std::size_t>(c_, max_used + 1));
        for (Colour x = 1; x <= limit; ++x) {
            if ((++nodes_ & 0xFFF) == 0 && cancel_->load(std::memory_order_relaxed)) {
                cancelled_ = true;
                return false;
            }
            colour_[p] = x;
            if (consistent(p) && extend(p + 1, std::max(max_used, x))) return true;
            if (cancelled_) return false;
        }
        return false;
    }

    std::size_t n_;
    std::size_t c_;
    const PathIndex& index_;
    std::vector<Colour> colour_;
    std::vector<int> diff_;
    std::uint64_t nodes_ = 0;
    const std::atomic<bool>* cancel_ = nullptr;
    bool cancelled_ = false;
};

/// Canonical colour strings of the given length over at most c colours.
std::vector<std::vector<Colour>> canonical_prefixes(std::size_t length, std::size_t c) {
    std::vector<std::vector<Colour>> out;
    std::vector<Colour> current;
    std::function<void(Colour)> grow = [&](Colour max_used) {
        if (current.size() == length) {
            out.push_back(current);
            return;
        }
        const Colour limit = static_cast<Colour>(std::min<std::size_t>(c, max_used + 1));
        for (Colour x = 1; x <= limit; ++x) {
            current.push_back(x);
            grow(std::max(max_used, x));
            current.pop_back();
        }
    };
    grow(0);
    return out;
}

}  // namespace

AfcnResult afcn_grid(std::size_t n, std::size_t c_max, const AfcnOptions& options) {
    if (n == 0) throw std::invalid_argument("afcn_grid needs n >= 1");
    if (c_max == 0) throw std::invalid_argument("afcn_grid needs c_max >= 1");

    const PathIndex index(n);
    const std::size_t prefix_len = std::min<std::size_t>(2 * n, 4);
    AfcnResult result;
    std::atomic<std::size_t> fresh_started{0};

    for (std::size_t c = 1; c <= c_max; ++c) {
        const auto prefixes = canonical_prefixes(prefix_len, c);
        const std::size_t tasks = prefixes.size();
        result.tasks_per_colour.push_back(tasks);

        std::vector<std::optional<AfcnTaskOutcome>> outcomes(tasks);
        std::vector<std::atomic<bool>> cancel(tasks);
        std::atomic<std::size_t> first_found{std::numeric_limits<std::size_t>::max()};
        std::atomic<std::size_t> loaded{0};

        auto mark_found = [&](std::size_t t) {
            std::size_t current = first_found.load();
            while (t < current && !first_found.compare_exchange_weak(current, t)) {}
            for (std::size_t u = t + 1; u < tasks; ++u) cancel[u].store(true);
        };

        run_tasks(tasks, options.workers, [&](std::size_t t) {
            if (t > first_found.load()) return;
            if (options.checkpoint) {
                if (auto stored = options.checkpoint->load(c, t)) {
                    outcomes[t] = std::move(stored);
                    ++loaded;
                    if (outcomes[t]->found) mark_found(t);
                    return;
                }
            }
            if (options.fresh_task_limit && fresh_started.fetch_add(1) >= *options.fresh_task_limit) return;
            GridColourSearch search(n, c, index);
            bool cancelled = false;
            AfcnTaskOutcome outcome = search.run(prefixes[t], cancel[t], cancelled);
            if (cancelled) return;
            if (options.checkpoint) options.checkpoint->store(c, t, outcome);
            if (outcome.found) mark_found(t);
            outcomes[t] = std::move(outcome);
        });
        result.tasks_loaded += loaded.load();

        // Merge as if tasks ran one after another, stopping at the first success.
        for (std::size_t t = 0; t < tasks; ++t) {
            if (!outcomes[t]) {
                result.interrupted = true;
                return result;
            }
            result.nodes += outcomes[t]->nodes;
            if (outcomes[t]->found) {
                result.afcn = c;
                result.colouring = outcomes[t]->colouring;
                return result;
            }
        }
    }
    return result;
}

AfcnPathResult afcn_path(std::size_t m, std::size_t c_max) {
    if (m == 0) throw std::invalid_argument("afcn_path needs m >= 1");
    if (c_max == 0) throw std::invalid_argument("afcn_path needs c_max >= 1");
    AfcnPathResult result;
    for (std::size_t c = 1; c <= c_max; ++c) {
        std::vector<Symbol> word;
        std::vector<std::int32_t> prefix((m + 1) * c, 0);
        std::function<bool(Symbol)> extend = [&](Symbol max_used) -> bool {
            const std::size_t len = word.size();
            if (len == m) return true;
            const Symbol limit = static_cast<Symbol>(std::min<std::size_t>(c, len == 0 ? 1 : max_used + 2));
            for (Symbol x = 0; x < limit; ++x) {
                ++result.nodes;
                word.push_back(x);
                std::copy_n(prefix.begin() + len * c, c, prefix.begin() + (len + 1) * c);
                prefix[(len + 1) * c + x] += 1;
                bool bad = false;
                for (std::size_t half = 1; 2 * half <= len + 1 && !bad; ++half) {
                    bool balanced = true;
                    for (std::size_t a = 0; a < c && balanced; ++a) {
                        balanced = prefix[(len + 1) * c + a] - 2 * prefix[(len + 1 - half) * c + a] +
                                       prefix[(len + 1 - 2 * half) * c + a] ==
                                   0;
                    }
                    bad = balanced;
                }
                if (!bad && extend(len == 0 ? x : std::max(max_used, x))) return true;
                word.pop_back();
            }
            return false;
        };
        if (extend(0)) {
            result.afcn = c;
            result.colouring = Word(Alphabet::colours(c), word);
            return result;
        }
    }
    return result;
}

}  // namespace anagram_forge
