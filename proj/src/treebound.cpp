#include "anagram_forge/treebound.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "anagram_forge/parallel.hpp"

namespace anagram_forge {

using BigRational = boost::multiprecision::cpp_rational;

bool WeightedTree::descends_from(std::size_t u, std::size_t v) {
    while (u > v) u = (u - 1) / 2;
    return u == v;
}

WeightedTree build_tree(const Word& w, std::size_t r0) {
    if (r0 == 0 || r0 % 2 != 0) throw PreconditionError("leaf width r0 must be even and positive");
    const std::size_t n = w.size();
    if (n == 0 || n % r0 != 0 || !std::has_single_bit(n / r0)) {
        throw PreconditionError("word length " + std::to_string(n) + " is not r0 * 2^h for r0 = " + std::to_string(r0));
    }
    const std::size_t leaves = n / r0;
    const std::size_t height = static_cast<std::size_t>(std::countr_zero(leaves));
    const std::size_t k = w.alphabet().size();
    WeightedTree tree(w, r0, height);
    tree.nodes_.resize(2 * leaves - 1);

    const std::size_t first_leaf = leaves - 1;
    for (std::size_t j = 0; j < leaves; ++j) {
        TreeNode& leaf = tree.nodes_[first_leaf + j];
        leaf.begin = j * r0;
        leaf.end = leaf.begin + r0;
        leaf.hist.assign(k, 0);
        leaf.first_half.assign(k, 0);
        for (std::size_t p = leaf.begin; p < leaf.end; ++p) {
            ++leaf.hist[w[p]];
            if (p < leaf.begin + r0 / 2) ++leaf.first_half[w[p]];
        }
    }
    for (std::size_t i = first_leaf; i-- > 0;) {
        TreeNode& node = tree.nodes_[i];
        const TreeNode& l = tree.nodes_[WeightedTree::left(i)];
        const TreeNode& r = tree.nodes_[WeightedTree::right(i)];
        node.begin = l.begin;
        node.end = r.end;
        node.first_half = l.hist;
        node.hist.resize(k);
        for (std::size_t a = 0; a < k; ++a) node.hist[a] = l.hist[a] + r.hist[a];
    }
    for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
        tree.nodes_[i].depth = static_cast<std::size_t>(std::bit_width(i + 1) - 1);
    }
    return tree;
}

bool NodeStats::balanced() const {
    return std::none_of(unbalanced.begin(), unbalanced.end(), [](bool b) { return b; });
}

std::int64_t NodeStats::tau() const {
    return std::accumulate(tau_per_symbol.begin(), tau_per_symbol.end(), std::int64_t{0});
}

Classification classify(const WeightedTree& tree, const Rational& eps, std::size_t ell) {
    if (eps <= 0) throw PreconditionError("epsilon must be positive");
    if (ell == 0) throw PreconditionError("ell must be positive");
    const std::size_t k = tree.source().alphabet().size();
    Classification out;
    out.eps = eps;
    out.ell = ell;
    out.unbalanced_sets.resize(k);
    out.nodes.reserve(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const TreeNode& node = tree.node(i);
        NodeStats stats;
        stats.length = node.length();
        stats.tau_per_symbol.resize(k);
        stats.unbalanced.resize(k);
        for (std::size_t a = 0; a < k; ++a) {
            const std::int64_t diff = 2 * node.first_half[a] - node.hist[a];
            const std::int64_t tau_a = diff < 0 ? -diff : diff;
            stats.tau_per_symbol[a] = tau_a;
            // tau_a > eps * |v| / ell
            const bool unbalanced = static_cast<__int128>(tau_a) * static_cast<__int128>(ell) * eps.denominator() >
                                    static_cast<__int128>(eps.numerator()) * static_cast<__int128>(stats.length);
            stats.unbalanced[a] = unbalanced;
            if (unbalanced) out.unbalanced_sets[a].push_back(i);
        }
        out.nodes.push_back(std::move(stats));
    }
    return out;
}

TreeInvariantReport check_tree_invariants(const WeightedTree& tree, std::size_t ell) {
    TreeInvariantReport report;
    const std::size_t k = tree.source().alphabet().size();
    const auto& root = tree.node(0);
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const TreeNode& node = tree.node(i);
        if (!tree.is_leaf(i)) {
            const auto& l = tree.node(WeightedTree::left(i));
            const auto& r = tree.node(WeightedTree::right(i));
            for (std::size_t a = 0; a < k; ++a) {
                if (node.hist[a] != l.hist[a] + r.hist[a]) report.additive = false;
            }
            if (l.begin != node.begin || r.end != node.end || l.end != r.begin) report.additive = false;
        }
        for (std::size_t a = 0; a < k; ++a) {
            if (root.hist[a] == 0) continue;
            if (node.hist[a] * static_cast<std::int64_t>(ell) < static_cast<std::int64_t>(node.length())) {
                report.periodic_lower_bound = false;
            }
        }
        if ((!report.additive || !report.periodic_lower_bound) && !report.first_failure) report.first_failure = i;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Thresholds

namespace {

BigInt pow_big(BigInt base, std::uint64_t e) {
    BigInt result = 1;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

// (1 / (1 - eps/ell))^t >= 2 ell, i.e. t >= log(2 ell) / log(1 / (1 - eps/ell)).
bool ceiling_condition(const Rational& eps, std::size_t ell, std::uint64_t t) {
    const BigInt num = eps.numerator();
    const BigInt den = eps.denominator();
    const BigInt ell_den = BigInt(ell) * den;
    return pow_big(ell_den, t) >= 2 * BigInt(ell) * pow_big(ell_den - num, t);
}

// ell * (1/2 - eps/(2 ell))^t <= 2^-(t+1), evaluated as a rational inequality.
bool sufficiency_condition(const Rational& eps, std::size_t ell, std::uint64_t t) {
    const BigRational e(BigInt(eps.numerator()), BigInt(eps.denominator()));
    const BigRational factor = BigRational(1, 2) - e / (2 * BigRational(ell));
    BigRational lhs = BigRational(ell);
    BigRational power = 1;
    BigRational base = factor;
    for (std::uint64_t e2 = t; e2 > 0; e2 >>= 1) {
        if (e2 & 1) power *= base;
        base *= base;
    }
    lhs *= power;
    const BigRational rhs = BigRational(1) / BigRational(pow_big(2, t + 1));
    return lhs <= rhs;
}

}  // namespace

Thresholds thresholds(const Rational& eps, std::size_t ell, std::size_t r0) {
    if (ell == 0) throw PreconditionError("ell must be positive");
    if (r0 == 0) throw PreconditionError("r0 must be positive");
    if (eps <= 0) throw PreconditionError("epsilon must be positive");
    if (eps >= Rational(static_cast<std::int64_t>(ell))) {
        throw PreconditionError("epsilon must be below ell: log(1/(1 - eps/ell)) is undefined at eps = ell");
    }
    constexpr std::uint64_t kMaxT = 100'000;

    const long double ratio = static_cast<long double>(eps.numerator()) / eps.denominator() / ell;
    const long double estimate = std::log(2.0L * ell) / -std::log1p(-ratio);
    if (!(estimate < static_cast<long double>(kMaxT))) {
        throw PreconditionError("t exceeds " + std::to_string(kMaxT) + "; epsilon is too small");
    }
    std::uint64_t t = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(estimate)));
    while (t > 1 && ceiling_condition(eps, ell, t - 1)) --t;
    while (!ceiling_condition(eps, ell, t)) ++t;

    Thresholds out;
    out.t = t;
    out.h_min = BigInt(ell) * t * pow_big(2, t + 1);
    if (out.h_min <= 4096) out.n = BigInt(r0) * pow_big(2, out.h_min.convert_to<std::uint64_t>());
    out.formula_t_sufficient = sufficiency_condition(eps, ell, t);

    // Sufficiency is monotone in t; binary search its threshold independently.
    std::uint64_t lo = 0;
    std::uint64_t hi = 2 * t + 1;
    while (!sufficiency_condition(eps, ell, hi)) hi *= 2;
    while (lo + 1 < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (sufficiency_condition(eps, ell, mid)) hi = mid;
        else lo = mid;
    }
    out.minimal_sufficient_t = sufficiency_condition(eps, ell, 0) ? 0 : hi;
    return out;
}

// ---------------------------------------------------------------------------
// Layers and certificates

bool LayerPartition::all_hold() const {
    if (!lengths_nonincreasing || !ancestors_in_previous_layer || !partition_exact) return false;
    for (const auto& c : node_checks) {
        if (!c.unbalance_bound || !c.ratio_bound) return false;
    }
    for (const auto& d : decay) {
        if (!d.holds || !d.split_bound || !d.tail_bound) return false;
        for (const auto& step : d.chain) {
            if (!step.holds) return false;
        }
    }
    return true;
}

bool UnbalancedCertificate::all_hold() const { return coverage && a_star_mass && partition.all_hold(); }

Symbol heaviest_unbalanced_symbol(const Classification& stats) {
    Symbol best = 0;
    std::int64_t best_mass = -1;
    for (std::size_t a = 0; a < stats.unbalanced_sets.size(); ++a) {
        std::int64_t mass = 0;
        for (std::size_t v : stats.unbalanced_sets[a]) mass += static_cast<std::int64_t>(stats.nodes[v].length);
        if (mass > best_mass) {
            best_mass = mass;
            best = static_cast<Symbol>(a);
        }
    }
    return best;
}

LayerPartition analyze_layers(const WeightedTree& tree, const Classification& stats, Symbol a_star,
                              std::optional<std::uint64_t> t) {
    LayerPartition out;
    out.a_star = a_star;
    out.t = t;
    out.members = stats.unbalanced_sets.at(a_star);
    const std::size_t h = tree.height();
    const auto n = static_cast<std::int64_t>(tree.source().size());
    const auto ell = static_cast<std::int64_t>(stats.ell);
    const std::int64_t num = stats.eps.numerator();
    const std::int64_t den = stats.eps.denominator();

    std::vector<bool> in_x(tree.size(), false);
    for (std::size_t v : out.members) in_x[v] = true;
    auto weight = [&](std::size_t v) { return tree.node(v).hist[a_star]; };
    auto length = [&](std::size_t v) { return static_cast<std::int64_t>(tree.node(v).length()); };
    auto lighter = [&](std::size_t v) {
        const std::size_t l = WeightedTree::left(v);
        const std::size_t r = WeightedTree::right(v);
        return weight(l) <= weight(r) ? l : r;
    };

    out.layers.assign(h + 1, {});
    std::vector<std::size_t> layer_of(tree.size(), 0);
    for (std::size_t v : out.members) {
        std::size_t count = 0;
        for (std::size_t u = v; u > 0;) {
            u = WeightedTree::parent(u);
            if (in_x[u]) ++count;
        }
        layer_of[v] = count;
        out.layers.at(count).push_back(v);
    }

    std::int64_t total = 0;
    for (std::size_t i = 0; i <= h; ++i) {
        std::int64_t len = 0, w = 0;
        for (std::size_t v : out.layers[i]) {
            len += length(v);
            w += weight(v);
        }
        out.layer_lengths.push_back(len);
        out.layer_weights.push_back(w);
        total += len;
    }
    std::int64_t member_total = 0;
    for (std::size_t v : out.members) member_total += length(v);
    out.partition_exact = total == member_total;

    out.lengths_nonincreasing = out.layer_lengths.front() <= n;
    for (std::size_t i = 1; i <= h; ++i) {
        if (out.layer_lengths[i] > out.layer_lengths[i - 1]) out.lengths_nonincreasing = false;
    }

    out.ancestors_in_previous_layer = true;
    for (std::size_t i = 1; i <= h; ++i) {
        for (std::size_t v : out.layers[i]) {
            bool found = false;
            for (std::size_t u = v; u > 0 && !found;) {
                u = WeightedTree::parent(u);
                found = in_x[u] && layer_of[u] == i - 1;
            }
            if (!found) out.ancestors_in_previous_layer = false;
        }
    }

    for (std::size_t v : out.members) {
        if (tree.is_leaf(v)) continue;
        NodeInequality check;
        check.node = v;
        check.length = length(v);
        check.weight = weight(v);
        check.lighter_child = lighter(v);
        check.lighter_weight = weight(check.lighter_child);
        // 2 ell den W(R) <= ell den W - num |v|
        check.unbalance_bound = static_cast<__int128>(2 * ell * den) * check.lighter_weight <=
                                static_cast<__int128>(ell * den) * check.weight - static_cast<__int128>(num) * check.length;
        // 2 ell den W(R) <= (ell den - num) W
        check.ratio_bound = static_cast<__int128>(2 * ell * den) * check.lighter_weight <=
                            static_cast<__int128>(ell * den - num) * check.weight;
        out.node_checks.push_back(check);
    }

    if (!t || *t > h) return out;
    const std::uint64_t steps = *t;
    const BigRational e{BigInt(num), BigInt(den)};
    const BigRational factor = BigRational(1, 2) - e / (2 * BigRational(ell));
    BigRational factor_pow = 1;
    for (std::uint64_t j = 0; j < steps; ++j) factor_pow *= factor;
    const BigInt two_t = pow_big(2, steps);
    const BigInt two_t1 = 2 * two_t;

    for (std::size_t i = 0; i + steps <= h; ++i) {
        DecayCheck d;
        d.i = i;
        d.layer_length = out.layer_lengths[i];
        d.later_layer_length = out.layer_lengths[i + steps];
        d.holds = two_t1 * d.later_layer_length <= (two_t1 - 1) * d.layer_length;

        std::vector<std::size_t> current = out.layers[i];
        std::int64_t current_weight = out.layer_weights[i];
        for (std::uint64_t j = 1; j <= steps; ++j) {
            std::vector<std::size_t> r_nodes;
            std::int64_t r_weight = 0;
            for (std::size_t v : current) {
                if (tree.is_leaf(v)) continue;
                r_nodes.push_back(lighter(v));
                r_weight += weight(r_nodes.back());
            }
            std::vector<std::size_t> next;
            for (std::size_t u : out.layers[i + j]) {
                if (std::any_of(r_nodes.begin(), r_nodes.end(),
                                [&](std::size_t rv) { return WeightedTree::descends_from(u, rv); })) {
                    next.push_back(u);
                }
            }
            ChainStep step;
            step.j = j;
            for (std::size_t u : next) {
                step.length += length(u);
                step.weight += weight(u);
            }
            step.parent_r_weight = r_weight;
            step.holds = step.weight <= r_weight &&
                         static_cast<__int128>(2 * ell * den) * r_weight <=
                             static_cast<__int128>(ell * den - num) * current_weight;
            d.chain.push_back(step);
            current = std::move(next);
            current_weight = step.weight;
        }
        const std::int64_t tail_length = d.chain.empty() ? d.layer_length : d.chain.back().length;
        const std::int64_t tail_weight = d.chain.empty() ? out.layer_weights[i] : d.chain.back().weight;
        d.split_bound = two_t * d.later_layer_length <= (two_t - 1) * d.layer_length + two_t * tail_length;
        const BigRational scaled = BigRational(ell) * factor_pow * d.layer_length;
        d.tail_bound = tail_length <= ell * tail_weight && BigRational(ell * tail_weight) <= scaled &&
                       scaled <= BigRational(d.layer_length) / BigRational(two_t1);
        out.decay.push_back(std::move(d));
    }
    return out;
}

TreeVerdict certify_or_refute(const Word& w, std::size_t r0, const Rational& eps, std::size_t ell,
                              const CertifyOptions& options) {
    if (ell == 0) throw PreconditionError("ell must be positive");
    if (r0 % ell != 0) throw PreconditionError("r0 must be a multiple of ell");
    if (!is_ell_periodic(w, ell)) throw PreconditionError("word is not " + std::to_string(ell) + "-periodic");
    const WeightedTree tree = build_tree(w, r0);
    const Classification stats = classify(tree, eps, ell);

    TreeVerdict verdict;
    if (options.check_all_substrings) {
        verdict.substrings_checked = true;
        verdict.substring_witness = find_near_anagramish(w, r0 / 2, eps * 2);
    }
    for (std::size_t i = 0; i < tree.size(); ++i) {
        if (stats.nodes[i].balanced()) {
            const auto& node = tree.node(i);
            verdict.witness = BalancedWitness{i, node.begin, node.length(), stats.nodes[i].tau()};
            return verdict;
        }
    }

    UnbalancedCertificate cert;
    const std::size_t k = w.alphabet().size();
    const auto& root = tree.node(0);
    for (std::size_t a = 0; a < k; ++a) {
        std::int64_t mass = 0;
        for (std::size_t v : stats.unbalanced_sets[a]) mass += static_cast<std::int64_t>(stats.nodes[v].length);
        cert.unbalanced_mass.push_back(mass);
        if (root.hist[a] > 0) ++cert.occurring_symbols;
    }
    cert.total_mass = static_cast<std::int64_t>((tree.height() + 1) * w.size());
    cert.coverage = std::accumulate(cert.unbalanced_mass.begin(), cert.unbalanced_mass.end(), std::int64_t{0}) >=
                    cert.total_mass;
    const Symbol a_star = heaviest_unbalanced_symbol(stats);
    const std::int64_t star_mass = cert.unbalanced_mass[a_star];
    cert.a_star_mass = star_mass * static_cast<std::int64_t>(cert.occurring_symbols) >= cert.total_mass &&
                       cert.occurring_symbols <= ell &&
                       star_mass * static_cast<std::int64_t>(ell) >= cert.total_mass;
    std::optional<std::uint64_t> t;
    if (eps < Rational(static_cast<std::int64_t>(ell))) t = thresholds(eps, ell, r0).t;
    cert.partition = analyze_layers(tree, stats, a_star, t);
    verdict.certificate = std::move(cert);
    return verdict;
}

// ---------------------------------------------------------------------------
// Empirical bound

namespace {

class PeriodicAvoider {
public:
    PeriodicAvoider(const EmpiricalOptions& opt, std::atomic<std::uint64_t>& shared_nodes)
        : opt_(opt), k_(opt.alphabet_size), word_(opt.n_cap), prefix_((opt.n_cap + 1) * opt.alphabet_size, 0),
          shared_nodes_(shared_nodes) {}

    /// Appends x if the longer word stays periodic and avoids qualifying substrings.
    bool push(Symbol x) {
        const std::size_t len = size_;
        const bool fresh = prefix_[len * k_ + x] == 0;
        if (fresh && len >= opt_.ell) return false;
        word_[len] = x;
        std::copy_n(prefix_.begin() + len * k_, k_, prefix_.begin() + (len + 1) * k_);
        prefix_[(len + 1) * k_ + x] += 1;
        const std::size_t L = len + 1;
        if (L >= opt_.ell) {
            for (std::size_t a = 0; a < k_; ++a) {
                const bool occurs = prefix_[L * k_ + a] > 0;
                if (occurs && prefix_[L * k_ + a] - prefix_[(L - opt_.ell) * k_ + a] == 0) return false;
            }
        }
        for (std::size_t r = opt_.r0; 2 * r <= L; ++r) {
            std::int64_t tau = 0;
            for (std::size_t a = 0; a < k_; ++a) {
                const std::int64_t d = static_cast<std::int64_t>(2 * prefix_[(L - r) * k_ + a]) -
                                       prefix_[L * k_ + a] - prefix_[(L - 2 * r) * k_ + a];
                tau += d < 0 ? -d : d;
            }
            if (leq_scaled(tau, opt_.eps, static_cast<std::int64_t>(r))) return false;
        }
        max_used_stack_.push_back(fresh ? x : current_max());
        ++size_;
        return true;
    }

    void pop() {
        --size_;
        max_used_stack_.pop_back();
    }

    std::size_t size() const { return size_; }
    Symbol current_max() const { return max_used_stack_.empty() ? 0 : max_used_stack_.back(); }
    /// Highest symbol index + 1 that a canonical extension may use.
    std::size_t limit() const {
        return size_ == 0 ? 1 : std::min<std::size_t>(k_, static_cast<std::size_t>(current_max()) + 2);
    }
    std::vector<Symbol> word() const { return {word_.begin(), word_.begin() + size_}; }

    bool count_node() {
        ++nodes;
        if (shared_nodes_.fetch_add(1, std::memory_order_relaxed) >= opt_.node_budget) {
            budget_hit = true;
            return false;
        }
        return true;
    }

    /// Depth-first search below the current word; updates `best`.
    void explore(std::vector<Symbol>& best) {
        if (size_ > best.size()) best = word();
        if (size_ == opt_.n_cap) return;
        for (Symbol x = 0; x < limit(); ++x) {
            if (!count_node()) return;
            if (!push(x)) continue;
            explore(best);
            pop();
            if (budget_hit) return;
        }
    }

    std::uint64_t nodes = 0;
    bool budget_hit = false;

private:
    const EmpiricalOptions& opt_;
    std::size_t k_;
    std::vector<Symbol> word_;
    std::vector<std::int32_t> prefix_;
    std::vector<Symbol> max_used_stack_;
    std::size_t size_ = 0;
    std::atomic<std::uint64_t>& shared_nodes_;
};

}  // namespace

EmpiricalBound empirical_lemma_bound(const EmpiricalOptions& opt) {
    if (opt.alphabet_size == 0) throw PreconditionError("alphabet size must be positive");
    if (opt.ell == 0) throw PreconditionError("ell must be positive");
    if (opt.r0 == 0) throw PreconditionError("r0 must be positive");
    if (opt.eps <= 0) throw PreconditionError("epsilon must be positive");
    if (opt.n_cap == 0 || opt.n_cap > 4096) throw PreconditionError("n_cap must be in [1, 4096]");

    std::atomic<std::uint64_t> shared_nodes{0};
    const std::size_t split_depth = std::min<std::size_t>(opt.n_cap, 8);

    // Phase 1: canonical valid prefixes up to split_depth.
    std::vector<std::vector<Symbol>> tasks;
    std::vector<Symbol> shallow_best;
    PeriodicAvoider root(opt, shared_nodes);
    std::function<void()> collect = [&] {
        if (root.size() == split_depth) {
            tasks.push_back(root.word());
            return;
        }
        if (root.size() > shallow_best.size()) shallow_best = root.word();
        for (Symbol x = 0; x < root.limit(); ++x) {
            if (!root.count_node()) return;
            if (!root.push(x)) continue;
            collect();
            root.pop();
        }
    };
    collect();

    // Phase 2: one exhaustive search per prefix.
    std::vector<std::vector<Symbol>> bests(tasks.size());
    std::vector<std::uint64_t> task_nodes(tasks.size(), 0);
    std::vector<char> task_budget_hit(tasks.size(), 0);
    run_tasks(tasks.size(), opt.workers, [&](std::size_t t) {
        PeriodicAvoider search(opt, shared_nodes);
        for (Symbol x : tasks[t]) search.push(x);
        search.explore(bests[t]);
        task_nodes[t] = search.nodes;
        task_budget_hit[t] = search.budget_hit;
    });

    EmpiricalBound out{std::nullopt, Word(Alphabet::letters(opt.alphabet_size), {}), root.nodes, root.budget_hit};
    std::vector<Symbol> best = shallow_best;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        out.nodes += task_nodes[t];
        out.budget_exhausted = out.budget_exhausted || task_budget_hit[t];
        if (bests[t].size() > best.size()) best = bests[t];
    }
    if (best.size() < opt.n_cap) out.n = best.size() + 1;
    out.longest_avoiding = Word(Alphabet::letters(opt.alphabet_size), std::move(best));
    return out;
}

}  // namespace anagram_forge
