#include "anagram_forge/words.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <limits>
#include <set>

#include "anagram_forge/parallel.hpp"

namespace anagram_forge {

// ---------------------------------------------------------------------------
// Alphabet / Word

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must be non-empty");
    std::set<std::string_view> seen;
    for (const auto& s : symbols_) {
        if (!seen.insert(s).second) throw std::invalid_argument("duplicate alphabet token '" + s + "'");
    }
}

Alphabet Alphabet::letters(std::size_t k) {
    std::vector<std::string> symbols;
    symbols.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        symbols.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i));
    }
    return Alphabet(std::move(symbols));
}

Alphabet Alphabet::colours(std::size_t c) {
    std::vector<std::string> symbols;
    symbols.reserve(c);
    for (std::size_t i = 1; i <= c; ++i) symbols.push_back(std::to_string(i));
    return Alphabet(std::move(symbols));
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i] == token) return static_cast<Symbol>(i);
    }
    return std::nullopt;
}

bool Alphabet::single_character() const {
    return std::all_of(symbols_.begin(), symbols_.end(), [](const std::string& s) { return s.size() == 1; });
}

Word::Word(Alphabet alphabet, std::vector<Symbol> letters)
    : Word(std::make_shared<const Alphabet>(std::move(alphabet)), std::move(letters)) {}

Word::Word(std::shared_ptr<const Alphabet> alphabet, std::vector<Symbol> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    if (!alphabet_) throw std::invalid_argument("word needs an alphabet");
    for (Symbol s : letters_) {
        if (s >= alphabet_->size()) throw std::invalid_argument("letter index outside alphabet");
    }
}

namespace {

std::vector<std::string> split_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    const bool separated = text.find_first_of(", \t\r\n") != std::string_view::npos;
    if (separated) {
        std::string current;
        for (char ch : text) {
            if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
                if (!current.empty()) tokens.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(ch);
            }
        }
        if (!current.empty()) tokens.push_back(std::move(current));
        return tokens;
    }
    // One token per UTF-8 code point.
    for (std::size_t i = 0; i < text.size();) {
        std::size_t j = i + 1;
        while (j < text.size() && (static_cast<unsigned char>(text[j]) & 0xC0) == 0x80) ++j;
        tokens.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace

Word Word::parse(std::string_view text) {
    auto tokens = split_tokens(text);
    std::vector<std::string> distinct(tokens.begin(), tokens.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.empty()) distinct.emplace_back("a");
    Alphabet alphabet(std::move(distinct));
    return parse(text, alphabet);
}

Word Word::parse(std::string_view text, const Alphabet& alphabet) {
    std::vector<Symbol> letters;
    for (const auto& token : split_tokens(text)) {
        auto s = alphabet.find(token);
        if (!s) throw std::invalid_argument("token '" + token + "' is not in the alphabet");
        letters.push_back(*s);
    }
    return Word(alphabet, std::move(letters));
}

Word Word::substr(std::size_t offset, std::size_t length) const {
    if (offset > size() || length > size() - offset) throw std::out_of_range("substring outside word");
    return Word(alphabet_, std::vector<Symbol>(letters_.begin() + offset, letters_.begin() + offset + length));
}

Word Word::reversed() const {
    return Word(alphabet_, std::vector<Symbol>(letters_.rbegin(), letters_.rend()));
}

std::vector<std::string> Word::tokens() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (Symbol s : letters_) out.push_back(alphabet_->token(s));
    return out;
}

std::string Word::to_string() const {
    std::string out;
    const bool contiguous = alphabet_->single_character();
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (!contiguous && i > 0) out.push_back(',');
        out += alphabet_->token(letters_[i]);
    }
    return out;
}

bool Word::operator==(const Word& other) const {
    return letters_ == other.letters_ && *alphabet_ == *other.alphabet_;
}

// ---------------------------------------------------------------------------
// Histograms

std::int64_t Histogram::total() const {
    std::int64_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
}

PrefixHistogram::PrefixHistogram(std::span<const Symbol> letters, std::size_t alphabet_size)
    : length_(letters.size()), k_(alphabet_size), table_((letters.size() + 1) * alphabet_size, 0) {
    for (std::size_t p = 0; p < letters.size(); ++p) {
        std::copy_n(table_.begin() + p * k_, k_, table_.begin() + (p + 1) * k_);
        table_[(p + 1) * k_ + letters[p]] += 1;
    }
}

Histogram PrefixHistogram::window(std::size_t i, std::size_t j) const {
    if (i > j || j > length_) throw std::out_of_range("histogram window outside word");
    Histogram h;
    h.counts.resize(k_);
    for (std::size_t a = 0; a < k_; ++a) h.counts[a] = count(static_cast<Symbol>(a), i, j);
    return h;
}

std::int64_t PrefixHistogram::tau(std::size_t i, std::size_t r) const {
    const std::int32_t* lo = &table_[i * k_];
    const std::int32_t* mid = &table_[(i + r) * k_];
    const std::int32_t* hi = &table_[(i + 2 * r) * k_];
    std::int64_t total = 0;
    for (std::size_t a = 0; a < k_; ++a) {
        const std::int64_t diff = 2 * static_cast<std::int64_t>(mid[a]) - lo[a] - hi[a];
        total += diff < 0 ? -diff : diff;
    }
    return total;
}

Histogram histogram(const Word& w, std::size_t i, std::size_t j) {
    if (i > j || j > w.size()) throw std::out_of_range("histogram window outside word");
    return PrefixHistogram(w.letters(), w.alphabet().size()).window(i, j);
}

ImbalanceReport imbalance(const Word& w) {
    if (w.size() % 2 != 0) throw std::invalid_argument("imbalance needs an even-length word");
    const std::size_t k = w.alphabet().size();
    const std::size_t r = w.size() / 2;
    ImbalanceReport report;
    report.per_symbol_delta.assign(k, 0);
    report.per_symbol_tau.assign(k, 0);
    for (std::size_t p = 0; p < w.size(); ++p) report.per_symbol_delta[w[p]] += p < r ? 1 : -1;
    for (std::size_t a = 0; a < k; ++a) {
        report.per_symbol_tau[a] = std::abs(report.per_symbol_delta[a]);
        report.tau += report.per_symbol_tau[a];
    }
    return report;
}

bool is_anagramish(std::span<const Symbol> letters, std::size_t alphabet_size) {
    if (letters.empty() || letters.size() % 2 != 0) return false;
    std::vector<std::int64_t> delta(alphabet_size, 0);
    const std::size_t r = letters.size() / 2;
    for (std::size_t p = 0; p < letters.size(); ++p) delta[letters[p]] += p < r ? 1 : -1;
    return std::all_of(delta.begin(), delta.end(), [](std::int64_t d) { return d == 0; });
}

bool is_anagramish(const Word& w) { return is_anagramish(w.letters(), w.alphabet().size()); }

std::optional<SubstringWitness> find_anagramish_substring(std::span<const Symbol> letters,
                                                          std::size_t alphabet_size) {
    const PrefixHistogram prefix(letters, alphabet_size);
    const std::size_t n = letters.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 1; i + 2 * r <= n; ++r) {
            if (prefix.tau(i, r) == 0) return SubstringWitness{i, 2 * r, 0};
        }
    }
    return std::nullopt;
}

std::optional<SubstringWitness> find_anagramish_substring(const Word& w) {
    return find_anagramish_substring(w.letters(), w.alphabet().size());
}

// ---------------------------------------------------------------------------
// Periodicity

bool is_ell_periodic(std::span<const Symbol> letters, std::size_t alphabet_size, std::size_t ell,
                     PeriodicityAlphabet basis) {
    if (ell == 0) throw std::invalid_argument("periodicity window must be positive");
    if (letters.size() < ell) return true;
    std::vector<std::int64_t> total(alphabet_size, 0);
    for (Symbol s : letters) ++total[s];
    std::size_t required = 0;
    for (std::size_t a = 0; a < alphabet_size; ++a) {
        if (basis == PeriodicityAlphabet::Declared || total[a] > 0) ++required;
    }
    if (basis == PeriodicityAlphabet::Declared && required > ell) return false;

    std::vector<std::int64_t> window(alphabet_size, 0);
    std::size_t present = 0;
    auto wanted = [&](Symbol s) { return basis == PeriodicityAlphabet::Declared || total[s] > 0; };
    for (std::size_t p = 0; p < letters.size(); ++p) {
        if (wanted(letters[p]) && window[letters[p]]++ == 0) ++present;
        if (p >= ell) {
            const Symbol out = letters[p - ell];
            if (wanted(out) && --window[out] == 0) --present;
        }
        if (p + 1 >= ell && present != required) return false;
    }
    return true;
}

bool is_ell_periodic(const Word& w, std::size_t ell, PeriodicityAlphabet basis) {
    return is_ell_periodic(w.letters(), w.alphabet().size(), ell, basis);
}

// ---------------------------------------------------------------------------
// Near-anagramish search

std::optional<SubstringWitness> find_near_anagramish(std::span<const Symbol> letters,
                                                     std::size_t alphabet_size, std::size_t r0,
                                                     const Rational& eps) {
    if (r0 == 0) throw std::invalid_argument("r0 must be positive");
    if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
    const PrefixHistogram prefix(letters, alphabet_size);
    const std::size_t n = letters.size();
    std::optional<SubstringWitness> best;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = r0; i + 2 * r <= n; ++r) {
            const std::int64_t tau = prefix.tau(i, r);
            if (!leq_scaled(tau, eps, static_cast<std::int64_t>(r))) continue;
            if (!best || static_cast<__int128>(tau) * best->half_length()
                             < static_cast<__int128>(best->tau_value) * r) {
                best = SubstringWitness{i, 2 * r, tau};
            }
        }
    }
    return best;
}

std::optional<SubstringWitness> find_near_anagramish(const Word& w, std::size_t r0, const Rational& eps) {
    return find_near_anagramish(w.letters(), w.alphabet().size(), r0, eps);
}

// ---------------------------------------------------------------------------
// Longest anagram-free word

namespace {

struct LongestTask {
    std::vector<Symbol> best;
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    bool reached_max = false;
    bool cancelled = false;
};

// Appending the last letter of `word[0..len)` creates an anagramish suffix?
bool anagramish_suffix(const std::vector<std::int32_t>& prefix, std::size_t len, std::size_t k) {
    const std::int32_t* end = &prefix[len * k];
    for (std::size_t m = 1; 2 * m <= len; ++m) {
        const std::int32_t* mid = &prefix[(len - m) * k];
        const std::int32_t* start = &prefix[(len - 2 * m) * k];
        bool balanced = true;
        for (std::size_t a = 0; a < k; ++a) {
            if (end[a] - 2 * mid[a] + start[a] != 0) {
                balanced = false;
                break;
            }
        }
        if (balanced) return true;
    }
    return false;
}

LongestTask search_longest(Symbol first, const LongestSearchOptions& opt, std::uint64_t budget,
                           std::size_t task_index, const std::atomic<std::size_t>& stop_below) {
    const std::size_t k = opt.k;
    const std::size_t max_len = opt.max_len;
    LongestTask out;
    std::vector<Symbol> word(max_len + 1, 0);
    std::vector<std::int32_t> prefix((max_len + 2) * k, 0);
    std::vector<Symbol> next(max_len + 2, 0);
    std::vector<Symbol> max_used(max_len + 2, 0);

    out.nodes = 1;
    word[0] = first;
    prefix[k + first] = 1;
    max_used[1] = first;
    out.best.assign(1, first);
    if (max_len == 1) {
        out.reached_max = true;
        return out;
    }

    std::size_t len = 1;
    next[1] = 0;
    while (len > 0) {
        const std::size_t limit = opt.canonical ? std::min<std::size_t>(k, max_used[len] + 2) : k;
        if (next[len] >= limit || len == max_len) {
            --len;
            continue;
        }
        if ((out.nodes & 0xFFFF) == 0 && stop_below.load(std::memory_order_relaxed) < task_index) {
            out.cancelled = true;
            return out;
        }
        if (out.nodes >= budget) {
            out.budget_hit = true;
            return out;
        }
        const Symbol x = next[len]++;
        ++out.nodes;
        word[len] = x;
        std::copy_n(prefix.begin() + len * k, k, prefix.begin() + (len + 1) * k);
        prefix[(len + 1) * k + x] += 1;
        if (anagramish_suffix(prefix, len + 1, k)) continue;

        max_used[len + 1] = std::max(max_used[len], x);
        ++len;
        next[len] = 0;
        if (len > out.best.size()) {
            out.best.assign(word.begin(), word.begin() + len);
            if (len == max_len) {
                out.reached_max = true;
                return out;
            }
        }
    }
    return out;
}

}  // namespace

LongestSearchResult longest_anagram_free(const LongestSearchOptions& options) {
    if (options.k == 0) throw std::invalid_argument("alphabet size must be positive");
    if (options.max_len == 0) throw std::invalid_argument("max_len must be positive");
    if (options.node_budget == 0) throw std::invalid_argument("node_budget must be positive");

    const std::size_t tasks = options.canonical ? 1 : options.k;
    const std::uint64_t per_task = std::max<std::uint64_t>(1, options.node_budget / tasks);
    std::vector<LongestTask> results(tasks);
    std::atomic<std::size_t> stop_below{std::numeric_limits<std::size_t>::max()};

    run_tasks(tasks, options.workers, [&](std::size_t t) {
        results[t] = search_longest(static_cast<Symbol>(t), options, per_task, t, stop_below);
        if (results[t].reached_max) {
            std::size_t current = stop_below.load();
            while (t < current && !stop_below.compare_exchange_weak(current, t)) {}
        }
    });

    LongestSearchResult merged{Word(Alphabet::letters(options.k), {}), 0, true, false};
    std::vector<Symbol> best;
    for (const auto& r : results) {
        merged.nodes += r.nodes;
        if (r.budget_hit) merged.exhausted = false;
        if (r.best.size() > best.size()) best = r.best;
        if (r.reached_max) {
            merged.reached_max = true;
            merged.exhausted = false;
            break;
        }
    }
    merged.word = Word(Alphabet::letters(options.k), std::move(best));
    return merged;
}

// ---------------------------------------------------------------------------
// Minimal core alphabet

namespace {

struct ProbeOutcome {
    bool reached = false;
    std::vector<std::vector<Symbol>> witnesses;
    bool truncated = false;
};

ProbeOutcome probe_subset(const WordPredicate& predicate, const std::vector<Symbol>& subset,
                          std::size_t n_probe, std::size_t max_witnesses) {
    ProbeOutcome out;
    std::vector<Symbol> word;
    word.reserve(n_probe);
    std::function<void()> extend = [&] {
        if (word.size() == n_probe) {
            out.reached = true;
            if (out.witnesses.size() < max_witnesses) {
                out.witnesses.push_back(word);
            } else {
                out.truncated = true;
            }
            return;
        }
        for (Symbol s : subset) {
            word.push_back(s);
            if (predicate(word)) extend();
            word.pop_back();
        }
    };
    extend();
    return out;
}

bool all_windows_cover(const std::vector<Symbol>& word, const std::vector<Symbol>& core, std::size_t ell) {
    if (word.size() < ell) return true;
    for (std::size_t i = 0; i + ell <= word.size(); ++i) {
        for (Symbol s : core) {
            if (std::find(word.begin() + i, word.begin() + i + ell, s) == word.begin() + i + ell) return false;
        }
    }
    return true;
}

}  // namespace

CoreAlphabetResult minimal_core_alphabet(const WordPredicate& predicate, const Alphabet& sigma,
                                         std::size_t n_probe, std::size_t max_witnesses) {
    if (n_probe == 0) throw std::invalid_argument("n_probe must be positive");
    const std::size_t k = sigma.size();
    auto shared = std::make_shared<const Alphabet>(sigma);

    for (std::size_t size = 1; size <= k; ++size) {
        // Lexicographic combinations of `size` symbols out of k.
        std::vector<Symbol> subset(size);
        for (std::size_t i = 0; i < size; ++i) subset[i] = static_cast<Symbol>(i);
        for (;;) {
            ProbeOutcome probe = probe_subset(predicate, subset, n_probe, max_witnesses);
            if (probe.reached) {
                CoreAlphabetResult result;
                result.core = subset;
                result.n_probe = n_probe;
                result.witnesses_truncated = probe.truncated;
                for (std::size_t ell = 1; ell <= n_probe; ++ell) {
                    const bool ok = std::all_of(probe.witnesses.begin(), probe.witnesses.end(),
                                                [&](const auto& w) { return all_windows_cover(w, subset, ell); });
                    if (ok) {
                        result.ell = ell;
                        break;
                    }
                }
                for (auto& w : probe.witnesses) result.witnesses.emplace_back(shared, std::move(w));
                return result;
            }
            std::size_t i = size;
            while (i > 0 && subset[i - 1] == k - size + i - 1) --i;
            if (i == 0) break;
            ++subset[i - 1];
            for (std::size_t j = i; j < size; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
    throw NoCoreAlphabet("no sub-alphabet keeps the predicate satisfiable up to length " +
                         std::to_string(n_probe));
}

}  // namespace anagram_forge
