#include "balpair/bpa.hpp"

#include "balpair/errors.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <deque>
#include <numeric>

namespace balpair {

std::uint64_t BalancedPair::id() const {
    std::size_t h = boost::hash_range(top.begin(), top.end());
    boost::hash_combine(h, top.size());
    boost::hash_range(h, bottom.begin(), bottom.end());
    return static_cast<std::uint64_t>(h);
}

std::string BalancedPair::format(const Substitution& phi) const { return phi.format(top) + "/" + phi.format(bottom); }

std::pair<std::size_t, bool> PairSet::insert(BalancedPair p, int generation) {
    auto it = index_.find(p);
    if (it != index_.end()) return {it->second, false};
    std::size_t i = pairs_.size();
    index_.emplace(p, i);
    pairs_.push_back(std::move(p));
    generation_.push_back(generation);
    return {i, true};
}

std::optional<std::size_t> PairSet::find(const BalancedPair& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t PairSet::count_up_to(int generation) const {
    return static_cast<std::size_t>(
        std::count_if(generation_.begin(), generation_.end(), [&](int g) { return g <= generation; }));
}

void Budgets::validate() const {
    if (max_iterations <= 0 || max_pairs == 0 || max_word_length == 0 || min_stability_window == 0 ||
        max_scan_length == 0)
        throw InvalidLength("budgets must be positive");
}

const char* to_string(BudgetKind b) {
    switch (b) {
        case BudgetKind::max_iterations: return "max_iterations";
        case BudgetKind::max_pairs: return "max_pairs";
        case BudgetKind::max_word_length: return "max_word_length";
        case BudgetKind::max_scan_length: return "max_scan_length";
        case BudgetKind::stability_window: return "stability_window";
    }
    return "?";
}

namespace {

struct WordSource {
    const Word& w;
    bool has(std::size_t i) const { return i < w.size(); }
    Letter at(std::size_t i) const { return w[i]; }
};

struct StreamSource {
    FixedPointStream& u;
    std::size_t offset;
    bool has(std::size_t) const { return true; }
    Letter at(std::size_t i) const { return u.at(offset + i); }
};

/// Raised when the top side passes `max_top` letters.
struct TopLimitReached {};

/// Two-pointer reduction. `on_cut(top_begin, top_end, bottom_begin, bottom_end)`
/// returns false to stop. Lengths strictly increase along each side, so every
/// equal-length prefix pair is visited and the first equivalent one is cut.
template <class Top, class Bottom, class OnCut>
void scan(const Relation& rel, const Top& top, const Bottom& bottom, OnCut&& on_cut, std::size_t max_component,
          std::size_t max_top = std::numeric_limits<std::size_t>::max()) {
    const std::size_t n = rel.substitution().size();
    std::vector<std::int64_t> z(n, 0);
    std::size_t i = 0, j = 0, ci = 0, cj = 0;
    auto take_top = [&] {
        if (i - ci >= max_component) throw ScanOverflow("irreducible component exceeds " + std::to_string(max_component) + " letters");
        if (i >= max_top) throw TopLimitReached{};
        ++z[top.at(i++)];
    };
    auto take_bottom = [&] {
        if (j - cj >= max_component) throw ScanOverflow("irreducible component exceeds " + std::to_string(max_component) + " letters");
        --z[bottom.at(j++)];
    };
    while (true) {
        if (i == ci && j == cj) {
            bool ht = top.has(i), hb = bottom.has(j);
            if (!ht && !hb) return;
            if (!ht || !hb) throw NotBalanced("words end at different lengths");
            take_top();
            take_bottom();
        }
        int s = rel.length_sign(z);
        if (s == 0 && rel.equivalent(z)) {
            if (!on_cut(ci, i, cj, j)) return;
            ci = i;
            cj = j;
            std::fill(z.begin(), z.end(), 0);
            continue;
        }
        if (s <= 0) {
            if (!top.has(i)) throw NotBalanced("words end at different lengths");
            take_top();
        }
        if (s >= 0) {
            if (!bottom.has(j)) throw NotBalanced("words end at different lengths");
            take_bottom();
        }
    }
}

Word slice(const Word& w, std::size_t a, std::size_t b) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(a), w.begin() + static_cast<std::ptrdiff_t>(b));
}

}  // namespace

std::vector<BalancedPair> reduce_pair(const Relation& rel, const Word& u, const Word& v, std::size_t max_component) {
    if (u.empty() || v.empty()) throw NotBalanced("balanced pairs have nonempty sides");
    if (!word_equiv(rel, u, v)) {
        const auto& phi = rel.substitution();
        throw NotBalanced("'" + phi.format(u) + "' and '" + phi.format(v) + "' are not equivalent");
    }
    std::vector<BalancedPair> out;
    scan(
        rel, WordSource{u}, WordSource{v},
        [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
            out.push_back({slice(u, a, b), slice(v, c, d)});
            return true;
        },
        max_component);
    return out;
}

std::pair<Word, Word> substitute_pair(const Substitution& phi, const BalancedPair& p) {
    return {balpair::apply(phi, p.top), balpair::apply(phi, p.bottom)};
}

std::vector<BalancedPair> children(const Relation& rel, const BalancedPair& p, std::size_t max_component) {
    auto [top, bottom] = substitute_pair(rel.substitution(), p);
    return reduce_pair(rel, top, bottom, max_component);
}

InitialSplit initial_pairs(const Relation& rel, FixedPointStream& u, const Word& w, const Budgets& budgets) {
    if (w.empty()) throw InvalidPrefix("prefix must be nonempty");
    if (u.prefix(w.size()) != w)
        throw InvalidPrefix("'" + rel.substitution().format(w) + "' is not a prefix of the fixed word");
    InitialSplit split;
    const std::size_t shift = w.size();
    std::size_t since_new = 0;
    try {
        scan(
            rel, StreamSource{u, 0}, StreamSource{u, shift},
            [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
                const Word& buf = u.buffer();
                auto [idx, fresh] = split.pairs.insert({slice(buf, a, b), slice(buf, shift + c, shift + d)}, 1);
                (void)idx;
                ++split.cuts;
                split.scanned = b;
                since_new = fresh ? 0 : since_new + 1;
                split.window = budgets.stability_window(split.pairs.size());
                return since_new < split.window;
            },
            std::numeric_limits<std::size_t>::max(), budgets.max_scan_length);
    } catch (const TopLimitReached&) {
        if (split.cuts == 0)
            throw ScanOverflow("no cut within " + std::to_string(budgets.max_scan_length) + " letters");
        throw StabilityNotReached("still discovering pairs after " + std::to_string(budgets.max_scan_length) +
                                  " letters (" + std::to_string(split.pairs.size()) + " pairs)");
    }
    return split;
}

std::size_t PairGraph::edge_count() const {
    std::size_t c = 0;
    for (const auto& e : out) c += e.size();
    return c;
}

namespace {

std::vector<PairGraph::Edge> group_edges(const std::vector<std::size_t>& targets) {
    std::vector<PairGraph::Edge> edges;
    std::unordered_map<std::size_t, std::size_t> slot;
    for (std::size_t t : targets) {
        auto [it, fresh] = slot.emplace(t, edges.size());
        if (fresh)
            edges.push_back({t, 1});
        else
            ++edges[it->second].multiplicity;
    }
    return edges;
}

void fill_longest(BpaOutcome& out) {
    std::vector<std::size_t> idx(out.pairs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return out.pairs[a].size() > out.pairs[b].size(); });
    out.longest.clear();
    for (std::size_t k = 0; k < idx.size() && k < 5; ++k) out.longest.push_back(out.pairs[idx[k]]);
}

}  // namespace

BpaOutcome run_bpa(const Relation& rel, FixedPointStream& u, const Word& w, const Budgets& budgets) {
    budgets.validate();
    if (!(u.fixing_substitution() == rel.substitution()))
        throw InvariantViolation("the stream must be a fixed point of the relation's substitution");
    BpaOutcome out;
    auto stop = [&](BudgetKind kind, std::string detail) {
        out.exceeded = kind;
        out.detail = std::move(detail);
        fill_longest(out);
        return out;
    };
    out.stability_window = budgets.stability_window(0);
    try {
        InitialSplit split = initial_pairs(rel, u, w, budgets);
        out.pairs = std::move(split.pairs);
        out.stability_window = split.window;
        out.scanned = split.scanned;
    } catch (const ScanOverflow& e) {
        return stop(BudgetKind::max_scan_length, e.what());
    } catch (const StabilityNotReached& e) {
        return stop(BudgetKind::stability_window, e.what());
    }
    out.iterations = 1;
    std::size_t longest = 0;
    for (const auto& p : out.pairs.pairs()) longest = std::max(longest, p.size());
    out.max_length_trace.push_back(longest);
    if (longest > budgets.max_word_length)
        return stop(BudgetKind::max_word_length, "initial pair of length " + std::to_string(longest));
    if (out.pairs.size() > budgets.max_pairs)
        return stop(BudgetKind::max_pairs, std::to_string(out.pairs.size()) + " initial pairs");

    std::vector<std::vector<PairGraph::Edge>> edges;
    std::vector<std::size_t> frontier(out.pairs.size());
    std::iota(frontier.begin(), frontier.end(), 0);
    while (!frontier.empty()) {
        if (out.iterations >= budgets.max_iterations)
            return stop(BudgetKind::max_iterations, std::to_string(out.iterations) + " iterations");
        const int gen = ++out.iterations;
        std::vector<std::size_t> next;
        std::size_t grown = 0;
        for (std::size_t idx : frontier) {
            std::vector<BalancedPair> kids;
            try {
                kids = children(rel, out.pairs[idx], budgets.max_word_length);
            } catch (const ScanOverflow& e) {
                return stop(BudgetKind::max_word_length, e.what());
            }
            std::vector<std::size_t> targets;
            for (auto& k : kids) {
                std::size_t len = k.size();
                auto [t, fresh] = out.pairs.insert(std::move(k), gen);
                targets.push_back(t);
                if (!fresh) continue;
                next.push_back(t);
                grown = std::max(grown, len);
                if (out.pairs.size() > budgets.max_pairs)
                    return stop(BudgetKind::max_pairs, std::to_string(out.pairs.size()) + " pairs");
            }
            if (edges.size() <= idx) edges.resize(idx + 1);
            edges[idx] = group_edges(targets);
        }
        out.max_length_trace.push_back(grown);
        frontier = std::move(next);
    }
    out.terminated = true;
    out.max_length_trace.pop_back();
    out.closure_iteration = out.iterations - 1;
    edges.resize(out.pairs.size());
    out.graph = PairGraph{std::move(edges)};
    fill_longest(out);
    return out;
}

BpaOutcome run_bpa(const Relation& rel, const Word& w, const Budgets& budgets) {
    FixedPointStream u(rel.substitution());
    if (u.power() != 1) throw InvariantViolation("the substitution has no fixed point; run on its power " + std::to_string(u.power()));
    return run_bpa(rel, u, w, budgets);
}

PairGraph pair_graph(const Relation& rel, const PairSet& pairs) {
    PairGraph g;
    g.out.resize(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::vector<std::size_t> targets;
        for (const auto& k : children(rel, pairs[i])) {
            auto t = pairs.find(k);
            if (!t)
                throw NotClosed("child " + k.format(rel.substitution()) + " of " + pairs[i].format(rel.substitution()) +
                                " is not in the set");
            targets.push_back(*t);
        }
        g.out[i] = group_edges(targets);
    }
    return g;
}

std::vector<CoincidenceInfo> coincidence_analysis(const PairSet& pairs, const PairGraph& g) {
    const std::size_t n = g.vertex_count();
    if (pairs.size() != n) throw InvariantViolation("graph and pair set sizes differ");
    std::vector<std::vector<std::size_t>> in(n);
    for (std::size_t v = 0; v < n; ++v)
        for (const auto& e : g.out[v]) in[e.target].push_back(v);
    std::vector<CoincidenceInfo> info(n);
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v) {
        info[v].is_coincidence = pairs[v].is_coincidence();
        if (info[v].is_coincidence) {
            info[v].leads_to_coincidence = true;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t p : in[v])
            if (!info[p].leads_to_coincidence) {
                info[p].leads_to_coincidence = true;
                queue.push_back(p);
            }
    }
    return info;
}

DensityStats coincidence_density(const Relation& rel, FixedPointStream& u, const Word& w, unsigned l,
                                 std::size_t horizon) {
    const auto& phi = rel.substitution();
    if (w.empty()) throw InvalidPrefix("prefix must be nonempty");
    DensityStats st;
    st.shift = balpair::apply(phi, w, l).size();
    if (horizon < st.shift) throw InvalidLength("horizon is shorter than the shift");
    const std::size_t n = phi.size();
    std::vector<std::int64_t> coincident(n, 0), total(n, 0);
    const std::size_t cap = 4 * horizon + 1000;
    try {
        scan(
            rel, StreamSource{u, 0}, StreamSource{u, st.shift},
            [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
                const Word& buf = u.buffer();
                bool same = b - a == 1 && d - c == 1 && buf[a] == buf[st.shift + c];
                for (std::size_t k = a; k < b; ++k) {
                    ++total[buf[k]];
                    if (same) ++coincident[buf[k]];
                }
                st.horizon = b;
                return b < horizon;
            },
            std::numeric_limits<std::size_t>::max(), cap);
    } catch (const TopLimitReached&) {
    }
    auto mass = [&](const std::vector<std::int64_t>& p) {
        FieldScalar s(rel.lengths()[0].field(), Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            if (p[i]) s += rel.lengths()[i] * FieldScalar(s.field(), Rational(static_cast<long>(p[i])));
        return s;
    };
    st.coincident_mass = mass(coincident);
    st.total_mass = mass(total);
    st.ratio = st.total_mass.is_zero() ? 0.0 : (st.coincident_mass / st.total_mass).approx();
    return st;
}

}  // namespace balpair
