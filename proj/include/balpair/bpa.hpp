#pragma once

#include "balpair/equivalence.hpp"
#include "balpair/substitution.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace balpair {

/// Two equivalent words; `top` is the fixed-word side. Ordered: |u/v| != |v/u|.
struct BalancedPair {
    Word top;
    Word bottom;

    bool is_coincidence() const { return top.size() == 1 && top == bottom; }
    /// Longer side, in letters.
    std::size_t size() const { return std::max(top.size(), bottom.size()); }
    std::uint64_t id() const;
    /// "top/bottom" in the substitution's notation.
    std::string format(const Substitution& phi) const;

    friend bool operator==(const BalancedPair&, const BalancedPair&) = default;
    friend auto operator<=>(const BalancedPair&, const BalancedPair&) = default;
};

struct BalancedPairHash {
    std::size_t operator()(const BalancedPair& p) const noexcept { return static_cast<std::size_t>(p.id()); }
};

/// Insertion-ordered set of pairs, each tagged with the iteration that first produced it.
class PairSet {
public:
    /// Index of the pair and whether it was new.
    std::pair<std::size_t, bool> insert(BalancedPair p, int generation);
    std::optional<std::size_t> find(const BalancedPair& p) const;
    bool contains(const BalancedPair& p) const { return find(p).has_value(); }

    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }
    const BalancedPair& operator[](std::size_t i) const { return pairs_.at(i); }
    int generation(std::size_t i) const { return generation_.at(i); }
    const std::vector<BalancedPair>& pairs() const noexcept { return pairs_; }
    /// Members discovered at or before `generation`.
    std::size_t count_up_to(int generation) const;

private:
    std::vector<BalancedPair> pairs_;
    std::vector<int> generation_;
    std::unordered_map<BalancedPair, std::size_t, BalancedPairHash> index_;
};

struct Budgets {
    int max_iterations = 60;
    std::size_t max_pairs = 20000;
    std::size_t max_word_length = 5000;
    std::size_t min_stability_window = 500;
    std::size_t max_scan_length = 1000000;

    /// Cuts without a new pair needed before the initial split is considered complete.
    std::size_t stability_window(std::size_t pair_count) const {
        return std::max(min_stability_window, 3 * pair_count);
    }
    /// Throws InvalidLength unless every budget is positive.
    void validate() const;
};

enum class BudgetKind { max_iterations, max_pairs, max_word_length, max_scan_length, stability_window };
const char* to_string(BudgetKind b);

/// Splits u ~ v into irreducible balanced pairs by a two-pointer scan on
/// exact lengths. Throws NotBalanced if u !~ v and ScanOverflow when one
/// component exceeds `max_component` letters on either side.
std::vector<BalancedPair> reduce_pair(const Relation& rel, const Word& u, const Word& v,
                                      std::size_t max_component = std::numeric_limits<std::size_t>::max());

std::pair<Word, Word> substitute_pair(const Substitution& phi, const BalancedPair& p);

/// Reduction of the substituted pair, in order and with repetitions.
std::vector<BalancedPair> children(const Relation& rel, const BalancedPair& p,
                                   std::size_t max_component = std::numeric_limits<std::size_t>::max());

struct InitialSplit {
    PairSet pairs;           ///< all generation 1
    std::size_t cuts = 0;    ///< components emitted while scanning
    std::size_t scanned = 0; ///< letters consumed on the top side
    std::size_t window = 0;  ///< stability window in force when the scan stopped
};

/// Streams the fixed word u against its shift by |w| and collects the
/// distinct irreducible pairs until `stability_window` consecutive cuts
/// bring nothing new. `u` must be the fixed point of rel's substitution.
/// Throws InvalidPrefix, ScanOverflow (no cut at all within max_scan_length)
/// or StabilityNotReached (still discovering at max_scan_length).
InitialSplit initial_pairs(const Relation& rel, FixedPointStream& u, const Word& w, const Budgets& budgets);

/// Directed multigraph on pair indices; out-edges keep first-occurrence order.
struct PairGraph {
    struct Edge {
        std::size_t target;
        int multiplicity;
    };
    std::vector<std::vector<Edge>> out;

    std::size_t vertex_count() const noexcept { return out.size(); }
    std::size_t edge_count() const;
};

struct BpaOutcome {
    bool terminated = false;
    PairSet pairs;
    /// Smallest n with I_n == I(w); set when terminated.
    int closure_iteration = 0;
    std::optional<BudgetKind> exceeded;
    std::string detail;  ///< budget message when not terminated
    int iterations = 0;
    /// Longest side among pairs first found in each completed iteration (0 if none); index 0 is I_1.
    std::vector<std::size_t> max_length_trace;
    std::vector<BalancedPair> longest;  ///< up to 5, longest first
    std::size_t stability_window = 0;
    std::size_t scanned = 0;
    std::optional<PairGraph> graph;  ///< built during closure when terminated
};

/// FIFO closure of initial_pairs() under children(). `u` must be fixed by rel's
/// substitution. Budget breaches end the run as BudgetExceeded.
BpaOutcome run_bpa(const Relation& rel, FixedPointStream& u, const Word& w, const Budgets& budgets = {});
/// Builds the fixed-point stream itself; throws InvariantViolation if it needs a power of the substitution.
BpaOutcome run_bpa(const Relation& rel, const Word& w, const Budgets& budgets = {});

/// Throws NotClosed when some child lies outside `pairs`.
PairGraph pair_graph(const Relation& rel, const PairSet& pairs);

struct CoincidenceInfo {
    bool is_coincidence = false;
    bool leads_to_coincidence = false;
};

std::vector<CoincidenceInfo> coincidence_analysis(const PairSet& pairs, const PairGraph& g);

struct DensityStats {
    std::size_t shift = 0;    ///< |phi^l(w)|
    std::size_t horizon = 0;  ///< top letters covered by complete pairs
    FieldScalar coincident_mass;
    FieldScalar total_mass;
    double ratio = 0;
};

/// Share of L-length carried by coincidences when u is compared against u
/// shifted by |phi^l(w)|, over roughly the first `horizon` letters.
DensityStats coincidence_density(const Relation& rel, FixedPointStream& u, const Word& w, unsigned l,
                                 std::size_t horizon);

}  // namespace balpair
