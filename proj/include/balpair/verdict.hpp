#pragma once

#include "balpair/bpa.hpp"
#include "balpair/equivalence.hpp"
#include "balpair/spectrum.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace balpair {

enum class VerdictKind { pure_discrete, not_pure_discrete, inconclusive };
enum class InconclusiveReason { budget_exceeded, prefix_condition_unmet, undecidable_numerics };
const char* to_string(VerdictKind k);
const char* to_string(InconclusiveReason r);

/// Outcome of the pure-discrete-spectrum criterion for one run. A positive
/// answer always refers to the flow with Perron-Frobenius lengths.
struct SpectrumVerdict {
    VerdictKind kind = VerdictKind::inconclusive;
    std::optional<InconclusiveReason> reason;
    /// First pair (in discovery order) that never reaches a coincidence.
    std::optional<std::size_t> witness_pair;

    friend bool operator==(const SpectrumVerdict&, const SpectrumVerdict&) = default;
};

/// Terminated and every pair leads to a coincidence: pure discrete.
/// Terminated, some pair does not, prefix returns (u_{m+1} == u_0): not pure discrete.
/// Terminated, some pair does not, prefix does not return: inconclusive.
/// Budget exceeded: inconclusive.
SpectrumVerdict verdict(const BpaOutcome& outcome, const std::vector<CoincidenceInfo>& analysis, bool prefix_ok);

/// How the prefix w of a cell is chosen.
struct PrefixSelection {
    std::optional<std::string> word;  ///< explicit prefix; otherwise automatic
    std::size_t max_len = 8;          ///< automatic: longest prefix considered
    bool require_return = true;       ///< automatic: only prefixes followed by u_0

    std::string label() const;
};

struct RelationChoice {
    RelationMode mode = RelationMode::generalized;
    LengthSpec length = LengthSpec::perron();

    std::string label() const;
};

struct AnalysisConfig {
    std::vector<PrefixSelection> prefixes;
    std::vector<RelationChoice> relations;
    Budgets budgets;
    int precision_bits = kDefaultMaxPrecisionBits;
    /// Levels 0..density_levels of the coincidence density diagnostic; negative disables it.
    int density_levels = -1;
    std::size_t density_horizon = 20000;
};

struct CorollaryCheck {
    bool lambda_terminated = false;
    std::optional<BudgetKind> lambda_exceeded;
    /// False when this cell terminated but the Perron-Frobenius run did not.
    bool consistent = true;
};

struct CellReport {
    std::string prefix_label;
    Word prefix;
    bool prefix_returns = false;
    RelationChoice relation;
    std::string relation_label;
    std::optional<BpaOutcome> outcome;
    std::vector<CoincidenceInfo> coincidence;
    SpectrumVerdict verdict;
    std::optional<CorollaryCheck> corollary;
    std::vector<DensityStats> densities;
    /// Set when the cell failed; `error_kind` names the exception class.
    std::optional<std::string> error;
    std::string error_kind;
    double seconds = 0;

    bool all_lead() const;
};

struct AnalysisReport {
    std::shared_ptr<const Substitution> substitution;
    /// phi^k when the fixed point needs k > 1; cells run on this substitution.
    std::shared_ptr<const Substitution> analyzed;
    unsigned power = 1;
    Letter seed = 0;
    std::optional<EigenReport> eigen;
    std::optional<std::string> eigen_error;
    std::string eigen_error_kind;
    std::optional<PerronData> perron;
    std::optional<std::string> perron_error;
    std::string perron_error_kind;
    std::optional<std::vector<Integer>> perron_integer_form;
    LetterPartition letter_classes;
    /// Pisot type: the verdict for the flow carries over to the shift.
    bool verdict_transfers_to_shift = false;
    std::vector<CellReport> cells;
    double seconds = 0;

    bool any_budget_exceeded() const;
    bool corollary_consistent() const;
};

/// Substitution-level part of a report (spectrum, Perron data, letter classes), without cells.
/// Throws NotPrimitive or NoExpandingFixedPoint.
AnalysisReport describe(std::shared_ptr<const Substitution> phi, int precision_bits = kDefaultMaxPrecisionBits);

/// Runs every prefix x relation cell. Cells fail independently; their errors are recorded,
/// not thrown. Throws EmptyConfig, NotPrimitive or NoExpandingFixedPoint.
AnalysisReport analyze(std::shared_ptr<const Substitution> phi, const AnalysisConfig& config);

/// Relation of the requested kind on `phi`.
Relation make_relation(std::shared_ptr<const Substitution> phi, const RelationChoice& choice,
                       const PerronData* perron = nullptr);

/// Resolves a prefix selection against the fixed word; throws InvalidPrefix when none qualifies.
Word choose_prefix(const Substitution& phi, FixedPointStream& u, const PrefixSelection& sel);

}  // namespace balpair
