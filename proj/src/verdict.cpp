#include "balpair/verdict.hpp"

#include "balpair/errors.hpp"

#include <boost/core/demangle.hpp>

#include <chrono>
#include <typeinfo>

namespace balpair {

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::pure_discrete: return "pure_discrete";
        case VerdictKind::not_pure_discrete: return "not_pure_discrete";
        case VerdictKind::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(InconclusiveReason r) {
    switch (r) {
        case InconclusiveReason::budget_exceeded: return "budget_exceeded";
        case InconclusiveReason::prefix_condition_unmet: return "prefix_condition_unmet";
        case InconclusiveReason::undecidable_numerics: return "undecidable_numerics";
    }
    return "?";
}

SpectrumVerdict verdict(const BpaOutcome& outcome, const std::vector<CoincidenceInfo>& analysis, bool prefix_ok) {
    SpectrumVerdict v;
    if (!outcome.terminated) {
        v.reason = InconclusiveReason::budget_exceeded;
        return v;
    }
    if (analysis.size() != outcome.pairs.size()) throw InvariantViolation("coincidence analysis does not cover the pair set");
    for (std::size_t i = 0; i < analysis.size(); ++i)
        if (!analysis[i].leads_to_coincidence) {
            v.witness_pair = i;
            break;
        }
    if (!v.witness_pair) {
        v.kind = VerdictKind::pure_discrete;
    } else if (prefix_ok) {
        v.kind = VerdictKind::not_pure_discrete;
    } else {
        v.reason = InconclusiveReason::prefix_condition_unmet;
    }
    return v;
}

std::string PrefixSelection::label() const {
    if (word) return *word;
    return "auto:" + std::to_string(max_len) + (require_return ? ":return" : "");
}

std::string RelationChoice::label() const {
    if (mode == RelationMode::generalized) return "general:" + length.label();
    return to_string(mode);
}

bool CellReport::all_lead() const {
    if (!outcome || !outcome->terminated) return false;
    for (const auto& c : coincidence)
        if (!c.leads_to_coincidence) return false;
    return true;
}

bool AnalysisReport::any_budget_exceeded() const {
    for (const auto& c : cells)
        if (c.outcome && !c.outcome->terminated) return true;
    return false;
}

bool AnalysisReport::corollary_consistent() const {
    for (const auto& c : cells)
        if (c.corollary && !c.corollary->consistent) return false;
    return true;
}

Relation make_relation(std::shared_ptr<const Substitution> phi, const RelationChoice& choice, const PerronData* perron) {
    switch (choice.mode) {
        case RelationMode::plain: return Relation::plain(std::move(phi));
        case RelationMode::letter_classes: return Relation::letter_classes(std::move(phi));
        case RelationMode::generalized: break;
    }
    return Relation::generalized(std::move(phi), choice.length, perron);
}

Word choose_prefix(const Substitution& phi, FixedPointStream& u, const PrefixSelection& sel) {
    if (sel.word) {
        Word w = phi.parse_word(*sel.word);
        if (w.empty()) throw InvalidPrefix("prefix must be nonempty");
        if (u.prefix(w.size()) != w) throw InvalidPrefix("'" + *sel.word + "' is not a prefix of the fixed word");
        return w;
    }
    auto candidates = admissible_prefixes(u, sel.max_len, sel.require_return);
    if (candidates.empty())
        throw InvalidPrefix("no admissible prefix of length at most " + std::to_string(sel.max_len));
    return candidates.front();
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string kind_of(const std::exception& e) {
    std::string name = boost::core::demangle(typeid(e).name());
    auto colon = name.rfind("::");
    return colon == std::string::npos ? name : name.substr(colon + 2);
}

bool is_lambda(const RelationChoice& r) {
    return r.mode == RelationMode::generalized && r.length.kind == LengthSpec::Kind::perron;
}

}  // namespace

AnalysisReport describe(std::shared_ptr<const Substitution> phi, int precision_bits) {
    if (!is_primitive(*phi)) throw NotPrimitive();
    const auto t0 = Clock::now();
    AnalysisReport rep;
    rep.substitution = phi;
    FixedPointStream u(*phi);
    rep.power = u.power();
    rep.seed = u.seed();
    rep.analyzed = rep.power == 1 ? phi : std::make_shared<const Substitution>(u.fixing_substitution());
    rep.letter_classes = letter_equiv_classes(*phi);
    try {
        rep.eigen = classify_spectrum(phi->matrix(), precision_bits);
        rep.verdict_transfers_to_shift = rep.eigen->pisot_type_literal;
    } catch (const Error& e) {
        rep.eigen_error = e.what();
        rep.eigen_error_kind = kind_of(e);
    }
    try {
        rep.perron = perron_data(*phi);
        rep.perron_integer_form = integer_form(rep.perron->left);
    } catch (const Error& e) {
        rep.perron_error = e.what();
        rep.perron_error_kind = kind_of(e);
    }
    rep.seconds = seconds_since(t0);
    return rep;
}

AnalysisReport analyze(std::shared_ptr<const Substitution> phi, const AnalysisConfig& config) {
    if (config.prefixes.empty() || config.relations.empty()) throw EmptyConfig();
    config.budgets.validate();
    const auto t0 = Clock::now();
    AnalysisReport rep = describe(phi, config.precision_bits);
    FixedPointStream u(*phi);

    std::optional<PerronData> analyzed_perron;
    std::optional<std::string> perron_error = rep.perron_error;
    std::string perron_error_kind = rep.perron_error_kind;
    if (rep.perron) {
        try {
            analyzed_perron = rep.power == 1 ? rep.perron : perron_data(*rep.analyzed);
        } catch (const Error& e) {
            perron_error = e.what();
            perron_error_kind = kind_of(e);
        }
    }

    auto run_cell = [&](CellReport& cell, const Word& w, bool diagnostics) {
        const auto c0 = Clock::now();
        try {
            if (cell.relation.mode == RelationMode::generalized && cell.relation.length.kind == LengthSpec::Kind::perron &&
                !analyzed_perron) {
                cell.error = *perron_error;
                cell.error_kind = perron_error_kind;
                return;
            }
            Relation rel = make_relation(rep.analyzed, cell.relation, analyzed_perron ? &*analyzed_perron : nullptr);
            cell.relation_label = rel.label();
            cell.outcome = run_bpa(rel, u, w, config.budgets);
            if (cell.outcome->terminated) cell.coincidence = coincidence_analysis(cell.outcome->pairs, *cell.outcome->graph);
            cell.verdict = verdict(*cell.outcome, cell.coincidence, cell.prefix_returns);
            for (int l = 0; diagnostics && l <= config.density_levels; ++l) {
                std::size_t shift = balpair::apply(*rep.analyzed, w, static_cast<unsigned>(l)).size();
                cell.densities.push_back(
                    coincidence_density(rel, u, w, static_cast<unsigned>(l), std::max(config.density_horizon, 2 * shift)));
            }
        } catch (const Undecidable& e) {
            cell.error = e.what();
            cell.error_kind = kind_of(e);
            cell.verdict = {VerdictKind::inconclusive, InconclusiveReason::undecidable_numerics, std::nullopt};
        } catch (const Error& e) {
            cell.error = e.what();
            cell.error_kind = kind_of(e);
        }
        cell.seconds = seconds_since(c0);
    };

    for (const auto& sel : config.prefixes) {
        std::optional<Word> w;
        std::optional<std::string> prefix_error;
        std::string prefix_error_kind;
        try {
            w = choose_prefix(*rep.analyzed, u, sel);
        } catch (const Error& e) {
            prefix_error = e.what();
            prefix_error_kind = kind_of(e);
        }
        const std::size_t first = rep.cells.size();
        for (const auto& rc : config.relations) {
            CellReport cell;
            cell.prefix_label = sel.label();
            cell.relation = rc;
            cell.relation_label = rc.label();
            if (!w) {
                cell.error = prefix_error;
                cell.error_kind = prefix_error_kind;
                rep.cells.push_back(std::move(cell));
                continue;
            }
            cell.prefix = *w;
            cell.prefix_returns = u.at(w->size()) == u.at(0);
            run_cell(cell, *w, true);
            rep.cells.push_back(std::move(cell));
        }
        if (!w) continue;

        // Whenever a coarser relation terminates, the Perron-Frobenius relation must terminate too.
        std::optional<CorollaryCheck> lambda_run;
        for (std::size_t i = first; i < rep.cells.size(); ++i)
            if (is_lambda(rep.cells[i].relation) && rep.cells[i].outcome) {
                CorollaryCheck c;
                c.lambda_terminated = rep.cells[i].outcome->terminated;
                c.lambda_exceeded = rep.cells[i].outcome->exceeded;
                lambda_run = c;
                break;
            }
        for (std::size_t i = first; i < rep.cells.size(); ++i) {
            CellReport& cell = rep.cells[i];
            if (is_lambda(cell.relation) || !cell.outcome || !cell.outcome->terminated) continue;
            if (!lambda_run) {
                if (!analyzed_perron) break;
                CellReport probe;
                probe.relation = RelationChoice{RelationMode::generalized, LengthSpec::perron()};
                probe.prefix_returns = cell.prefix_returns;
                run_cell(probe, *w, false);
                if (!probe.outcome) break;
                lambda_run = CorollaryCheck{probe.outcome->terminated, probe.outcome->exceeded, true};
            }
            CorollaryCheck c = *lambda_run;
            c.consistent = c.lambda_terminated;
            cell.corollary = c;
        }
    }
    rep.seconds = seconds_since(t0);
    return rep;
}

}  // namespace balpair
