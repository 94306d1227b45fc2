#include "balpair/report.hpp"

#include <json.hpp>

#include <sstream>

namespace balpair {

namespace {

using nlohmann::json;

json poly_json(const RatPoly& p, const std::string& var = "x") {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(to_string(c));
    return {{"text", p.to_string(var)}, {"coeffs", coeffs}};
}

json scalar_json(const FieldScalar& s, int digits) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(to_string(c));
    return {{"coeffs", coeffs}, {"text", s.to_string("t")}, {"approx", s.approx_string(digits)}};
}

json pair_json(const Substitution& phi, const PairSet& pairs, std::size_t i, const std::vector<CoincidenceInfo>& info) {
    json j = {{"top", phi.format(pairs[i].top)},
              {"bottom", phi.format(pairs[i].bottom)},
              {"generation", pairs.generation(i)},
              {"coincidence", pairs[i].is_coincidence()}};
    if (i < info.size()) j["leads_to_coincidence"] = info[i].leads_to_coincidence;
    return j;
}

json outcome_json(const Substitution& phi, const BpaOutcome& o) {
    json j = {{"status", o.terminated ? "terminated" : "budget_exceeded"},
              {"iterations", o.iterations},
              {"pair_count", o.pairs.size()},
              {"max_length_trace", o.max_length_trace},
              {"stability_window", o.stability_window},
              {"scanned", o.scanned}};
    if (o.terminated) j["closure_iteration"] = o.closure_iteration;
    if (o.exceeded) {
        j["exceeded"] = to_string(*o.exceeded);
        j["detail"] = o.detail;
    }
    json longest = json::array();
    for (const auto& p : o.longest)
        longest.push_back({{"top", phi.format(p.top)}, {"bottom", phi.format(p.bottom)}, {"size", p.size()}});
    j["longest"] = longest;
    return j;
}

json cell_json(const AnalysisReport& rep, const CellReport& c, const RenderOptions& opt) {
    const Substitution& phi = *rep.analyzed;
    json j = {{"prefix_selection", c.prefix_label},
              {"length_spec", c.relation_label},
              {"mode", to_string(c.relation.mode)}};
    if (!c.prefix.empty()) {
        j["prefix"] = phi.format(c.prefix);
        j["prefix_returns"] = c.prefix_returns;
    }
    if (c.error) j["error"] = {{"kind", c.error_kind}, {"message", *c.error}};
    json v = {{"kind", to_string(c.verdict.kind)}};
    if (c.verdict.reason) v["reason"] = to_string(*c.verdict.reason);
    if (c.verdict.kind == VerdictKind::pure_discrete) v["applies_to"] = "perron_frobenius_flow";
    if (c.verdict.witness_pair && c.outcome) {
        const auto& p = c.outcome->pairs[*c.verdict.witness_pair];
        v["witness_pair"] = {{"top", phi.format(p.top)}, {"bottom", phi.format(p.bottom)}};
    }
    j["verdict"] = v;
    if (opt.timings) j["seconds"] = c.seconds;
    if (!c.outcome) return j;

    const BpaOutcome& o = *c.outcome;
    j["outcome"] = outcome_json(phi, o);
    if (o.pairs.size() <= opt.pair_list_threshold) {
        json list = json::array();
        for (std::size_t i = 0; i < o.pairs.size(); ++i) list.push_back(pair_json(phi, o.pairs, i, c.coincidence));
        j["pairs"] = list;
    } else {
        json list = json::array();
        for (std::size_t i = 0; i < opt.pair_sample && i < o.pairs.size(); ++i) list.push_back(pair_json(phi, o.pairs, i, c.coincidence));
        j["pairs_sample"] = list;
    }
    if (o.graph) {
        std::size_t coincidences = 0;
        for (const auto& p : o.pairs.pairs()) coincidences += p.is_coincidence();
        j["graph_stats"] = {{"vertices", o.graph->vertex_count()},
                            {"edges", o.graph->edge_count()},
                            {"coincidence_vertices", coincidences}};
        json failing = json::array();
        for (std::size_t i = 0; i < c.coincidence.size(); ++i)
            if (!c.coincidence[i].leads_to_coincidence)
                failing.push_back({{"top", phi.format(o.pairs[i].top)}, {"bottom", phi.format(o.pairs[i].bottom)}});
        j["coincidence"] = {{"all_lead", c.all_lead()}, {"failing_pairs", failing}};
    }
    if (c.corollary) {
        json k = {{"lambda_terminated", c.corollary->lambda_terminated}, {"consistent", c.corollary->consistent}};
        if (c.corollary->lambda_exceeded) k["lambda_exceeded"] = to_string(*c.corollary->lambda_exceeded);
        j["corollary_check"] = k;
    }
    if (!c.densities.empty()) {
        json d = json::array();
        for (std::size_t l = 0; l < c.densities.size(); ++l) {
            const auto& s = c.densities[l];
            d.push_back({{"level", l},
                         {"shift", s.shift},
                         {"horizon", s.horizon},
                         {"coincident_mass", scalar_json(s.coincident_mass, opt.digits)},
                         {"total_mass", scalar_json(s.total_mass, opt.digits)},
                         {"ratio", s.total_mass.is_zero() ? std::string("0")
                                                  : (s.coincident_mass / s.total_mass).approx_string(opt.digits)}});
        }
        j["densities"] = d;
    }
    return j;
}

json substitution_json(const AnalysisReport& rep, const RenderOptions& opt) {
    const Substitution& phi = *rep.substitution;
    json rules = json::array();
    for (std::size_t a = 0; a < phi.size(); ++a)
        rules.push_back({{"letter", phi.token(static_cast<Letter>(a))}, {"image", phi.format(phi.image(static_cast<Letter>(a)))}});
    json matrix = json::array();
    for (std::size_t i = 0; i < phi.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < phi.size(); ++k) row.push_back(phi.matrix()(i, k).get_str());
        matrix.push_back(row);
    }
    json j = {{"alphabet", phi.tokens()}, {"rules", rules}, {"matrix", matrix}};
    j["fixed_point"] = {{"power", rep.power}, {"seed", phi.token(rep.seed)}};
    if (rep.power > 1) j["fixed_point"]["note"] = "cells run on the power of the substitution that fixes the seed";

    json flags = {{"primitive", true}, {"verdict_transfers_to_shift", rep.verdict_transfers_to_shift}};
    if (rep.eigen) {
        const EigenReport& e = *rep.eigen;
        j["char_poly"] = poly_json(e.char_poly);
        json factors = json::array();
        for (const auto& f : e.factors) {
            json roots = json::array();
            for (const auto& r : f.roots) roots.push_back({{"class", to_string(r.cls)}, {"approx", r.approx}});
            json fj = {{"poly", poly_json(f.poly)}, {"multiplicity", f.multiplicity}, {"roots", roots}};
            if (f.cyclotomic) fj["cyclotomic_index"] = *f.cyclotomic;
            factors.push_back(fj);
        }
        j["factors"] = factors;
        json counts;
        for (int c = 0; c < 5; ++c) counts[to_string(static_cast<RootClass>(c))] = e.counts[c];
        j["root_counts"] = counts;
        j["dims"] = {{"script_l", e.script_l_dim}, {"script_s", e.script_s_dim}};
        j["precision_bits"] = e.precision_bits;
        flags["pisot_type_literal"] = e.pisot_type_literal;
        flags["pisot_type_allow_zero"] = e.pisot_type_allow_zero;
        flags["charpoly_irreducible"] = e.charpoly_irreducible;
        flags["constant_length"] = e.constant_length;
    } else {
        j["spectrum_error"] = {{"kind", rep.eigen_error_kind}, {"message", rep.eigen_error.value_or("")}};
        flags["constant_length"] = is_constant_length(phi);
    }
    j["flags"] = flags;
    if (rep.perron) {
        const auto& f = *rep.perron->field;
        j["perron"] = {{"min_poly", poly_json(f.min_poly(), "t")},
                       {"interval", {to_string(f.isolating_interval().lo), to_string(f.isolating_interval().hi)}},
                       {"approx", f.approx(opt.digits)}};
        json exact = json::array(), approx = json::array();
        for (const auto& x : rep.perron->left) {
            exact.push_back(scalar_json(x, opt.digits));
            approx.push_back(x.approx_string(opt.digits));
        }
        json l = {{"exact", exact}, {"approx", approx}};
        if (rep.perron_integer_form) {
            json ints = json::array();
            for (const auto& z : *rep.perron_integer_form) ints.push_back(z.get_str());
            l["integer_form"] = ints;
        }
        j["l_lambda"] = l;
    } else {
        j["perron_error"] = {{"kind", rep.perron_error_kind}, {"message", rep.perron_error.value_or("")}};
    }
    return j;
}

}  // namespace

std::string render_json(const AnalysisReport& rep, const RenderOptions& opt) {
    json doc;
    doc["tool_version"] = kToolVersion;
    doc["substitution"] = substitution_json(rep, opt);
    json classes = json::array();
    for (const auto& cls : rep.letter_classes.classes) {
        json c = json::array();
        for (Letter a : cls) c.push_back(rep.substitution->token(a));
        classes.push_back(c);
    }
    doc["letter_classes"] = classes;
    json cells = json::array();
    for (const auto& c : rep.cells) cells.push_back(cell_json(rep, c, opt));
    doc["cells"] = cells;
    doc["corollary_consistent"] = rep.corollary_consistent();
    if (opt.timings) doc["timings"] = {{"total_seconds", rep.seconds}};
    return doc.dump(2) + "\n";
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string render_dot(const Substitution& phi, const PairSet& pairs, const PairGraph& graph) {
    std::ostringstream os;
    os << "digraph pairs {\n";
    for (std::size_t i = 0; i < graph.vertex_count(); ++i)
        os << "  n" << i << " [label=\"" << dot_escape(pairs[i].format(phi)) << "\", shape="
           << (pairs[i].is_coincidence() ? "doublecircle" : "circle") << "];\n";
    for (std::size_t i = 0; i < graph.vertex_count(); ++i)
        for (const auto& e : graph.out[i])
            os << "  n" << i << " -> n" << e.target << " [label=\"" << e.multiplicity << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string render_text(const AnalysisReport& rep) {
    const Substitution& phi = *rep.substitution;
    std::ostringstream os;
    os << phi.to_text();
    os << "matrix:\n";
    for (std::size_t i = 0; i < phi.size(); ++i) {
        os << " ";
        for (std::size_t k = 0; k < phi.size(); ++k) os << " " << phi.matrix()(i, k).get_str();
        os << "\n";
    }
    if (rep.eigen) {
        const auto& e = *rep.eigen;
        os << "char poly: " << e.char_poly.to_string() << "\nfactors:";
        for (const auto& f : e.factors) {
            os << " (" << f.poly.to_string() << ")";
            if (f.multiplicity > 1) os << "^" << f.multiplicity;
        }
        os << "\neigenvalues:";
        for (const auto& f : e.factors)
            for (const auto& r : f.roots) os << " " << r.approx << " [" << to_string(r.cls) << "]";
        os << "\npisot type: " << (e.pisot_type_literal ? "yes" : "no")
           << (e.pisot_type_allow_zero && !e.pisot_type_literal ? " (yes if 0 is allowed)" : "")
           << ", irreducible: " << (e.charpoly_irreducible ? "yes" : "no")
           << ", constant length: " << (e.constant_length ? "yes" : "no") << "\n";
    } else {
        os << "spectrum: " << rep.eigen_error_kind << ": " << rep.eigen_error.value_or("") << "\n";
    }
    if (rep.perron) {
        os << "lambda = " << rep.perron->field->approx(12) << ", root of " << rep.perron->field->min_poly().to_string("t")
           << "\nL_lambda =";
        for (const auto& x : rep.perron->left) os << " " << x.to_string("t") << " (" << x.approx_string(12) << ")";
        os << "\n";
    }
    os << "letter classes:";
    for (const auto& cls : rep.letter_classes.classes) {
        os << " {";
        for (std::size_t k = 0; k < cls.size(); ++k) os << (k ? "," : "") << phi.token(cls[k]);
        os << "}";
    }
    os << "\nfixed point: power " << rep.power << ", seed " << phi.token(rep.seed) << "\n";
    for (const auto& c : rep.cells) {
        os << "\n[" << c.relation_label << "] prefix "
           << (c.prefix.empty() ? c.prefix_label : rep.analyzed->format(c.prefix)) << ": ";
        if (c.error) {
            os << "error " << c.error_kind << ": " << *c.error << "\n";
            continue;
        }
        const auto& o = *c.outcome;
        if (o.terminated)
            os << "terminated at iteration " << o.closure_iteration << " with " << o.pairs.size() << " pairs";
        else
            os << "budget exceeded (" << to_string(*o.exceeded) << ") after " << o.iterations << " iterations, "
               << o.pairs.size() << " pairs";
        os << "\n  verdict: " << to_string(c.verdict.kind);
        if (c.verdict.reason) os << " (" << to_string(*c.verdict.reason) << ")";
        os << "\n";
        if (c.corollary && !c.corollary->consistent) os << "  corollary check FAILED: lambda run did not terminate\n";
    }
    return os.str();
}

}  // namespace balpair
