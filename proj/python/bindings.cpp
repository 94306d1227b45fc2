#include "balpair/errors.hpp"
#include "balpair/report.hpp"
#include "balpair/verdict.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace balpair;

namespace {

/// pybind11 holders cannot be const-qualified; the library takes the const view.
using SubPtr = std::shared_ptr<Substitution>;

/// Python-side view of a finished run; words are in the substitution's notation.
struct PyOutcome {
    bool terminated = false;
    std::vector<std::pair<std::string, std::string>> pairs;
    int closure_iteration = 0;
    std::optional<std::string> exceeded;
    int iterations = 0;
    std::vector<std::size_t> max_length_trace;
    std::optional<bool> all_lead;  ///< set when terminated
};

Budgets budgets_from(int max_iterations, std::size_t max_pairs, std::size_t max_word_length,
                     std::size_t max_scan_length) {
    Budgets b;
    b.max_iterations = max_iterations;
    b.max_pairs = max_pairs;
    b.max_word_length = max_word_length;
    b.max_scan_length = max_scan_length;
    b.validate();
    return b;
}

RelationMode mode_from(const std::string& s) {
    if (s == "plain") return RelationMode::plain;
    if (s == "letters") return RelationMode::letter_classes;
    if (s == "general") return RelationMode::generalized;
    throw InvalidLength("unknown mode '" + s + "'; expected plain, letters or general");
}

PyOutcome to_py(const Substitution& phi, const BpaOutcome& o) {
    PyOutcome r;
    r.terminated = o.terminated;
    for (const auto& p : o.pairs.pairs()) r.pairs.emplace_back(phi.format(p.top), phi.format(p.bottom));
    r.closure_iteration = o.closure_iteration;
    if (o.exceeded) r.exceeded = to_string(*o.exceeded);
    r.iterations = o.iterations;
    r.max_length_trace = o.max_length_trace;
    if (o.terminated && o.graph) {
        bool all = true;
        for (const auto& c : coincidence_analysis(o.pairs, *o.graph)) all = all && c.leads_to_coincidence;
        r.all_lead = all;
    }
    return r;
}

AnalysisConfig config_from(std::optional<std::string> prefix, const std::vector<std::string>& lengths,
                           std::optional<std::string> mode, const Budgets& budgets) {
    AnalysisConfig cfg;
    PrefixSelection sel;
    sel.word = std::move(prefix);
    cfg.prefixes = {sel};
    RelationMode m = mode ? mode_from(*mode) : (lengths.empty() ? RelationMode::letter_classes : RelationMode::generalized);
    if (m == RelationMode::generalized) {
        std::vector<std::string> specs = lengths.empty() ? std::vector<std::string>{"lambda", "ones"} : lengths;
        for (const auto& s : specs) cfg.relations.push_back({m, LengthSpec::parse(s)});
    } else {
        cfg.relations.push_back({m, LengthSpec::ones()});
    }
    cfg.budgets = budgets;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Balanced pair algorithm for substitutions";
    m.attr("__version__") = kToolVersion;

    auto& base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<InvalidLength>(m, "InvalidLength", base.ptr());
    py::register_exception<InvalidPrefix>(m, "InvalidPrefix", base.ptr());
    py::register_exception<NotPrimitive>(m, "NotPrimitive", base.ptr());
    py::register_exception<NotBalanced>(m, "NotBalanced", base.ptr());

    py::class_<Substitution, SubPtr>(m, "Substitution")
        .def_static("parse", [](const std::string& text) { return std::make_shared<Substitution>(parse_substitution(text)); },
                    py::arg("text"))
        .def_property_readonly("tokens", &Substitution::tokens)
        .def_property_readonly("rules", [](const Substitution& s) {
            std::vector<std::string> out;
            for (const auto& r : s.rules()) out.push_back(s.format(r));
            return out;
        })
        .def_property_readonly("matrix", [](const Substitution& s) { return s.matrix().to_long(); })
        .def("parse_word", &Substitution::parse_word, py::arg("text"))
        .def("format", &Substitution::format, py::arg("word"))
        .def("apply", [](const Substitution& s, const std::string& w, unsigned k) { return s.format(balpair::apply(s, s.parse_word(w), k)); },
             py::arg("word"), py::arg("times") = 1)
        .def("power", [](const Substitution& s, unsigned k) { return std::make_shared<Substitution>(s.power(k)); }, py::arg("k"))
        .def("to_text", &Substitution::to_text)
        .def("is_primitive", [](const Substitution& s) { return is_primitive(s); })
        .def("is_constant_length", [](const Substitution& s) { return is_constant_length(s); })
        .def("fixed_prefix", [](const Substitution& s, std::size_t n) {
            FixedPointStream u(s);
            return s.format(u.prefix(n));
        }, py::arg("length"))
        .def("__eq__", [](const Substitution& a, const Substitution& b) { return a == b; })
        .def("__repr__", [](const Substitution& s) { return "<Substitution on " + std::to_string(s.size()) + " letters>"; });

    py::class_<Relation>(m, "Relation")
        .def_static("plain", [](SubPtr phi) { return Relation::plain(std::move(phi)); }, py::arg("substitution"))
        .def_static("letters", [](SubPtr phi) { return Relation::letter_classes(std::move(phi)); }, py::arg("substitution"))
        .def_static("general", [](SubPtr phi, const std::string& length) {
            return Relation::generalized(std::move(phi), LengthSpec::parse(length));
        }, py::arg("substitution"), py::arg("length") = "lambda")
        .def_property_readonly("label", &Relation::label)
        .def("equivalent", [](const Relation& r, const std::string& u, const std::string& v) {
            const auto& phi = r.substitution();
            return word_equiv(r, phi.parse_word(u), phi.parse_word(v));
        }, py::arg("u"), py::arg("v"))
        .def("reduce", [](const Relation& r, const std::string& u, const std::string& v) {
            const auto& phi = r.substitution();
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& p : reduce_pair(r, phi.parse_word(u), phi.parse_word(v)))
                out.emplace_back(phi.format(p.top), phi.format(p.bottom));
            return out;
        }, py::arg("u"), py::arg("v"));

    py::class_<PyOutcome>(m, "Outcome")
        .def_readonly("terminated", &PyOutcome::terminated)
        .def_readonly("pairs", &PyOutcome::pairs)
        .def_readonly("closure_iteration", &PyOutcome::closure_iteration)
        .def_readonly("exceeded", &PyOutcome::exceeded)
        .def_readonly("iterations", &PyOutcome::iterations)
        .def_readonly("max_length_trace", &PyOutcome::max_length_trace)
        .def_readonly("all_lead", &PyOutcome::all_lead);

    m.def("run_bpa", [](const Relation& rel, const std::string& prefix, int max_iterations, std::size_t max_pairs,
                        std::size_t max_word_length, std::size_t max_scan_length) {
        const auto& phi = rel.substitution();
        Budgets b = budgets_from(max_iterations, max_pairs, max_word_length, max_scan_length);
        BpaOutcome o;
        {
            py::gil_scoped_release release;
            o = run_bpa(rel, phi.parse_word(prefix), b);
        }
        return to_py(phi, o);
    }, py::arg("relation"), py::arg("prefix"), py::arg("max_iterations") = 60, py::arg("max_pairs") = 20000,
       py::arg("max_word_length") = 5000, py::arg("max_scan_length") = 1000000);

    m.def("letter_classes", [](const Substitution& phi) {
        std::vector<std::vector<std::string>> out;
        for (const auto& cls : letter_equiv_classes(phi).classes) {
            out.emplace_back();
            for (Letter a : cls) out.back().push_back(phi.token(a));
        }
        return out;
    }, py::arg("substitution"));

    m.def("describe_json", [](SubPtr phi) { return render_json(describe(std::move(phi))); }, py::arg("substitution"));

    m.def("analyze_json", [](SubPtr phi, std::optional<std::string> prefix, std::vector<std::string> lengths,
                             std::optional<std::string> mode, int max_iterations, std::size_t max_pairs,
                             std::size_t max_word_length, std::size_t max_scan_length) {
        AnalysisConfig cfg = config_from(std::move(prefix), lengths, std::move(mode),
                                         budgets_from(max_iterations, max_pairs, max_word_length, max_scan_length));
        AnalysisReport rep;
        {
            py::gil_scoped_release release;
            rep = analyze(std::move(phi), cfg);
        }
        return render_json(rep);
    }, py::arg("substitution"), py::arg("prefix") = py::none(), py::arg("lengths") = std::vector<std::string>{},
       py::arg("mode") = py::none(), py::arg("max_iterations") = 60, py::arg("max_pairs") = 20000,
       py::arg("max_word_length") = 5000, py::arg("max_scan_length") = 1000000);
}
