#include "balpair/cli.hpp"

#include "balpair/errors.hpp"
#include "balpair/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace balpair {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    std::string input;
    std::optional<std::string> prefix;
    std::optional<std::size_t> prefix_auto;
    bool require_return = true;
    std::vector<std::string> lengths;
    std::optional<std::string> mode;
    std::optional<int> max_iter;
    std::optional<std::size_t> max_pairs;
    std::optional<std::size_t> max_word_len;
    std::optional<std::size_t> max_scan;
    std::optional<std::string> json_path;
    std::optional<std::string> dot_path;
    int precision = kDefaultMaxPrecisionBits;
    int density = -1;
    bool timings = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

std::shared_ptr<const Substitution> load(const std::string& path) {
    try {
        return std::make_shared<const Substitution>(parse_substitution(read_file(path)));
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

RelationMode parse_mode(const std::string& s) {
    if (s == "plain") return RelationMode::plain;
    if (s == "letters") return RelationMode::letter_classes;
    if (s == "general") return RelationMode::generalized;
    throw UsageError("unknown mode '" + s + "' (expected plain, letters or general)");
}

Budgets make_budgets(const Options& o) {
    Budgets b;
    if (o.max_iter) b.max_iterations = *o.max_iter;
    if (o.max_pairs) b.max_pairs = *o.max_pairs;
    if (o.max_word_len) b.max_word_length = *o.max_word_len;
    if (o.max_scan) b.max_scan_length = *o.max_scan;
    b.validate();
    return b;
}

AnalysisConfig make_config(const Options& o, bool single = false) {
    AnalysisConfig cfg;
    PrefixSelection sel;
    if (o.prefix && o.prefix_auto) throw UsageError("--prefix and --prefix-auto are exclusive");
    if (o.prefix) sel.word = *o.prefix;
    if (o.prefix_auto) sel.max_len = *o.prefix_auto;
    sel.require_return = o.require_return;
    cfg.prefixes.push_back(sel);

    RelationMode mode = o.mode ? parse_mode(*o.mode) : (o.lengths.empty() ? RelationMode::letter_classes : RelationMode::generalized);
    if (mode == RelationMode::generalized) {
        std::vector<std::string> specs = !o.lengths.empty() ? o.lengths
                                        : single     ? std::vector<std::string>{"lambda"}
                                                     : std::vector<std::string>{"lambda", "ones"};
        for (const auto& s : specs) cfg.relations.push_back({RelationMode::generalized, LengthSpec::parse(s)});
    } else {
        if (!o.lengths.empty()) throw UsageError("--length needs --mode general");
        cfg.relations.push_back({mode, LengthSpec::ones()});
    }
    cfg.budgets = make_budgets(o);
    cfg.precision_bits = o.precision;
    cfg.density_levels = o.density;
    return cfg;
}

void add_input(CLI::App* sub, Options& o, const char* what) {
    sub->add_option("input", o.input, what)->required();
}

void add_run_options(CLI::App* sub, Options& o) {
    sub->add_option("--prefix", o.prefix, "explicit prefix w of the fixed word");
    sub->add_option("--prefix-auto", o.prefix_auto, "choose the shortest admissible prefix up to this length (default 8)");
    sub->add_option("--require-return", o.require_return, "automatic prefixes must be followed by the first letter")
        ->default_val(true);
    sub->add_option("--length", o.lengths, "length vector: ones | lambda | a,b,c,... (repeatable)");
    sub->add_option("--mode", o.mode, "plain | letters | general (default: general with --length, letters otherwise)");
    sub->add_option("--max-iter", o.max_iter, "iteration budget (default 60)");
    sub->add_option("--max-pairs", o.max_pairs, "pair budget (default 20000)");
    sub->add_option("--max-word-len", o.max_word_len, "longest admissible pair side (default 5000)");
    sub->add_option("--max-scan", o.max_scan, "letters scanned for the initial split (default 1000000)");
    sub->add_option("--density", o.density, "coincidence density diagnostic for levels 0..N");
    sub->add_option("--dot", o.dot_path, "write the pair graph of the first terminated cell");
}

void add_report_options(CLI::App* sub, Options& o) {
    sub->add_option("--json", o.json_path, "write the JSON report to this path (\"-\" for standard output)");
    sub->add_option("--precision", o.precision, "highest precision in bits for eigenvalue enclosures")
        ->default_val(kDefaultMaxPrecisionBits);
    sub->add_flag("--timings", o.timings, "include timings in the JSON report");
}

int code_for_kind(const std::string& kind) {
    if (kind == "InvariantViolation") return exit_internal;
    if (kind == "Undecidable") return exit_undecidable;
    return exit_error;
}

int worse(int a, int b) {
    auto rank = [](int c) {
        switch (c) {
            case exit_internal: return 4;
            case exit_undecidable: return 3;
            case exit_error: return 2;
            case exit_budget: return 1;
            default: return 0;
        }
    };
    return rank(a) >= rank(b) ? a : b;
}

/// Text summary on `out`, unless the JSON report goes there ("--json -").
void write_outputs(const AnalysisReport& rep, const Options& o, std::ostream& out, std::ostream& err) {
    RenderOptions ro;
    ro.timings = o.timings;
    bool json_to_stdout = o.json_path && *o.json_path == "-";
    if (json_to_stdout) {
        out << render_json(rep, ro);
    } else {
        out << render_text(rep);
        if (o.json_path) write_file(*o.json_path, render_json(rep, ro));
    }
    if (o.dot_path) {
        for (const auto& c : rep.cells)
            if (c.outcome && c.outcome->graph) {
                write_file(*o.dot_path, render_dot(*rep.analyzed, c.outcome->pairs, *c.outcome->graph));
                return;
            }
        err << "no terminated cell; graph not written\n";
    }
}

int run_info(const Options& o, std::ostream& out, std::ostream& err) {
    AnalysisReport rep = describe(load(o.input), o.precision);
    write_outputs(rep, o, out, err);
    return rep.eigen_error_kind == "Undecidable" ? exit_undecidable : exit_ok;
}

int run_cells(const Options& o, bool single, std::ostream& out, std::ostream& err) {
    AnalysisConfig cfg = make_config(o, single);
    if (single && cfg.relations.size() != 1) throw UsageError("bpa runs one cell; pass at most one --length");
    AnalysisReport rep = analyze(load(o.input), cfg);
    write_outputs(rep, o, out, err);
    return exit_code_for(rep);
}

/// Fixture sidecar: config for the cells plus expected results.
struct Fixture {
    AnalysisConfig config;
    json expect;
};

Fixture load_fixture(const fs::path& path, const Options& o) {
    json j = json::parse(read_file(path.string()));
    Fixture f;
    f.expect = j;
    PrefixSelection sel;
    if (j.contains("prefix")) sel.word = j["prefix"].get<std::string>();
    f.config.prefixes.push_back(sel);
    for (const auto& c : j.at("cells")) {
        RelationChoice rc;
        rc.mode = parse_mode(c.at("mode").get<std::string>());
        rc.length = c.contains("length") ? LengthSpec::parse(c["length"].get<std::string>()) : LengthSpec::ones();
        f.config.relations.push_back(rc);
    }
    f.config.budgets = make_budgets(o);
    if (j.contains("budgets")) {
        const auto& b = j["budgets"];
        if (b.contains("max_iterations")) f.config.budgets.max_iterations = b["max_iterations"].get<int>();
        if (b.contains("max_pairs")) f.config.budgets.max_pairs = b["max_pairs"].get<std::size_t>();
        if (b.contains("max_word_length")) f.config.budgets.max_word_length = b["max_word_length"].get<std::size_t>();
    }
    f.config.precision_bits = o.precision;
    return f;
}

std::string factor_label(const FactorReport& f) {
    std::string s = "(" + f.poly.to_string() + ")";
    if (f.multiplicity > 1) s += "^" + std::to_string(f.multiplicity);
    return s;
}

struct FixtureCheck {
    std::vector<std::string> fails;
    /// Reference values that are reported but tolerated.
    std::vector<std::string> soft;
};

FixtureCheck check_fixture(const AnalysisReport& rep, const json& ex) {
    FixtureCheck result;
    auto& fails = result.fails;
    const Substitution& phi = *rep.substitution;
    if (ex.contains("letter_classes")) {
        json got = json::array();
        for (const auto& cls : rep.letter_classes.classes) {
            json c = json::array();
            for (Letter a : cls) c.push_back(phi.token(a));
            got.push_back(c);
        }
        if (got != ex["letter_classes"]) fails.push_back("letter classes " + got.dump());
    }
    if (ex.contains("char_poly_factors")) {
        json got = json::array();
        if (rep.eigen)
            for (const auto& f : rep.eigen->factors) got.push_back(factor_label(f));
        if (got != ex["char_poly_factors"]) fails.push_back("factors " + got.dump());
    }
    if (ex.contains("l_lambda_integer_form")) {
        json got = json::array();
        if (rep.perron_integer_form)
            for (const auto& z : *rep.perron_integer_form) got.push_back(z.get_str());
        if (got != ex["l_lambda_integer_form"]) fails.push_back("integer L_lambda " + got.dump());
    }
    const auto& cells = ex.at("cells");
    for (std::size_t i = 0; i < cells.size() && i < rep.cells.size(); ++i) {
        const auto& e = cells[i];
        const CellReport& c = rep.cells[i];
        const std::string tag = "cell " + c.relation_label + ": ";
        if (c.error) {
            fails.push_back(tag + c.error_kind + ": " + *c.error);
            continue;
        }
        const BpaOutcome& o = *c.outcome;
        if (e.contains("outcome") && e["outcome"].get<std::string>() != (o.terminated ? "terminated" : "budget_exceeded"))
            fails.push_back(tag + "outcome " + (o.terminated ? "terminated" : "budget_exceeded"));
        if (e.contains("all_lead") && e["all_lead"].get<bool>() != c.all_lead())
            fails.push_back(tag + "all_lead " + (c.all_lead() ? "true" : "false"));
        if (e.contains("verdict") && e["verdict"].get<std::string>() != to_string(c.verdict.kind))
            fails.push_back(tag + "verdict " + to_string(c.verdict.kind));
        if (e.contains("pair_count") && e["pair_count"].get<std::size_t>() != o.pairs.size())
            fails.push_back(tag + "pair count " + std::to_string(o.pairs.size()));
        if (e.contains("closure_iteration") && e["closure_iteration"].get<int>() != o.closure_iteration)
            fails.push_back(tag + "closure iteration " + std::to_string(o.closure_iteration));
        if (e.contains("soft")) {
            const auto& s = e["soft"];
            std::size_t longest = o.longest.empty() ? 0 : o.longest.front().size();
            if (s.contains("pair_count") && s["pair_count"].get<std::size_t>() != o.pairs.size())
                result.soft.push_back(tag + "pair count " + std::to_string(o.pairs.size()) + " (reference " +
                                      std::to_string(s["pair_count"].get<std::size_t>()) + ")");
            if (s.contains("longest_word") && s["longest_word"].get<std::size_t>() != longest)
                result.soft.push_back(tag + "longest word " + std::to_string(longest) + " (reference " +
                                      std::to_string(s["longest_word"].get<std::size_t>()) + ")");
        }
    }
    if (cells.size() != rep.cells.size()) fails.push_back("cell count differs");
    if (!rep.corollary_consistent()) fails.push_back("corollary check failed");
    return result;
}

int run_batch(const Options& o, std::ostream& out, std::ostream& err) {
    if (!fs::is_directory(o.input)) throw UsageError("'" + o.input + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(o.input))
        if (entry.is_regular_file() && entry.path().extension() == ".sub") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no .sub files in '" + o.input + "'");
    if (o.json_path) fs::create_directories(*o.json_path);

    int code = exit_ok;
    std::size_t failed_files = 0;
    for (const auto& path : files) {
        fs::path sidecar = path;
        sidecar.replace_extension(".expect.json");
        const bool has_fixture = fs::exists(sidecar);
        try {
            std::optional<Fixture> fixture;
            if (has_fixture) fixture = load_fixture(sidecar, o);
            AnalysisConfig cfg = fixture ? fixture->config : make_config(o);
            AnalysisReport rep = analyze(load(path.string()), cfg);
            std::size_t terminated = 0;
            for (const auto& c : rep.cells) terminated += c.outcome && c.outcome->terminated;
            out << path.filename().string() << ": " << terminated << "/" << rep.cells.size() << " cells terminated";
            int file_code = exit_code_for(rep);
            if (fixture) {
                auto [fails, soft] = check_fixture(rep, fixture->expect);
                out << (fails.empty() ? ", expectations met\n" : ", EXPECTATIONS FAILED\n");
                for (const auto& f : fails) out << "  " << f << "\n";
                for (const auto& f : soft) out << "  soft mismatch: " << f << "\n";
                if (!fails.empty()) {
                    ++failed_files;
                    file_code = worse(file_code, exit_error);
                }
            } else {
                out << "\n";
            }
            code = worse(code, file_code);
            if (o.json_path) {
                RenderOptions ro;
                ro.timings = o.timings;
                fs::path target = fs::path(*o.json_path) / path.filename();
                target.replace_extension(".json");
                write_file(target.string(), render_json(rep, ro));
            }
        } catch (const Error& e) {
            err << path.filename().string() << ": " << e.what() << "\n";
            ++failed_files;
            code = worse(code, dynamic_cast<const InvariantViolation*>(&e) ? exit_internal
                               : dynamic_cast<const Undecidable*>(&e) ? exit_undecidable
                                                                        : exit_error);
        }
    }
    out << files.size() << " files, " << failed_files << " failed\n";
    return code;
}

}  // namespace

int exit_code_for(const AnalysisReport& report) {
    int code = report.any_budget_exceeded() ? exit_budget : exit_ok;
    if (report.eigen_error_kind == "Undecidable") code = worse(code, exit_undecidable);
    for (const auto& c : report.cells)
        if (c.error) code = worse(code, code_for_kind(c.error_kind));
    return code;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Balanced pair algorithm for substitution tilings"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    Options o;

    auto* info = app.add_subcommand("info", "matrix, spectrum, Perron-Frobenius data and letter classes");
    add_input(info, o, "rule file");
    add_report_options(info, o);

    auto* bpa = app.add_subcommand("bpa", "run the balanced pair algorithm for one prefix and relation");
    add_input(bpa, o, "rule file");
    add_run_options(bpa, o);
    add_report_options(bpa, o);

    auto* verdict = app.add_subcommand("verdict", "run every requested relation and apply the coincidence criterion");
    add_input(verdict, o, "rule file");
    add_run_options(verdict, o);
    add_report_options(verdict, o);

    auto* batch = app.add_subcommand("batch", "run verdict on every .sub file of a directory, checking .expect.json sidecars");
    add_input(batch, o, "directory");
    add_run_options(batch, o);
    add_report_options(batch, o);
    batch->get_option("--json")->description("directory for one JSON report per input");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (info->parsed()) return run_info(o, out, err);
        if (bpa->parsed()) return run_cells(o, true, out, err);
        if (verdict->parsed()) return run_cells(o, false, out, err);
        return run_batch(o, out, err);
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    } catch (const Undecidable& e) {
        err << "undecidable: " << e.what() << "\n";
        return exit_undecidable;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

}  // namespace balpair
