#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "hornlog/classify.hpp"
#include "hornlog/engine.hpp"
#include "hornlog/errors.hpp"
#include "hornlog/facts.hpp"
#include "hornlog/lexer.hpp"
#include "hornlog/parser.hpp"
#include "hornlog/printer.hpp"
#include "hornlog/transform.hpp"

namespace hornlog::cli {

namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Text, Json };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParsedTheory load_theory(const std::string& path, std::ostream& err) {
    const auto text = read_file(path);
    try {
        auto parsed = parse_theory_with_diagnostics(text);
        for (const auto& w : parsed.warnings)
            err << "warning: " << path << ':' << w.loc.line << ':' << w.loc.column << ": " << w.message << '\n';
        return parsed;
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    }
}

Structure load_facts(const std::string& path, SignaturePtr sig) {
    const auto text = read_file(path);
    try {
        return parse_facts(text, std::move(sig));
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    }
}

bool has_functions(const Signature& sig) {
    for (const auto& r : sig.relations())
        if (r.is_function()) return true;
    return false;
}

/// Theories that mention function symbols are read as partial Horn logic.
bool is_partial(const Theory& t) { return has_functions(*t.sig) || !is_rhl(t); }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::string>& words, const char* sep) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += sep;
        out += w;
    }
    return out;
}

// ---------------------------------------------------------------------------
// check

std::vector<std::string> flag_words(const SequentFlags& f, bool partial) {
    std::vector<std::string> w;
    if (partial) {
        w.push_back("phl");
        w.push_back(f.epic_phl ? "epic" : "not epic");
        if (f.is_rhl) w.push_back("rhl");
    } else if (f.datalog) {
        w.push_back("datalog");
    } else if (f.datalog_sortquant) {
        w.push_back("datalog with sort quantification");
    } else if (f.datalog_choice) {
        w.push_back("datalog with choice");
    }
    if (f.surjective) w.push_back("surjective");
    if (f.injective) w.push_back("injective");
    if (w.empty()) w.push_back("no flags");
    return w;
}

int cmd_check(const std::string& path, Format format, std::ostream& out, std::ostream& err) {
    const auto parsed = load_theory(path, err);
    const auto& t = parsed.theory;
    const bool partial = is_partial(t);
    bool all_surjective = true, all_epic = true, pure_datalog = true;
    Json rules = Json::array();
    std::vector<std::string> warnings;
    std::ostringstream text;
    for (std::size_t i = 0; i < t.sequents.size(); ++i) {
        const auto& s = t.sequents[i];
        const auto flags = classify_sequent(s, *t.sig);
        all_surjective = all_surjective && flags.surjective;
        all_epic = all_epic && flags.epic_phl;
        pure_datalog = pure_datalog && flags.datalog;
        const auto words = flag_words(flags, partial);
        if (partial && !flags.epic_phl) {
            std::vector<std::string> names;
            for (const auto& v : conclusion_only_variables(s)) names.push_back(v.name);
            warnings.push_back("rule " + std::to_string(i + 1) + " is not epic: conclusion-only variables " +
                               join(names, ", "));
        }
        const auto printed = print_sequent(s, *t.sig);
        text << "rule " << i + 1 << " (line " << s.loc.line << "): " << printed << "\n  " << join(words, ", ") << '\n';
        rules.push_back({{"index", i + 1},
                         {"line", s.loc.line},
                         {"text", printed},
                         {"flags",
                          {{"rhl", flags.is_rhl},
                           {"surjective", flags.surjective},
                           {"injective", flags.injective},
                           {"epic", flags.epic_phl},
                           {"datalog", flags.datalog},
                           {"datalog_sortquant", flags.datalog_sortquant},
                           {"datalog_choice", flags.datalog_choice}}},
                         {"words", words}});
    }
    if (format == Format::Json) {
        Json doc = {{"logic", partial ? "phl" : "rhl"},
                    {"rules", rules},
                    {"summary", {{"all_surjective", all_surjective}, {"all_epic", all_epic}, {"pure_datalog", pure_datalog}}},
                    {"warnings", warnings}};
        out << doc.dump(2) << '\n';
        return kOk;
    }
    out << text.str();
    for (const auto& w : warnings) out << "warning: " << w << '\n';
    out << "summary: all surjective: " << yes_no(all_surjective) << "; all epic: " << yes_no(all_epic)
        << "; pure datalog: " << yes_no(pure_datalog) << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// eval

Json facts_json(const Structure& x, const Signature& display) {
    const auto names = display_names(x);
    Json sorts = Json::object();
    for (SortId s = 0; s < display.sort_count(); ++s) {
        Json elems = Json::array();
        for (auto e : x.canonical_elements(s)) elems.push_back(names[s][e]);
        sorts[display.sort_name(s)] = elems;
    }
    Json relations = Json::object();
    for (RelId r = 0; r < display.relation_count(); ++r) {
        const auto& arity = display.rel(r).arity;
        Json tuples = Json::array();
        for (const auto& t : x.tuples(r)) {
            Json row = Json::array();
            for (std::size_t i = 0; i < t.size(); ++i) row.push_back(names[arity[i]][t[i]]);
            tuples.push_back(row);
        }
        relations[display.rel(r).name] = tuples;
    }
    Json merged = Json::array();
    for (const auto& m : merged_names(x, names)) merged.push_back({m.loser, m.survivor});
    return {{"sorts", sorts}, {"relations", relations}, {"merged", merged}};
}

Json report_json(const EvalReport& report) {
    Json rounds = Json::array();
    for (const auto& s : report.per_iteration)
        rounds.push_back({{"matches_found", s.matches_found},
                          {"matches_fired", s.matches_fired},
                          {"tuples_added", s.tuples_added},
                          {"merges", s.merges},
                          {"elements_created", s.elements_created}});
    return {{"iterations", report.iterations()},
            {"fixed_point", report.fixed_point},
            {"per_iteration", rounds},
            {"warnings", report.warnings}};
}

void write_report(const EvalReport& report, std::ostream& out) {
    out << "# iterations: " << report.iterations() << '\n';
    out << "# fixed point: " << yes_no(report.fixed_point) << '\n';
    for (std::size_t i = 0; i < report.per_iteration.size(); ++i) {
        const auto& s = report.per_iteration[i];
        out << "# iteration " << i + 1 << ": matches " << s.matches_found << ", fired " << s.matches_fired
            << ", tuples " << s.tuples_added << ", merges " << s.merges << ", elements " << s.elements_created << '\n';
    }
    for (const auto& w : report.warnings) out << "# warning: " << w << '\n';
}

struct EvalOptions {
    std::optional<std::size_t> max_iterations;
    std::string strategy = "seminaive";
    bool report = false;
    bool emit_partial = false;
    bool strict = false;
};

void emit_model(const Structure& x, const Signature& display, const EvalReport& report, const EvalOptions& opts,
                Format format, std::ostream& out) {
    if (format == Format::Json) {
        Json doc = facts_json(x, display);
        if (opts.report) doc["report"] = report_json(report);
        out << doc.dump(2) << '\n';
        return;
    }
    out << write_facts(x, display);
    if (opts.report) write_report(report, out);
}

int cmd_eval(const std::string& theory_path, const std::string& facts_path, const EvalOptions& opts, Format format,
             std::ostream& out, std::ostream& err) {
    const auto parsed = load_theory(theory_path, err);
    const auto& t = parsed.theory;
    const bool partial = is_partial(t);
    const auto x = load_facts(facts_path, t.sig);
    bool epic = true;
    for (const auto& s : t.sequents) epic = epic && classify_sequent(s, *t.sig).epic_phl;

    EvalConfig cfg;
    cfg.max_iterations = opts.max_iterations;
    cfg.strategy = opts.strategy == "naive" ? Strategy::Naive : Strategy::Seminaive;
    cfg.strictness = opts.strict ? Strictness::Error : Strictness::Warn;
    cfg.epic_origin = partial && epic;
    if (partial && !epic) {
        const std::string msg = "theory is not epic; the result is only weakly free";
        if (opts.strict) throw PreconditionError(msg);
        err << "warning: " << msg << '\n';
    }
    try {
        auto result = evaluate(partial ? to_rhl(t) : t, x, cfg);
        if (!opts.report)
            for (const auto& w : result.report.warnings) err << "warning: " << w << '\n';
        emit_model(*result.model, *t.sig, result.report, opts, format, out);
        return kOk;
    } catch (const BudgetExhausted& e) {
        if (!opts.report)
            for (const auto& w : e.report().warnings) err << "warning: " << w << '\n';
        err << "error: no fixed point after " << e.report().iterations() << " iterations\n";
        if (opts.emit_partial) emit_model(e.partial(), *t.sig, e.report(), opts, format, out);
        return kBudgetExhausted;
    }
}

// ---------------------------------------------------------------------------
// satisfies

int cmd_satisfies(const std::string& theory_path, const std::string& facts_path, Format format, std::ostream& out,
                  std::ostream& err) {
    const auto parsed = load_theory(theory_path, err);
    const auto& t = parsed.theory;
    const bool partial = is_partial(t);
    const auto x = load_facts(facts_path, t.sig);
    if (partial && !is_algebraic(x)) throw InputError(facts_path + ": facts do not describe partial functions");
    const auto names = display_names(x);
    bool all = true;
    Json rules = Json::array();
    for (std::size_t i = 0; i < t.sequents.size(); ++i) {
        const auto& original = t.sequents[i];
        const auto s = partial ? flatten_sequent(original) : original;
        const auto cex = first_counterexample(x, s);
        Json rule = {{"index", i + 1}, {"satisfied", !cex}};
        if (!cex) {
            if (format == Format::Text) out << "rule " << i + 1 << ": ok\n";
            rules.push_back(rule);
            continue;
        }
        all = false;
        const auto shown = variable_names(original.premise);
        const auto q = compile(s);
        Json assignment = Json::object();
        std::vector<std::string> parts;
        for (std::size_t k = 0; k < q.premise_vars; ++k) {
            const auto& v = q.variables[k];
            if (!shown.count(v.name)) continue;
            const auto& value = names[v.sort][cex->values[k]];
            assignment[v.name] = value;
            parts.push_back(v.name + "=" + value);
        }
        rule["counterexample"] = assignment;
        rules.push_back(rule);
        if (format == Format::Text) out << "rule " << i + 1 << ": fails at " << join(parts, ", ") << '\n';
    }
    if (format == Format::Json)
        out << Json{{"satisfied", all}, {"rules", rules}}.dump(2) << '\n';
    else
        out << "satisfied: " << yes_no(all) << '\n';
    return all ? kOk : kUnsatisfied;
}

// ---------------------------------------------------------------------------
// flatten and transform

int cmd_flatten(const std::string& path, bool functionality, std::ostream& out, std::ostream& err) {
    const auto parsed = load_theory(path, err);
    out << print_theory(functionality ? to_rhl(parsed.theory) : flatten_theory(parsed.theory));
    return kOk;
}

int cmd_transform(const std::string& kind, const std::string& path, std::ostream& out, std::ostream& err) {
    const auto parsed = load_theory(path, err);
    const auto& t = parsed.theory;
    if (is_partial(t)) throw InputError("transform " + kind + " needs a relational theory");
    Theory result;
    if (kind == "setoid")
        result = setoid_transform(t);
    else if (kind == "sparse-setoid")
        result = sparse_setoid_transform(t);
    else if (kind == "epic")
        result = epic_transform(t);
    else
        result = strengthen_theory(t);
    out << print_theory(result);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Horn logic with equality: classify, transform and evaluate theories", "hornlog"};
    app.require_subcommand(1);

    std::string theory_path, facts_path, kind, format_name = "text";
    EvalOptions eval_opts;
    bool functionality = false;
    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto* check = app.add_subcommand("check", "Classify every rule of a theory");
    check->add_option("theory", theory_path)->required();
    add_format(check);

    auto* eval = app.add_subcommand("eval", "Evaluate a theory on a facts file to a fixed point");
    eval->add_option("theory", theory_path)->required();
    eval->add_option("facts", facts_path)->required();
    eval->add_option("--max-iterations", eval_opts.max_iterations, "Round budget")->check(CLI::PositiveNumber);
    eval->add_option("--strategy", eval_opts.strategy)->check(CLI::IsMember({"naive", "seminaive"}));
    eval->add_flag("--report", eval_opts.report, "Append evaluation statistics");
    eval->add_flag("--emit-partial", eval_opts.emit_partial, "Print the partial model when the budget runs out");
    eval->add_flag("--strict", eval_opts.strict, "Refuse theories whose result is only weakly free");
    add_format(eval);

    auto* sat = app.add_subcommand("satisfies", "Check whether a facts file is a model of a theory");
    sat->add_option("theory", theory_path)->required();
    sat->add_option("facts", facts_path)->required();
    add_format(sat);

    auto* flatten = app.add_subcommand("flatten", "Rewrite nested terms into graph atoms");
    flatten->add_option("theory", theory_path)->required();
    flatten->add_flag("--functionality", functionality, "Append the functionality rules");

    auto* transform = app.add_subcommand("transform", "Compile a relational theory into another theory");
    transform->add_option("kind", kind)->required()->check(CLI::IsMember({"setoid", "sparse-setoid", "epic", "strengthen"}));
    transform->add_option("theory", theory_path)->required();

    std::vector<const char*> argv{"hornlog"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    const Format format = format_name == "json" ? Format::Json : Format::Text;
    try {
        if (*check) return cmd_check(theory_path, format, out, err);
        if (*eval) return cmd_eval(theory_path, facts_path, eval_opts, format, out, err);
        if (*sat) return cmd_satisfies(theory_path, facts_path, format, out, err);
        if (*flatten) return cmd_flatten(theory_path, functionality, out, err);
        return cmd_transform(kind, theory_path, out, err);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const SignatureError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
    }
    return kInputError;
}

}  // namespace hornlog::cli
