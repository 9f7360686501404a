#include "netid/cli.hpp"

#include "netid/error.hpp"
#include "netid/generic.hpp"
#include "netid/io.hpp"
#include "netid/transfer.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>

namespace netid::cli {

namespace {

struct Options {
    std::string file;
    std::string model_file;
    std::optional<std::uint64_t> seed;
    bool as_json = false;

    // analyze
    std::optional<int> row;
    std::vector<int> module;
    std::string mode = "generic";
    bool assert_identifiable = false;

    // paths
    int target_row = 0;
    std::optional<int> exclude;

    // rank
    int trials = kDefaultTrials;
    bool symbolic = false;
};

// ---------------------------------------------------------------------------
// Report helpers

json node_labels(const std::vector<std::size_t>& nodes)
{
    json out = json::array();
    for (auto n : nodes)
        out.push_back(node_label(n));
    return out;
}

json signal_labels(const std::vector<ExternalSignal>& sigs)
{
    json out = json::array();
    for (const auto& s : sigs)
        out.push_back(s.label());
    return out;
}

std::string join(const json& labels, const char* sep = ", ")
{
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i)
        s += (i ? sep : "") + labels[i].get<std::string>();
    return s;
}

json paths_json(const StructureGraph& g, const DisjointPaths& d)
{
    json list = json::array();
    for (const auto& p : d.witness.paths) {
        json path = json::array();
        for (auto v : p)
            path.push_back(g.label(v));
        list.push_back(std::move(path));
    }
    return {{"count", d.count}, {"paths", std::move(list)}};
}

void print_paths(std::ostream& out, const json& paths, const std::string& indent)
{
    for (const auto& p : paths.at("paths"))
        out << indent << join(p, " -> ") << "\n";
}

json matrix_json(const Matrix<TransferFunction>& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(tf_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_matrix(std::ostream& out, const Matrix<TransferFunction>& m, const std::string& indent)
{
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << indent << "[";
        for (std::size_t c = 0; c < m.cols(); ++c)
            out << (c ? ", " : "") << m(r, c);
        out << "]\n";
    }
}

json violations_json(const std::vector<Violation>& vs)
{
    json out = json::array();
    for (const auto& v : vs)
        out.push_back({{"rule", v.rule}, {"location", v.location}, {"message", v.message}});
    return out;
}

const char* verdict_name(bool identifiable)
{
    return identifiable ? "identifiable" : "not-identifiable";
}

json witness_labels(const TcheckSpec& s, const RankResult& r)
{
    json out = json::array();
    for (auto pos : r.witness_rows)
        out.push_back(node_label(s.y[pos]));
    return out;
}

json witness_labels_without(const TcheckSpec& s, std::size_t removed_pos, const RankResult& r)
{
    json out = json::array();
    for (auto pos : r.witness_rows)
        out.push_back(node_label(s.y[pos < removed_pos ? pos : pos + 1]));
    return out;
}

json spec_json(const TcheckSpec& s)
{
    return {{"alpha", s.alpha}, {"beta", s.beta}, {"U", signal_labels(s.u)}, {"Y", node_labels(s.y)}};
}

json row_json(const StructureGraph& g, const PathRowVerdict& v)
{
    json d = spec_json(v.spec);
    d["row"] = v.row + 1;
    d["verdict"] = verdict_name(v.identifiable);
    d["parametrized_count"] = v.parametrized_count;
    d["count_limit"] = v.count_limit;
    d["paths"] = paths_json(g, v.paths);
    return d;
}

json row_json(const RowVerdict& v)
{
    json d = spec_json(v.spec);
    d["row"] = v.row + 1;
    d["verdict"] = verdict_name(v.identifiable);
    d["parametrized_count"] = v.parametrized_count;
    d["count_limit"] = v.count_limit;
    d["rank"] = v.rank.rank;
    d["witness_rows"] = witness_labels(v.spec, v.rank);
    d["T_check"] = matrix_json(v.tcheck);
    return d;
}

void print_row(std::ostream& out, const json& d)
{
    const int j = d.at("row").get<int>();
    out << "row " << j << ": " << d.at("verdict").get<std::string>() << "\n";
    out << "  U_" << j << " = {" << join(d.at("U")) << "}, Y_" << j << " = {" << join(d.at("Y")) << "}\n";
    out << "  alpha = " << d.at("alpha") << ", beta = " << d.at("beta") << ", parametrized entries "
        << d.at("parametrized_count") << " (limit K+p = " << d.at("count_limit") << ")\n";
    if (d.contains("paths")) {
        out << "  disjoint paths: " << d.at("paths").at("count") << "\n";
        print_paths(out, d.at("paths"), "    ");
    } else {
        out << "  rank(T_check) = " << d.at("rank") << ", independent rows {" << join(d.at("witness_rows")) << "}\n";
    }
}

// ---------------------------------------------------------------------------
// Commands

int emit(std::ostream& out, const json& report)
{
    out << report.dump(2) << "\n";
    return kOk;
}

ConcreteModel concrete_for(const NetworkModelSet& m, const Options& o, json& model_info)
{
    if (!o.model_file.empty()) {
        auto c = load_concrete_model(m, o.model_file);
        model_info = {{"source", "file"}, {"bindings", concrete_model_to_json(c).at("bindings")}};
        return c;
    }
    if (o.seed) {
        auto c = random_instantiate(m, *o.seed, 1);
        model_info = {{"source", "seed"}, {"seed", *o.seed}, {"bindings", concrete_model_to_json(c).at("bindings")}};
        return c;
    }
    throw InvalidInput("at-model analysis needs --model FILE or --seed N");
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto m = load_model_set(o.file);
    ValidationReport rep = validate_model_set(m);
    if (rep.passed && !o.model_file.empty())
        rep.merge(validate_concrete_model(load_concrete_model(m, o.model_file)));

    if (o.as_json) {
        emit(out, {{"command", "validate"},
                      {"passed", rep.passed},
                      {"violations", violations_json(rep.violations)},
                      {"warnings", violations_json(rep.warnings)}});
    } else {
        out << "model set: L=" << m.L << " K=" << m.K << " p=" << m.p << ", "
            << m.parameter_ids().size() << " parameters\n";
        for (const auto& v : rep.violations)
            out << "violation [" << v.rule << "] at " << v.location << ": " << v.message << "\n";
        for (const auto& v : rep.warnings)
            out << "warning [" << v.rule << "] at " << v.location << ": " << v.message << "\n";
        out << (rep.passed ? "validation passed" : "validation failed") << "\n";
    }
    if (!rep.passed) {
        err << "error: " << rep.violations.front().rule << " violated at " << rep.violations.front().location << "\n";
        return kInvalidInput;
    }
    return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto m = load_model_set(o.file);
    if (const auto rep = validate_model_set(m); !rep.passed) {
        const auto& v = rep.violations.front();
        throw InvalidInput("invalid model set: " + v.rule + " at " + v.location + ": " + v.message);
    }

    json report;
    report["command"] = "analyze";
    report["mode"] = o.mode;
    std::optional<std::size_t> row;
    std::optional<std::pair<std::size_t, std::size_t>> module;
    auto index = [&](int v, const char* what) {
        if (v < 1 || static_cast<std::size_t>(v) > m.L)
            throw InvalidInput(std::string(what) + " " + std::to_string(v) + " out of range 1.." + std::to_string(m.L));
        return static_cast<std::size_t>(v - 1);
    };
    if (o.row) {
        row = index(*o.row, "row");
        report["scope"] = {{"kind", "row"}, {"row", *o.row}};
    } else if (!o.module.empty()) {
        module = std::make_pair(index(o.module[0], "row"), index(o.module[1], "column"));
        if (!is_parametrized(m.G(module->first, module->second)))
            throw NotParametrized("G(" + std::to_string(o.module[0]) + "," + std::to_string(o.module[1]) + ") is not parametrized");
        report["scope"] = {{"kind", "module"}, {"row", o.module[0]}, {"col", o.module[1]}};
    } else {
        report["scope"] = {{"kind", "full"}};
    }

    std::ostringstream text;
    bool identifiable = false;
    try {
        if (o.mode == "generic") {
            const auto g = build_graph(m);
            if (row) {
                const auto v = check_row_generic(m, *row);
                identifiable = v.identifiable;
                report["details"] = row_json(g, v);
                print_row(text, report["details"]);
            } else if (module) {
                const auto v = check_module_generic(m, module->first, module->second);
                identifiable = v.identifiable;
                std::vector<std::size_t> reduced;
                for (auto y : v.spec.y)
                    if (y != module->second)
                        reduced.push_back(y);
                json d = spec_json(v.spec);
                d["Y_reduced"] = node_labels(reduced);
                d["paths"] = paths_json(g, v.full);
                d["paths_reduced"] = paths_json(g, v.reduced);
                report["details"] = d;
                text << "module G" << o.module[0] << "," << o.module[1] << ": " << verdict_name(identifiable) << "\n"
                     << "  U = {" << join(d["U"]) << "}, Y = {" << join(d["Y"]) << "}, Y without w" << o.module[1]
                     << " = {" << join(d["Y_reduced"]) << "}\n"
                     << "  disjoint paths to Y: " << v.full.count << "\n";
                print_paths(text, d["paths"], "    ");
                text << "  disjoint paths to Y without w" << o.module[1] << ": " << v.reduced.count << "\n";
                print_paths(text, d["paths_reduced"], "    ");
            } else {
                const auto v = check_full_generic(m);
                identifiable = v.identifiable;
                json rows = json::array();
                for (const auto& r : v.rows)
                    rows.push_back(row_json(g, r));
                report["details"] = {{"rows", rows}};
                text << "network: " << verdict_name(identifiable) << "\n";
                for (const auto& r : rows)
                    print_row(text, r);
            }
        } else {
            json model_info;
            const auto c = concrete_for(m, o, model_info);
            report["model"] = model_info;
            require_analyzable(c);
            if (row) {
                const auto v = check_row_at(c, *row);
                identifiable = v.identifiable;
                report["details"] = row_json(v);
                print_row(text, report["details"]);
                text << "  T_check:\n";
                print_matrix(text, v.tcheck, "    ");
            } else if (module) {
                const auto v = check_module_at(c, module->first, module->second);
                identifiable = v.identifiable;
                const std::size_t pos = v.spec.position_of(module->second);
                json d = spec_json(v.spec);
                d["rank"] = v.rank_full.rank;
                d["rank_reduced"] = v.rank_reduced.rank;
                d["witness_rows"] = witness_labels(v.spec, v.rank_full);
                d["witness_rows_reduced"] = witness_labels_without(v.spec, pos, v.rank_reduced);
                d["T_check"] = matrix_json(v.tcheck);
                report["details"] = d;
                text << "module G" << o.module[0] << "," << o.module[1] << ": " << verdict_name(identifiable) << "\n"
                     << "  rank(T_check) = " << v.rank_full.rank << ", rank without row w" << o.module[1] << " = "
                     << v.rank_reduced.rank << "\n"
                     << "  T_check (rows " << join(d["Y"]) << "; columns " << join(d["U"]) << "):\n";
                print_matrix(text, v.tcheck, "    ");
            } else {
                const auto v = check_full_at(c);
                identifiable = v.identifiable;
                json rows = json::array();
                for (const auto& r : v.rows)
                    rows.push_back(row_json(r));
                report["details"] = {{"rows", rows}};
                text << "network: " << verdict_name(identifiable) << "\n";
                for (const auto& r : rows)
                    print_row(text, r);
            }
        }
    } catch (const PreconditionFailed& e) {
        report["verdict"] = "precondition-failed";
        report["details"] = {{"message", e.what()}};
        if (o.as_json)
            emit(out, report);
        else
            out << "precondition failed: " << e.what() << "\n";
        err << "error: " << e.what() << "\n";
        return kPreconditionFailed;
    }

    report["verdict"] = verdict_name(identifiable);
    if (o.as_json)
        emit(out, report);
    else
        out << text.str();
    if (o.assert_identifiable && !identifiable) {
        err << "assertion failed: not identifiable\n";
        return kAssertionFailed;
    }
    return kOk;
}

int cmd_paths(const Options& o, std::ostream& out, std::ostream&)
{
    const auto m = load_model_set(o.file);
    if (const auto rep = validate_model_set(m); !rep.passed)
        throw InvalidInput("invalid model set: " + rep.violations.front().rule);
    if (o.target_row < 1 || static_cast<std::size_t>(o.target_row) > m.L)
        throw InvalidInput("target row " + std::to_string(o.target_row) + " out of range 1.." + std::to_string(m.L));
    const std::size_t j = static_cast<std::size_t>(o.target_row - 1);
    const auto spec = tcheck_spec(m, j);
    std::vector<std::size_t> targets = spec.y;
    if (o.exclude) {
        if (*o.exclude < 1 || static_cast<std::size_t>(*o.exclude) > m.L)
            throw InvalidInput("excluded node " + std::to_string(*o.exclude) + " out of range");
        const std::size_t i = static_cast<std::size_t>(*o.exclude - 1);
        targets.erase(targets.begin() + static_cast<std::ptrdiff_t>(spec.position_of(i)));
    }
    const auto g = build_graph(m);
    std::vector<std::size_t> sources;
    for (const auto& s : spec.u)
        sources.push_back(g.external(s));
    const auto d = max_disjoint_paths(g, sources, targets);
    const json pj = paths_json(g, d);

    if (o.as_json) {
        json report = {{"command", "paths"}, {"row", o.target_row}, {"U", signal_labels(spec.u)},
            {"targets", node_labels(targets)}, {"paths", pj}};
        if (o.exclude)
            report["exclude"] = *o.exclude;
        return emit(out, report);
    }
    const std::string ybar = o.exclude ? "Y_" + std::to_string(o.target_row) + " without w" + std::to_string(*o.exclude)
                                       : "Y_" + std::to_string(o.target_row);
    out << "U_" << o.target_row << " = {" << join(signal_labels(spec.u)) << "}\n"
        << ybar << " = {" << join(node_labels(targets)) << "}\n"
        << "max disjoint paths: " << d.count << "\n";
    print_paths(out, pj, "  ");
    return kOk;
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream&)
{
    const auto m = load_model_set(o.file);
    if (const auto rep = validate_model_set(m); !rep.passed)
        throw InvalidInput("invalid model set: " + rep.violations.front().rule);
    if (o.target_row < 1 || static_cast<std::size_t>(o.target_row) > m.L)
        throw InvalidInput("row " + std::to_string(o.target_row) + " out of range 1.." + std::to_string(m.L));
    const std::size_t j = static_cast<std::size_t>(o.target_row - 1);
    const auto spec = tcheck_spec(m, j);

    json report = {{"command", "rank"}, {"row", o.target_row}, {"alpha", spec.alpha},
        {"U", signal_labels(spec.u)}, {"Y", node_labels(spec.y)}};
    std::size_t rank = 0;
    if (o.symbolic) {
        json model_info;
        const auto c = concrete_for(m, o, model_info);
        require_analyzable(c);
        const auto r = rank_symbolic(extract_tcheck(compute_transfer(c), spec));
        rank = r.rank;
        report["method"] = "symbolic";
        report["model"] = model_info;
        report["witness_rows"] = witness_labels(spec, r);
    } else {
        const std::uint64_t seed = o.seed.value_or(1);
        rank = randomized_generic_rank(m, spec.y, spec.u, o.trials, seed);
        report["method"] = "randomized";
        report["trials"] = o.trials;
        report["seed"] = seed;
    }
    report["rank"] = rank;
    if (o.as_json)
        return emit(out, report);
    out << "row " << o.target_row << ": rank(T_check) = " << rank << " (" << report["method"].get<std::string>()
        << "), alpha = " << spec.alpha << "\n";
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Identifiability analysis of linear dynamic network model sets", "netid"};
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "Check a network description file");
    validate->add_option("file", o.file, "Network description (JSON)")->required();
    validate->add_option("--model", o.model_file, "Also validate a concrete-model file");
    validate->add_flag("--json", o.as_json, "Machine-readable report");

    auto* analyze = app.add_subcommand("analyze", "Decide identifiability of the network, a row or a module");
    analyze->add_option("file", o.file, "Network description (JSON)")->required();
    auto* row_opt = analyze->add_option("--row", o.row, "Analyze row J");
    auto* module_opt = analyze->add_option("--module", o.module, "Analyze module G_JI")->expected(2)->type_name("J I");
    row_opt->excludes(module_opt);
    analyze->add_option("--mode", o.mode, "generic or at-model")->check(CLI::IsMember({"generic", "at-model"}));
    analyze->add_option("--model", o.model_file, "Concrete-model file for at-model mode");
    analyze->add_option("--seed", o.seed, "Random instantiation seed for at-model mode");
    analyze->add_flag("--json", o.as_json, "Machine-readable report");
    analyze->add_flag("--assert", o.assert_identifiable, "Exit 3 unless identifiable");

    auto* paths = app.add_subcommand("paths", "List a maximum family of disjoint paths into row J");
    paths->add_option("file", o.file, "Network description (JSON)")->required();
    paths->add_option("--target-row", o.target_row, "Row J")->required();
    paths->add_option("--exclude", o.exclude, "Drop node I from the target set");
    paths->add_flag("--json", o.as_json, "Machine-readable report");

    auto* rank = app.add_subcommand("rank", "Rank of the reduced transfer matrix of row J");
    rank->add_option("file", o.file, "Network description (JSON)")->required();
    rank->add_option("--row", o.target_row, "Row J")->required();
    rank->add_option("--trials", o.trials, "Random trials")->check(CLI::PositiveNumber);
    rank->add_option("--seed", o.seed, "Seed");
    rank->add_flag("--symbolic", o.symbolic, "Exact rank at a concrete model (--model or --seed)");
    rank->add_option("--model", o.model_file, "Concrete-model file");
    rank->add_flag("--json", o.as_json, "Machine-readable report");

    std::vector<std::string> argv_store{"netid"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (*validate)
            return cmd_validate(o, out, err);
        if (*analyze)
            return cmd_analyze(o, out, err);
        if (*paths)
            return cmd_paths(o, out, err);
        return cmd_rank(o, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kPreconditionFailed;
    }
}

} // namespace netid::cli
