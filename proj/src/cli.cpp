#include "spdp/cli.hpp"

#include "spdp/errors.hpp"
#include "spdp/families.hpp"
#include "spdp/format.hpp"
#include "spdp/localwidth.hpp"
#include "spdp/pipeline.hpp"
#include "spdp/rank.hpp"
#include "spdp/verify.hpp"
#include "spdp/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace spdp {
namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t effective_budget(std::optional<std::size_t> flag_value) {
    if (flag_value) return *flag_value;
    if (const char* env = std::getenv("SPDP_BUDGET")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw ParseError("SPDP_BUDGET is not a number");
        }
    }
    return 5'000'000;
}

Convention parse_convention(const std::string& s) {
    if (s == "exact") return Convention::exact_kappa;
    if (s == "cumulative") return Convention::cumulative;
    throw ParseError("convention must be 'exact' or 'cumulative'");
}

struct SourceOptions {
    std::string poly_text;
    std::string family_json;
    std::string family_file;
    int n_override = 0;
    std::string mode; // "", "multilinear", "standard"
};

void add_source_options(CLI::App* cmd, SourceOptions& src) {
    cmd->add_option("--poly", src.poly_text, "polynomial in text form, e.g. 'x1*x2 + x2*x3'");
    cmd->add_option("--family", src.family_json, "family spec as inline JSON {kind, params, seed}");
    cmd->add_option("--family-file", src.family_file, "family spec JSON file");
    cmd->add_option("--n", src.n_override, "ambient variable count override for --poly");
    cmd->add_option("--mode", src.mode, "ring mode override for --poly: multilinear|standard")
        ->check(CLI::IsMember({"multilinear", "standard"}));
}

Polynomial resolve_source(const SourceOptions& src, std::string* family_name = nullptr) {
    int provided = (!src.poly_text.empty()) + (!src.family_json.empty()) + (!src.family_file.empty());
    if (provided != 1)
        throw ParseError("provide exactly one of --poly, --family, --family-file");
    if (!src.poly_text.empty()) {
        std::optional<int> n;
        if (src.n_override > 0) n = src.n_override;
        std::optional<RingMode> mode;
        if (src.mode == "multilinear") mode = RingMode::multilinear;
        if (src.mode == "standard") mode = RingMode::standard;
        if (family_name) *family_name = "custom";
        return parse_polynomial(src.poly_text, n, mode);
    }
    std::string json = !src.family_json.empty() ? src.family_json : read_file(src.family_file);
    FamilySpec spec = family_spec_from_json(json);
    if (family_name) *family_name = spec.name();
    return make_polynomial(spec);
}

nlohmann::ordered_json rank_report_json(const RankReport& report, const SpdpParams& params,
                                        const Polynomial& poly) {
    nlohmann::ordered_json j;
    j["tool"] = "spdp";
    j["version"] = kVersion;
    j["gamma"] = report.gamma;
    j["ambient_dim"] = report.ambient_dim;
    j["codim"] = report.codim;
    j["rows"] = report.row_count;
    j["cols"] = report.column_count;
    j["field"] = report.field_mode;
    j["config"] = {
        {"kappa", params.kappa},
        {"ell", params.ell},
        {"convention", convention_name(params.convention)},
        {"keep_zero_rows", params.keep_zero_rows},
        {"budget", params.column_budget},
        {"n_vars", poly.n_vars()},
        {"mode", poly.mode() == RingMode::multilinear ? "multilinear" : "standard"},
    };
    return j;
}

int cmd_rank(const SourceOptions& src, const SpdpParams& params, const std::string& field,
             const std::string& export_path, std::ostream& out) {
    Polynomial poly = resolve_source(src);
    RankReport report;
    if (field == "gfp") {
        auto mat = build_matrix(to_gfp(poly), params);
        report = rank(mat);
        if (!export_path.empty()) {
            std::ofstream f(export_path);
            export_matrix(mat, f);
        }
    } else {
        auto mat = build_matrix(poly, params);
        report = rank(mat);
        if (!export_path.empty()) {
            std::ofstream f(export_path);
            export_matrix(mat, f);
        }
    }
    out << rank_report_json(report, params, poly).dump(2) << "\n";
    return 0;
}

int cmd_sweep(const SourceOptions& src, SpdpParams params, const std::string& field,
              int kappa_min, int kappa_max, int ell_min, int ell_max,
              const std::string& permute, std::ostream& out) {
    Polynomial poly = resolve_source(src);
    if (!permute.empty()) {
        std::vector<int> perm;
        std::istringstream ps(permute);
        std::string tok;
        while (std::getline(ps, tok, ',')) perm.push_back(std::stoi(tok) - 1);
        poly = poly.permuted(perm);
    }
    if (kappa_min > kappa_max || ell_min > ell_max)
        throw ParseError("empty sweep range");
    out << "kappa,ell,gamma,ambient,codim\n";
    std::vector<std::vector<std::size_t>> grid;
    for (int k = kappa_min; k <= kappa_max; ++k) {
        std::vector<std::size_t> row;
        for (int l = ell_min; l <= ell_max; ++l) {
            params.kappa = k;
            params.ell = l;
            RankReport r = field == "gfp" ? codimension(to_gfp(poly), params)
                                          : codimension(poly, params);
            out << k << "," << l << "," << r.gamma << "," << r.ambient_dim << "," << r.codim
                << "\n";
            row.push_back(r.gamma);
        }
        grid.push_back(std::move(row));
    }
    // ell-monotonicity must hold along each row; a violation falsifies the
    // parameter-monotonicity property and is a hard error
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 1; j < grid[i].size(); ++j)
            if (grid[i][j - 1] > grid[i][j])
                throw PropertyViolation(
                    "ell-monotonicity violated at kappa=" + std::to_string(kappa_min + (int)i) +
                    ", ell=" + std::to_string(ell_min + (int)j - 1) + ": " +
                    std::to_string(grid[i][j - 1]) + " > " + std::to_string(grid[i][j]));
    if (params.convention == Convention::cumulative)
        for (std::size_t j = 0; !grid.empty() && j < grid[0].size(); ++j)
            for (std::size_t i = 1; i < grid.size(); ++i)
                if (grid[i - 1][j] > grid[i][j])
                    throw PropertyViolation("cumulative kappa-monotonicity violated at ell=" +
                                            std::to_string(ell_min + (int)j));
    return 0;
}

int cmd_pipeline(const std::string& spec_arg, const std::string& circuit_file,
                 const std::string& dimacs_file, PipelineParams params, std::uint64_t seed,
                 bool seed_given, const std::string& format, std::ostream& out) {
    std::vector<PipelineRun> runs;
    if (!circuit_file.empty()) {
        Circuit circuit = Circuit::parse(read_file(circuit_file));
        runs.push_back(run_pipeline(circuit, params, seed, "circuit:" + circuit_file));
    } else if (!dimacs_file.empty()) {
        Cnf cnf = parse_dimacs(read_file(dimacs_file));
        runs.push_back(run_pipeline(cnf, cnf.n_vars, params, seed, "dimacs:" + dimacs_file));
    } else if (!spec_arg.empty()) {
        std::string text;
        if (spec_arg == "table1_scaled") text = kTable1ScaledManifest;
        else if (spec_arg.front() == '{' || spec_arg.front() == '[') text = spec_arg;
        else text = read_file(spec_arg);
        for (const ManifestEntry& entry : parse_manifest(text)) {
            std::uint64_t run_seed = seed_given ? seed : entry.seed;
            runs.push_back(run_pipeline(entry.spec, params, run_seed));
        }
    } else {
        throw ParseError("provide one of --spec, --circuit, --dimacs");
    }

    if (format == "json") {
        if (runs.size() == 1) {
            out << pipeline_run_json(runs[0]) << "\n";
        } else {
            out << "[\n";
            for (std::size_t i = 0; i < runs.size(); ++i)
                out << pipeline_run_json(runs[i]) << (i + 1 < runs.size() ? "," : "") << "\n";
            out << "]\n";
        }
    } else if (format == "csv") {
        out << pipeline_csv_header() << "\n";
        for (const auto& run : runs) out << pipeline_csv_row(run) << "\n";
    } else { // human
        for (const auto& run : runs)
            out << run.family << ": n=" << run.n << " live=" << run.live_vars
                << " profiles=" << run.profiles << " rank=" << run.gamma
                << " threshold=" << run.threshold << " -> "
                << (run.pass ? "collapse" : "no collapse") << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& suite, int count, std::uint64_t seed, std::ostream& out) {
    std::vector<std::string> suites;
    if (suite == "all") suites = verify::suite_names();
    else suites.push_back(suite);
    bool all_ok = true;
    std::string first_failure;
    for (const auto& name : suites) {
        verify::SuiteResult r = verify::run_suite(name, count, seed);
        out << r.suite << ": checked " << r.checked << (r.ok ? ", ok" : ", FAILED") << "\n";
        if (!r.ok) {
            all_ok = false;
            if (first_failure.empty()) first_failure = r.counterexample;
            out << "  counterexample: " << r.counterexample << "\n";
        }
    }
    if (!all_ok) throw PropertyViolation(first_failure);
    return 0;
}

int cmd_family(const SourceOptions& src, const std::string& format, std::ostream& out) {
    std::string name;
    Polynomial poly = resolve_source(src, &name);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["tool"] = "spdp";
        j["version"] = kVersion;
        j["family"] = name;
        j["n_vars"] = poly.n_vars();
        j["mode"] = poly.mode() == RingMode::multilinear ? "multilinear" : "standard";
        j["degree"] = poly.degree();
        j["terms"] = poly.term_count();
        j["polynomial"] = print_polynomial(poly);
        out << j.dump(2) << "\n";
    } else {
        out << print_polynomial(poly) << "\n";
    }
    return 0;
}

int cmd_bound(const std::string& model_file, const std::vector<int>& profiles_args,
              const std::vector<std::string>& steps_args, const std::vector<int>& circuit_args,
              int c_gate, const std::vector<int>& realized_args, const std::string& subspace_json,
              int local_dim, std::ostream& out) {
    LocalModel model = model_file.empty() ? LocalModel::default_model()
                                          : LocalModel::from_json(read_file(model_file));
    nlohmann::ordered_json j;
    j["tool"] = "spdp";
    j["version"] = kVersion;
    j["model"] = {
        {"alphabet_size", model.alphabet().size()},
        {"rules", model.rules().size()},
        {"q", model.max_normal_form_length()},
        {"b", model.step_budget()},
        {"R", model.width()},
        {"sigma_leq_q", model.sigma_leq_q_count().str()},
    };
    if (!profiles_args.empty()) {
        if (profiles_args.size() != 2) throw ParseError("--profiles needs R and S'");
        j["count_profiles"] = count_profiles(profiles_args[0], profiles_args[1]).str();
    }
    if (!steps_args.empty()) {
        if (steps_args.size() != 2) throw ParseError("--steps needs T_step and kappa");
        j["kappa_step_sequences"] =
            count_kappa_step_sequences(Integer(steps_args[0]), std::stoi(steps_args[1])).str();
    }
    if (!circuit_args.empty()) {
        if (circuit_args.size() != 4) throw ParseError("--circuit-bound needs s n kappa ell");
        j["circuit_rank_bound"] = circuit_rank_bound(circuit_args[0], circuit_args[1],
                                                     circuit_args[2], circuit_args[3], c_gate)
                                      .str();
        j["c_gate"] = c_gate;
    }
    if (!realized_args.empty()) {
        if (realized_args.size() != 2) throw ParseError("--realized needs R and kappa");
        j["realized_profiles"] =
            realized_profile_count(model, realized_args[0], realized_args[1]).str();
    }
    if (!subspace_json.empty()) {
        nlohmann::json h = nlohmann::json::parse(subspace_json, nullptr, false);
        if (h.is_discarded() || !h.is_object())
            throw ParseError("--subspace expects a JSON histogram object");
        Profile profile;
        for (const auto& [word, cnt] : h.items()) profile.histogram[word] = cnt.get<int>();
        j["profile_subspace_dim"] = profile_subspace_dim(profile, {}, local_dim).str();
        j["local_dim"] = local_dim;
    }
    out << j.dump(2) << "\n";
    return 0;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spdp: shifted-partial-derivative matrices, exact ranks, and the collapse pipeline"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "build the SPDP matrix and report exact rank");
    SourceOptions rank_src;
    add_source_options(rank_cmd, rank_src);
    int rank_kappa = 1, rank_ell = 1;
    std::string rank_convention = "exact", rank_field = "q", rank_export;
    bool rank_drop_zero = false;
    std::optional<std::size_t> rank_budget;
    rank_cmd->add_option("--kappa", rank_kappa, "derivative order");
    rank_cmd->add_option("--ell", rank_ell, "shift degree bound");
    rank_cmd->add_option("--convention", rank_convention)->check(CLI::IsMember({"exact", "cumulative"}));
    rank_cmd->add_option("--field", rank_field)->check(CLI::IsMember({"q", "gfp"}));
    rank_cmd->add_option("--budget", rank_budget, "ambient column cap");
    rank_cmd->add_option("--export-matrix", rank_export, "write the sparse triplet matrix here");
    rank_cmd->add_flag("--drop-zero-rows", rank_drop_zero, "skip vanishing derivative rows");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "rank over a (kappa, ell) grid as CSV");
    SourceOptions sweep_src;
    add_source_options(sweep_cmd, sweep_src);
    int sw_kmin = 1, sw_kmax = 1, sw_lmin = 0, sw_lmax = 2;
    std::string sweep_convention = "exact", sweep_field = "q", sweep_permute;
    std::optional<std::size_t> sweep_budget;
    sweep_cmd->add_option("--kappa-min", sw_kmin);
    sweep_cmd->add_option("--kappa-max", sw_kmax);
    sweep_cmd->add_option("--ell-min", sw_lmin);
    sweep_cmd->add_option("--ell-max", sw_lmax);
    sweep_cmd->add_option("--convention", sweep_convention)
        ->check(CLI::IsMember({"exact", "cumulative"}));
    sweep_cmd->add_option("--field", sweep_field)->check(CLI::IsMember({"q", "gfp"}));
    sweep_cmd->add_option("--budget", sweep_budget);
    sweep_cmd->add_option("--permute", sweep_permute,
                          "variable renaming as comma list, e.g. 3,1,2");

    // pipeline
    auto* pipe_cmd = app.add_subcommand("pipeline", "run the circuit -> CNF -> window -> rank chain");
    std::string pipe_spec, pipe_circuit, pipe_dimacs, pipe_format = "json", pipe_field = "q";
    std::uint64_t pipe_seed = 0;
    PipelineParams pipe_params;
    int pipe_compress = -1;
    std::optional<std::size_t> pipe_budget;
    pipe_cmd->add_option("--spec", pipe_spec,
                         "family spec JSON, manifest file, or builtin name 'table1_scaled'");
    pipe_cmd->add_option("--circuit", pipe_circuit, "circuit DSL file");
    pipe_cmd->add_option("--dimacs", pipe_dimacs, "DIMACS CNF file");
    auto* pipe_seed_opt = pipe_cmd->add_option("--seed", pipe_seed, "run seed");
    pipe_cmd->add_option("--format", pipe_format)->check(CLI::IsMember({"json", "csv", "human"}));
    pipe_cmd->add_option("--cw", pipe_params.window_multiplier, "window budget multiplier c_w");
    pipe_cmd->add_option("--density", pipe_params.restriction_density, "restriction density");
    pipe_cmd->add_option("--kappa", pipe_params.kappa, "derivative order (0 = auto)");
    pipe_cmd->add_option("--ell", pipe_params.ell, "shift degree bound");
    pipe_cmd->add_option("--field", pipe_field)->check(CLI::IsMember({"q", "gfp"}));
    pipe_cmd->add_option("--compress", pipe_compress, "profile compression: 0 off, 1 on");
    pipe_cmd->add_option("--budget", pipe_budget);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a seeded property suite");
    std::string verify_suite;
    int verify_count = 100;
    std::uint64_t verify_seed = 20240001;
    verify_cmd->add_option("--suite", verify_suite, "monotonicity|invariance|blocked|permanent|profiles|oracle|all")
        ->required();
    verify_cmd->add_option("--count", verify_count, "random instances per suite");
    verify_cmd->add_option("--seed", verify_seed);

    // family
    auto* family_cmd = app.add_subcommand("family", "emit a family's polynomial");
    SourceOptions family_src;
    add_source_options(family_cmd, family_src);
    std::string family_format = "text";
    family_cmd->add_option("--format", family_format)->check(CLI::IsMember({"text", "json"}));

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "local-width counting and bound calculators");
    std::string bound_model, bound_subspace;
    std::vector<int> bound_profiles, bound_circuit, bound_realized;
    std::vector<std::string> bound_steps;
    int bound_cgate = 2, bound_local_dim = 4;
    bound_cmd->add_option("--model", bound_model, "local model JSON file (default: built-in)");
    bound_cmd->add_option("--profiles", bound_profiles, "R S' -> weak composition count")
        ->expected(2);
    bound_cmd->add_option("--steps", bound_steps, "T_step kappa -> ordered sequence bound")
        ->expected(2);
    bound_cmd->add_option("--circuit-bound", bound_circuit, "s n kappa ell")->expected(4);
    bound_cmd->add_option("--c-gate", bound_cgate, "per-gate exponent constant");
    bound_cmd->add_option("--realized", bound_realized, "R kappa -> realized profile count")
        ->expected(2);
    bound_cmd->add_option("--subspace", bound_subspace, "profile histogram JSON");
    bound_cmd->add_option("--local-dim", bound_local_dim, "default per-type local dimension");

    std::vector<std::string> argv_store = args;
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>("spdp"));
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            out << app.help();
            return 0;
        } catch (const CLI::CallForVersion&) {
            out << kVersion << "\n";
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << "\n";
            return static_cast<int>(ExitCode::parse_error);
        }

        if (rank_cmd->parsed()) {
            SpdpParams params;
            params.kappa = rank_kappa;
            params.ell = rank_ell;
            params.convention = parse_convention(rank_convention);
            params.keep_zero_rows = !rank_drop_zero;
            params.column_budget = effective_budget(rank_budget);
            return cmd_rank(rank_src, params, rank_field, rank_export, out);
        }
        if (sweep_cmd->parsed()) {
            SpdpParams params;
            params.convention = parse_convention(sweep_convention);
            params.column_budget = effective_budget(sweep_budget);
            return cmd_sweep(sweep_src, params, sweep_field, sw_kmin, sw_kmax, sw_lmin, sw_lmax,
                             sweep_permute, out);
        }
        if (pipe_cmd->parsed()) {
            pipe_params.field = pipe_field;
            if (pipe_compress == 0) pipe_params.compress_profiles = false;
            if (pipe_compress == 1) pipe_params.compress_profiles = true;
            pipe_params.column_budget = effective_budget(pipe_budget);
            return cmd_pipeline(pipe_spec, pipe_circuit, pipe_dimacs, pipe_params, pipe_seed,
                                !pipe_seed_opt->empty(), pipe_format, out);
        }
        if (verify_cmd->parsed()) return cmd_verify(verify_suite, verify_count, verify_seed, out);
        if (family_cmd->parsed()) return cmd_family(family_src, family_format, out);
        if (bound_cmd->parsed())
            return cmd_bound(bound_model, bound_profiles, bound_steps, bound_circuit, bound_cgate,
                             bound_realized, bound_subspace, bound_local_dim, out);
        err << "error: no subcommand\n";
        return static_cast<int>(ExitCode::parse_error);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::parse_error);
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::budget_exceeded);
    } catch (const PropertyViolation& e) {
        err << "property violation: " << e.what() << "\n";
        return static_cast<int>(ExitCode::property_violation);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::internal_error);
    }
}

} // namespace spdp
