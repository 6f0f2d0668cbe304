// =============================================================================
// main.cpp — moransweep command line tool.
//
// Subcommands:
//   simulate  Monte Carlo estimates of the fixation weight per N
//   recur     per-k recurrence tables (float or exact rational)
//   asym      convergence and bounds summary per N
//   compare   Monte Carlo vs exact vs predicted, with |z| <= 3 gates
//   validate  full cross-validation suite, one PASS/FAIL line per check
//
// Exit codes: 0 success, 1 gate/run failure, 2 usage error, 3 resource limit.
// =============================================================================
#include <CLI11.hpp>

#include "moran/asymptotics.hpp"
#include "moran/io.hpp"
#include "moran/population.hpp"
#include "moran/rational.hpp"
#include "moran/recurrence.hpp"
#include "moran/simulate.hpp"
#include "moran/stats.hpp"
#include "moran/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Options {
    std::vector<long long> n_list;
    long long reps = 100000;
    std::uint64_t seed = 42;
    std::string estimator = "weights";  // weights | gene_drop | both
    std::string mode = "float";         // float | rational
    std::string out;
    std::string format = "csv";
    std::string only;
    bool dry_run = false;
    int threads = 0;
    double c_value = 1.0;
    long long rational_max_n = 2000;
    long long rational_bit_budget = 1 << 22;
    long long conditional_trials = 100000;
    long long coupling_reps = 30000;
};

std::vector<moran::Estimator> estimators_from(const std::string& name) {
    if (name == "weights") return {moran::Estimator::weights};
    if (name == "gene_drop") return {moran::Estimator::gene_drop};
    if (name == "both") return {moran::Estimator::weights, moran::Estimator::gene_drop};
    throw CLI::ValidationError("--estimator", "expected weights, gene_drop or both");
}

const char* estimator_name(moran::Estimator estimator) {
    return estimator == moran::Estimator::weights ? "weights" : "gene_drop";
}

void emit(const moran::Table& table, const Options& options) {
    const std::string content = moran::render_table(table, options.format);
    if (options.out.empty() || options.out == "-")
        std::cout << content;
    else
        moran::save_text_file(options.out, content);
}

std::string join_n(const std::vector<long long>& ns) {
    std::string out;
    for (const auto n : ns) {
        if (!out.empty()) out += ",";
        out += std::to_string(n);
    }
    return out;
}

moran::TableMeta make_meta(const std::string& command, const Options& options,
                           std::initializer_list<std::pair<std::string, std::string>> extra) {
    moran::TableMeta meta;
    meta.command = command;
    meta.config.emplace_back("n", join_n(options.n_list));
    for (const auto& kv : extra) meta.config.push_back(kv);
    meta.config.emplace_back("seed", std::to_string(options.seed));
    return meta;
}

int cmd_simulate(Options& options) {
    std::sort(options.n_list.begin(), options.n_list.end());
    const auto estimators = estimators_from(options.estimator);
    if (options.dry_run) {
        for (const auto n : options.n_list)
            for (const auto estimator : estimators)
                std::cout << "plan: simulate N=" << n << " reps=" << options.reps
                          << " estimator=" << estimator_name(estimator)
                          << " seed=" << options.seed << "\n";
        return kExitOk;
    }
    moran::Table table;
    table.meta = make_meta("simulate", options,
                           {{"reps", std::to_string(options.reps)},
                            {"estimator", options.estimator}});
    table.header = {"n",        "n_reps",  "estimator", "mean",   "variance",
                    "std_error", "ci_low", "ci_high",   "seed"};
    for (const auto n : options.n_list) {
        moran::PopulationConfig config;
        config.size = n;
        for (const auto estimator : estimators) {
            const moran::SampleStats stats = moran::replicate(
                config, options.reps, options.seed, estimator, options.threads);
            table.rows.push_back({std::to_string(n), std::to_string(stats.n_reps),
                                  estimator_name(estimator), moran::format_double(stats.mean),
                                  moran::format_double(stats.variance),
                                  moran::format_double(stats.std_error),
                                  moran::format_double(stats.ci_low),
                                  moran::format_double(stats.ci_high),
                                  std::to_string(options.seed)});
        }
    }
    emit(table, options);
    return kExitOk;
}

int cmd_recur(Options& options) {
    std::sort(options.n_list.begin(), options.n_list.end());
    const bool rational = options.mode == "rational";
    if (!rational && options.mode != "float")
        throw CLI::ValidationError("--mode", "expected float or rational");
    if (options.dry_run) {
        for (const auto n : options.n_list)
            std::cout << "plan: recur N=" << n << " mode=" << options.mode << "\n";
        return kExitOk;
    }
    moran::Table table;
    table.meta = make_meta("recur", options, {{"mode", options.mode}});
    table.header = {"n", "k", "u", "v", "u_tilde", "v_tilde", "x"};
    if (rational)
        for (const char* column :
             {"u_exact", "v_exact", "u_tilde_exact", "v_tilde_exact", "x_exact"})
            table.header.emplace_back(column);
    for (const auto n : options.n_list) {
        if (rational) {
            moran::RationalLimits limits;
            limits.max_n = options.rational_max_n;
            limits.max_bits = static_cast<std::size_t>(options.rational_bit_budget);
            const auto rows = moran::iterate_uv_rational(n, limits);
            for (const auto& row : rows)
                table.rows.push_back(
                    {std::to_string(n), std::to_string(row.k),
                     moran::format_double(moran::to_double(row.u)),
                     moran::format_double(moran::to_double(row.v)),
                     moran::format_double(moran::to_double(row.u_tilde)),
                     moran::format_double(moran::to_double(row.v_tilde)),
                     moran::format_double(moran::to_double(row.x)),
                     moran::fraction_string(row.u), moran::fraction_string(row.v),
                     moran::fraction_string(row.u_tilde), moran::fraction_string(row.v_tilde),
                     moran::fraction_string(row.x)});
        } else {
            const auto rows = moran::iterate_uv(n);
            for (const auto& row : rows)
                table.rows.push_back({std::to_string(n), std::to_string(row.k),
                                      moran::format_double(row.u), moran::format_double(row.v),
                                      moran::format_double(row.u_tilde),
                                      moran::format_double(row.v_tilde),
                                      moran::format_double(row.x)});
        }
    }
    emit(table, options);
    return kExitOk;
}

int cmd_asym(Options& options) {
    std::sort(options.n_list.begin(), options.n_list.end());
    if (options.dry_run) {
        for (const auto n : options.n_list)
            std::cout << "plan: asym N=" << n << " C=" << options.c_value << "\n";
        return kExitOk;
    }
    moran::Table table;
    table.meta = make_meta("asym", options, {{"c", moran::format_double(options.c_value)}});
    table.header = {"n",          "u",           "prediction", "ratio",
                    "v_tilde",    "v_tilde_norm", "smallest_c", "binding_k",
                    "bounds_pass", "log_sum_ok"};
    for (const auto n : options.n_list) {
        const double u = moran::expected_fixation_weight(n);
        const double prediction = moran::theorem_prediction(n);
        const double v_tilde = moran::v_tilde_closed(n);
        const moran::SmallestC smallest = moran::smallest_passing_c(n);
        const bool bounds_pass = smallest.c <= options.c_value;
        table.rows.push_back(
            {std::to_string(n), moran::format_double(u), moran::format_double(prediction),
             moran::format_double(u / prediction), moran::format_double(v_tilde),
             moran::format_double(v_tilde * std::sqrt(std::acos(-1.0) * n) / 2.0),
             moran::format_double(smallest.c), std::to_string(smallest.binding_k),
             bounds_pass ? "true" : "false",
             moran::log_sum_inequality_holds(n - 1, n) ? "true" : "false"});
    }
    emit(table, options);
    return kExitOk;
}

int cmd_compare(Options& options) {
    std::sort(options.n_list.begin(), options.n_list.end());
    if (options.dry_run) {
        for (const auto n : options.n_list)
            std::cout << "plan: compare N=" << n << " reps=" << options.reps
                      << " seed=" << options.seed << "\n";
        return kExitOk;
    }
    const bool with_mc = options.reps > 0;
    moran::Table table;
    table.meta = make_meta("compare", options, {{"reps", std::to_string(options.reps)}});
    table.header = {"n", "exact_u", "prediction", "ratio"};
    if (with_mc)
        for (const char* column :
             {"weights_mean", "weights_se", "weights_z", "gene_drop_mean", "gene_drop_se",
              "gene_drop_z", "pass"})
            table.header.emplace_back(column);
    bool all_pass = true;
    std::string first_failure;
    for (const auto n : options.n_list) {
        const double exact = moran::expected_fixation_weight(n);
        const double prediction = moran::theorem_prediction(n);
        std::vector<std::string> row = {std::to_string(n), moran::format_double(exact),
                                        moran::format_double(prediction),
                                        moran::format_double(exact / prediction)};
        if (with_mc) {
            moran::PopulationConfig config;
            config.size = n;
            const moran::SampleStats weights = moran::replicate(
                config, options.reps, options.seed, moran::Estimator::weights,
                options.threads);
            const moran::SampleStats drops = moran::replicate(
                config, options.reps, options.seed, moran::Estimator::gene_drop,
                options.threads);
            const moran::AgreementTest z_w = moran::z_test(weights, exact);
            const moran::AgreementTest z_g = moran::z_test(drops, exact);
            const bool pass = z_w.pass && z_g.pass;
            if (!pass && all_pass) {
                all_pass = false;
                first_failure = "N=" + std::to_string(n) +
                                " (weights z=" + moran::format_double(z_w.z_score) +
                                ", gene_drop z=" + moran::format_double(z_g.z_score) + ")";
            }
            row.insert(row.end(),
                       {moran::format_double(weights.mean),
                        moran::format_double(weights.std_error),
                        moran::format_double(z_w.z_score), moran::format_double(drops.mean),
                        moran::format_double(drops.std_error),
                        moran::format_double(z_g.z_score), pass ? "true" : "false"});
        }
        table.rows.push_back(std::move(row));
    }
    emit(table, options);
    if (!all_pass) {
        std::cerr << "compare: z gate failed at " << first_failure << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_validate(const Options& options) {
    if (options.dry_run) {
        for (const auto& name : moran::validation_check_names())
            if (options.only.empty() || name.find(options.only) != std::string::npos)
                std::cout << "plan: validate " << name << "\n";
        return kExitOk;
    }
    moran::ValidationOptions vopts;
    vopts.seed = options.seed;
    vopts.only = options.only;
    vopts.conditional_trials = options.conditional_trials;
    vopts.coupling_reps = options.coupling_reps;
    vopts.threads = options.threads;
    const auto results = moran::run_validation_suite(vopts);
    if (results.empty()) {
        std::cerr << "validate: no check matches --only " << options.only << "\n";
        return kExitUsage;
    }
    bool all_pass = true;
    for (const auto& result : results) {
        std::cout << (result.pass ? "PASS " : "FAIL ") << result.name << " — "
                  << result.detail << "\n";
        all_pass = all_pass && result.pass;
    }
    std::cout << (all_pass ? "validate: all checks passed\n"
                           : "validate: at least one check failed\n");
    if (!options.out.empty() && options.out != "-") {
        moran::Table table;
        table.meta.command = "validate";
        table.meta.config.emplace_back("only", options.only);
        table.meta.config.emplace_back("seed", std::to_string(options.seed));
        table.header = {"check", "pass", "detail"};
        for (const auto& result : results)
            table.rows.push_back({result.name, result.pass ? "true" : "false", result.detail});
        moran::save_text_file(options.out, moran::render_table(table, options.format));
    }
    return all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biparental Moran model with selection at death: simulator and "
                 "exact-numerics toolkit"};
    app.set_version_flag("--version", std::string(moran::kToolVersion));
    app.set_config("--config", "", "key=value config file ([subcommand] sections; "
                                   "command-line flags win)");
    app.require_subcommand(1);

    Options options;
    auto add_common = [&options](CLI::App* cmd, bool with_n) {
        if (with_n)
            cmd->add_option("--n", options.n_list, "population sizes (comma separated)")
                ->required()
                ->delimiter(',')
                ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", options.seed, "base RNG seed");
        cmd->add_option("--out", options.out, "output file path (default stdout)");
        cmd->add_option("--format", options.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_flag("--dry-run", options.dry_run, "print planned work, write nothing");
        cmd->add_option("--threads", options.threads, "worker threads (0 = hardware)");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo fixation weights");
    add_common(simulate, true);
    simulate->add_option("--reps", options.reps, "replications per N")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--estimator", options.estimator, "weights, gene_drop or both");

    CLI::App* recur = app.add_subcommand("recur", "per-k recurrence tables");
    add_common(recur, true);
    recur->add_option("--mode", options.mode, "float or rational")
        ->check(CLI::IsMember({"float", "rational"}));
    recur->add_option("--rational-max-n", options.rational_max_n,
                      "largest N allowed in rational mode");
    recur->add_option("--rational-bit-budget", options.rational_bit_budget,
                      "abort rational iteration past this operand bit size");

    CLI::App* asym = app.add_subcommand("asym", "convergence and bounds summary");
    add_common(asym, true);
    asym->add_option("--c", options.c_value, "constant for the sandwich bounds");

    CLI::App* compare = app.add_subcommand(
        "compare", "Monte Carlo vs exact vs prediction with z gates");
    add_common(compare, true);
    compare->add_option("--reps", options.reps, "replications per N (0 = recurrence only)")
        ->check(CLI::NonNegativeNumber);

    CLI::App* validate = app.add_subcommand("validate", "cross-validation suite");
    add_common(validate, false);
    validate->add_option("--only", options.only, "run only checks whose name contains this");
    validate->add_option("--trials", options.conditional_trials,
                         "trials per conditional-expectation gate");
    validate->add_option("--reps", options.coupling_reps,
                         "Monte Carlo replications per estimator gate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;  // help/version exit 0
    }

    try {
        if (simulate->parsed()) return cmd_simulate(options);
        if (recur->parsed()) return cmd_recur(options);
        if (asym->parsed()) return cmd_asym(options);
        if (compare->parsed()) return cmd_compare(options);
        if (validate->parsed()) return cmd_validate(options);
    } catch (const moran::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
