#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "lncat/cat.hpp"
#include "lncat/lrt.hpp"
#include "lncat/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::uint64_t generate_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

struct TestArgs {
    std::string input;
    std::string method = "cat";
    int replicates = 5000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double alpha = 0.05;
    std::string format = "json";
    std::string output;
    int threads = 0;
};

int run_test_command(const TestArgs& args) {
    using namespace lncat;
    const cli::InputTable table = cli::read_input_csv(args.input);
    const std::vector<GroupSample> samples = cli::to_samples(table);

    std::vector<GroupEstimate> estimates;
    for (const GroupSample& s : samples) estimates.push_back(estimate_group(summarize(s)));

    const Method method = method_from_name(args.method);
    std::uint64_t seed = args.seed;
    if (method == Method::cat && !args.seed_given) {
        seed = generate_seed();
        std::cerr << "note: no --seed given; generated seed " << seed << "\n";
    }

    const TestResult result = method == Method::cat
                                  ? run_cat(samples, args.replicates, seed, args.alpha,
                                            args.threads)
                                  : run_lrt(samples, args.alpha);

    const std::string report = args.format == "json"
                                   ? cli::test_report_json(table, estimates, result)
                                   : cli::test_report_text(table, estimates, result);
    if (args.output.empty()) {
        std::cout << report;
    } else {
        cli::write_file_atomic(args.output, report);
    }
    return kExitOk;
}

struct SimulateArgs {
    std::string input;
    std::string output;
    std::string format = "text";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
};

int run_simulate_command(const SimulateArgs& args) {
    using namespace lncat;
    bool seed_generated = false;
    Scenario scenario = cli::read_scenario_json(args.input, &seed_generated);
    if (args.seed_given) {
        scenario.seed = args.seed;
        seed_generated = false;
    }
    validate_scenario(scenario);
    if (seed_generated) {
        std::cerr << "note: scenario has no seed; generated seed " << scenario.seed << "\n";
    }
    // Fail on a bad output location before the long run, and again atomically after.
    if (!args.output.empty()) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::path(args.output).has_parent_path()
                                 ? fs::path(args.output).parent_path()
                                 : fs::path(".");
        if (!fs::exists(dir)) {
            throw InvalidInput("output directory does not exist: " + dir.string());
        }
    }

    const StudyResult study = run_study(scenario, args.threads);

    if (!args.output.empty()) {
        cli::write_file_atomic(args.output, cli::study_csv(study));
    }
    std::cout << (args.format == "json" ? cli::study_report_json(study)
                                        : cli::study_report_text(study));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tests for equality of the means of k log-normal populations:\n"
                 "a computational approach test (parametric resampling) and a likelihood\n"
                 "ratio test, plus a Monte Carlo size/power study harness."};
    app.require_subcommand(1);

    TestArgs targs;
    CLI::App* test_cmd = app.add_subcommand("test", "Run one test on a group,value CSV file");
    test_cmd->add_option("--input", targs.input, "CSV file (header 'group,value')")->required();
    test_cmd->add_option("--method", targs.method, "cat or lrt")
        ->check(CLI::IsMember({"cat", "lrt"}))
        ->capture_default_str();
    test_cmd->add_option("--replicates", targs.replicates, "CAT null replicates M")
        ->capture_default_str();
    CLI::Option* test_seed = test_cmd->add_option("--seed", targs.seed, "64-bit RNG seed");
    test_cmd->add_option("--alpha", targs.alpha, "nominal level")->capture_default_str();
    test_cmd->add_option("--format", targs.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    test_cmd->add_option("--output", targs.output, "write the report here (atomic)");
    test_cmd->add_option("--threads", targs.threads, "worker threads, 0 = auto")
        ->capture_default_str();

    SimulateArgs sargs;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Run a size/power study from a scenario");
    sim_cmd->add_option("--input", sargs.input, "scenario JSON file")->required();
    sim_cmd->add_option("--output", sargs.output, "write StudyResult CSV here (atomic)");
    sim_cmd->add_option("--format", sargs.format, "json or text summary on stdout")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    CLI::Option* sim_seed =
        sim_cmd->add_option("--seed", sargs.seed, "override the scenario seed");
    sim_cmd->add_option("--threads", sargs.threads, "worker threads, 0 = auto")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    targs.seed_given = test_seed->count() > 0;
    sargs.seed_given = sim_seed->count() > 0;

    try {
        if (app.got_subcommand("test")) return run_test_command(targs);
        return run_simulate_command(sargs);
    } catch (const lncat::NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const lncat::InternalConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const lncat::TooManyFailures& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const lncat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
