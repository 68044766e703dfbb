#include "lncat/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "lncat/parallel.hpp"

namespace lncat {

bool scenario_is_null(const Scenario& scenario) {
    if (scenario.mus.empty()) return false;
    double lo = scenario.mus[0] + scenario.sigma2s[0] / 2.0;
    double hi = lo;
    for (std::size_t i = 1; i < scenario.mus.size(); ++i) {
        const double eta = scenario.mus[i] + scenario.sigma2s[i] / 2.0;
        lo = std::min(lo, eta);
        hi = std::max(hi, eta);
    }
    return hi - lo <= 1e-12;
}

void validate_scenario(const Scenario& scenario) {
    if (scenario.k < 2) {
        throw InvalidInput("scenario needs k >= 2 groups, got " + std::to_string(scenario.k));
    }
    const auto k = static_cast<std::size_t>(scenario.k);
    if (scenario.ns.size() != k || scenario.mus.size() != k || scenario.sigma2s.size() != k) {
        throw InvalidInput("ns, mus and sigma2s must each have k entries");
    }
    for (int n : scenario.ns) {
        if (n < 2) throw InvalidInput("every group size must be >= 2");
    }
    for (double s2 : scenario.sigma2s) {
        if (!(s2 > 0.0)) throw InvalidInput("every sigma2 must be strictly positive");
    }
    if (!(scenario.alpha > 0.0) || !(scenario.alpha < 1.0)) {
        throw AlphaOutOfRange("alpha must be in (0, 1), got " + std::to_string(scenario.alpha));
    }
    if (scenario.reps < 100) {
        throw InvalidInput("a study needs at least 100 repetitions, got " +
                           std::to_string(scenario.reps));
    }
    if (scenario.methods.empty()) {
        throw InvalidInput("no methods requested");
    }
    const bool wants_cat =
        std::find(scenario.methods.begin(), scenario.methods.end(), Method::cat) !=
        scenario.methods.end();
    if (wants_cat && scenario.m < 100) {
        throw MTooSmall("CAT replicate count must be at least 100, got " +
                        std::to_string(scenario.m));
    }
}

std::vector<GroupSample> draw_experiment(const Scenario& scenario, RngStream stream) {
    std::vector<GroupSample> samples;
    samples.reserve(static_cast<std::size_t>(scenario.k));
    std::vector<double> values;
    for (int i = 0; i < scenario.k; ++i) {
        const int n = scenario.ns[static_cast<std::size_t>(i)];
        const double mu = scenario.mus[static_cast<std::size_t>(i)];
        const double sd = std::sqrt(scenario.sigma2s[static_cast<std::size_t>(i)]);
        values.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            values[static_cast<std::size_t>(j)] = std::exp(stream.next_normal(mu, sd));
        }
        samples.push_back(make_group_sample(values));
    }
    return samples;
}

namespace {

struct ExperimentRecord {
    bool failed = false;
    double p_value = 0.0;
    double statistic = 0.0;
    double seconds = 0.0;
};

}  // namespace

StudyResult run_study(const Scenario& scenario, int threads) {
    validate_scenario(scenario);

    const std::size_t n_methods = scenario.methods.size();
    const auto reps = static_cast<std::size_t>(scenario.reps);
    // records[method][experiment]
    std::vector<std::vector<ExperimentRecord>> records(n_methods,
                                                       std::vector<ExperimentRecord>(reps));

    const RngStream root(scenario.seed);
    parallel_for(scenario.reps, threads, [&](int e) {
        const RngStream experiment = root.child(static_cast<std::uint64_t>(e));
        const std::vector<GroupSample> samples = draw_experiment(scenario, experiment.child(0));
        RngStream seeder = experiment.child(1);
        const std::uint64_t cat_seed = seeder.next_u64();
        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            ExperimentRecord& rec = records[mi][static_cast<std::size_t>(e)];
            const auto start = std::chrono::steady_clock::now();
            try {
                const TestResult r =
                    scenario.methods[mi] == Method::cat
                        ? run_cat(samples, scenario.m, cat_seed, scenario.alpha, 1)
                        : run_lrt(samples, scenario.alpha);
                rec.p_value = r.p_value;
                rec.statistic = r.statistic;
            } catch (const Error&) {
                rec.failed = true;
            }
            rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                              .count();
        }
    });

    StudyResult study;
    study.scenario = scenario;
    study.is_null = scenario_is_null(scenario);
    study.methods.reserve(n_methods);
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
        MethodStudy agg;
        agg.method = scenario.methods[mi];
        std::int64_t rejected = 0;
        double p_sum = 0.0;
        for (const ExperimentRecord& rec : records[mi]) {
            agg.wall_time_s += rec.seconds;
            if (rec.failed) {
                ++agg.failures;
                continue;
            }
            agg.p_values.push_back(rec.p_value);
            agg.statistics.push_back(rec.statistic);
            p_sum += rec.p_value;
            if (rec.p_value < scenario.alpha) ++rejected;
        }
        const auto successes = static_cast<std::int64_t>(agg.p_values.size());
        if (agg.failures > scenario.reps / 100) {
            throw TooManyFailures("method " + method_name(agg.method) + ": " +
                                  std::to_string(agg.failures) + " of " +
                                  std::to_string(scenario.reps) + " experiments failed");
        }
        agg.rejection_rate = successes > 0 ? static_cast<double>(rejected) / successes : 0.0;
        agg.mc_std_error =
            std::sqrt(agg.rejection_rate * (1.0 - agg.rejection_rate) / scenario.reps);
        agg.mean_p_value = successes > 0 ? p_sum / successes : 0.0;
        study.methods.push_back(std::move(agg));
    }
    return study;
}

}  // namespace lncat
