#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "obliv/config.hpp"
#include "obliv/kernel.hpp"
#include "obliv/synthetic.hpp"
#include "obliv/types.hpp"

namespace obliv {

// One metric of one repetition. group holds the x-axis value of the study
// (gamma, label mode, or sample size n); group_value orders rows
// numerically when the label is numeric.
struct ResultRow {
    std::string method;
    std::string group;
    double group_value = 0.0;
    int repetition = 0;
    std::uint64_t seed = 0;
    std::string metric;
    double value = 0.0;
};

struct SummaryRow {
    std::string method;
    std::string group;
    double group_value = 0.0;
    std::string metric;
    double mean = 0.0;
    double sd = 0.0; // sample standard deviation over repetitions
    int reps = 0;
};

// Deterministic order: (method, group_value, group, metric, repetition).
void sort_rows(std::vector<ResultRow>& rows);

// Group by (method, group, metric); mean and sample sd over repetitions.
std::vector<SummaryRow> summarize(std::vector<ResultRow> rows);

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& summary);

double mean_of(const std::vector<SummaryRow>& summary, const std::string& method,
               const std::string& group, const std::string& metric);
double sd_of(const std::vector<SummaryRow>& summary, const std::string& method,
             const std::string& group, const std::string& metric);

// Seed of repetition `rep`; datasets within a repetition add a small offset
// (0 estimator, 1 train, 2 validation, 3 test).
std::uint64_t repetition_seed(std::uint64_t base_seed, int rep);

// ---------------------------------------------------------------------------
// Regression study: KRR vs ORR vs M-ORR across the dependence parameter.
// ---------------------------------------------------------------------------
struct RegressionExperimentConfig {
    RegressionVariant variant = RegressionVariant::exp1;
    std::vector<double> gammas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    Index n_estimator = 500;
    Index n_train = 500;
    Index n_validation = 100;
    Index n_test = 100;
    int repetitions = 20;
    std::uint64_t base_seed = 12345;
    KernelSpec kernel = KernelSpec::rbf(1.0);
    double s_lo = -5.0, s_hi = 5.0;
    int partition_cells = 16;
    int grid_log2_lo = -5, grid_log2_hi = 5;
    double noise_variance = 0.1;
    int threads = 0; // 0 = hardware concurrency

    void validate() const;
};

RegressionExperimentConfig regression_config_from(Config& cfg);
std::vector<ResultRow> run_regression_experiment(const RegressionExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Classification study: plain SVM vs oblivious SVM on the grades data.
// ---------------------------------------------------------------------------
struct ClassificationExperimentConfig {
    ClassificationParams data;
    Index n_estimator = 1000;
    Index n_train = 1000;
    Index n_validation = 200;
    Index n_test = 1000;
    int repetitions = 10;
    std::uint64_t base_seed = 12345;
    KernelSpec kernel = KernelSpec::linear();
    int grid_log2_lo = -5, grid_log2_hi = 5; // C grid
    int svm_max_passes = 400;
    int threads = 0;

    void validate() const;
};

ClassificationExperimentConfig classification_config_from(Config& cfg);
std::vector<ResultRow> run_classification_experiment(const ClassificationExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Convergence-rate study of the plug-in conditional mean estimate.
// ---------------------------------------------------------------------------
struct RateStudyConfig {
    bool binary_s = true; // false: S ~ Uniform[0,1] with a dyadic partition
    std::vector<Index> ladder = {250, 500, 1000, 2000, 4000};
    int repetitions = 10;
    std::uint64_t base_seed = 12345;
    double c = 0.8;        // E(X|S) = c*S
    double noise_sd = 1.0;
    int threads = 0;

    void validate() const;
};

RateStudyConfig rate_study_config_from(Config& cfg);

struct RateStudyResult {
    std::vector<ResultRow> rows;
    double slope = 0.0; // least-squares slope of log(mean error) vs log(n)
};

RateStudyResult run_rate_study(const RateStudyConfig& cfg);

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace obliv
