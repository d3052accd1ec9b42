#include "obliv/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "obliv/csv.hpp"
#include "obliv/dependence.hpp"
#include "obliv/errors.hpp"
#include "obliv/models.hpp"
#include "obliv/oblivious.hpp"
#include "obliv/rng.hpp"

namespace obliv {

namespace {

// Short stable label for group values (gamma, n); results stay plot-ready
// without 17-digit noise.
std::string group_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double mse(const Vector& pred, const Vector& truth) {
    return (pred - truth).squaredNorm() / static_cast<double>(truth.size());
}

double zero_one_error(const Vector& decision, const Vector& labels01) {
    Index wrong = 0;
    for (Index i = 0; i < decision.size(); ++i) {
        double predicted = decision[i] >= 0.0 ? 1.0 : 0.0;
        if (predicted != labels01[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(decision.size());
}

// Runs tasks 0..count-1 on up to `threads` workers. Each task only touches
// its own slot of the result vector, so the outcome does not depend on the
// schedule.
void parallel_for(int count, int threads, const std::function<void(int)>& task) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace

std::uint64_t repetition_seed(std::uint64_t base_seed, int rep) {
    return base_seed + static_cast<std::uint64_t>(rep) * seed_stride;
}

void sort_rows(std::vector<ResultRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.method, a.group_value, a.group, a.metric, a.repetition) <
               std::tie(b.method, b.group_value, b.group, b.metric, b.repetition);
    });
}

std::vector<SummaryRow> summarize(std::vector<ResultRow> rows) {
    sort_rows(rows);
    std::vector<SummaryRow> out;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < rows.size() && rows[j].method == rows[i].method &&
               rows[j].group == rows[i].group && rows[j].metric == rows[i].metric) {
            sum += rows[j].value;
            ++j;
        }
        const auto reps = static_cast<int>(j - i);
        double mean = sum / reps;
        double ss = 0.0;
        for (std::size_t k = i; k < j; ++k) {
            double d = rows[k].value - mean;
            ss += d * d;
        }
        SummaryRow s;
        s.method = rows[i].method;
        s.group = rows[i].group;
        s.group_value = rows[i].group_value;
        s.metric = rows[i].metric;
        s.mean = mean;
        s.sd = reps > 1 ? std::sqrt(ss / (reps - 1)) : 0.0;
        s.reps = reps;
        out.push_back(s);
        i = j;
    }
    return out;
}

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    std::vector<ResultRow> sorted = rows;
    sort_rows(sorted);
    std::ofstream out(path);
    if (!out) throw DataError(path + ": cannot open for writing");
    out << "method,group,repetition,seed,metric,value\n";
    for (const auto& r : sorted) {
        out << r.method << ',' << r.group << ',' << r.repetition << ',' << r.seed << ','
            << r.metric << ',' << csv::format_double(r.value) << '\n';
    }
    if (!out) throw DataError(path + ": write failed");
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& summary) {
    std::ofstream out(path);
    if (!out) throw DataError(path + ": cannot open for writing");
    out << "method,group,metric,mean,sd,reps\n";
    for (const auto& s : summary) {
        out << s.method << ',' << s.group << ',' << s.metric << ',' << csv::format_double(s.mean)
            << ',' << csv::format_double(s.sd) << ',' << s.reps << '\n';
    }
    if (!out) throw DataError(path + ": write failed");
}

double mean_of(const std::vector<SummaryRow>& summary, const std::string& method,
               const std::string& group, const std::string& metric) {
    for (const auto& s : summary) {
        if (s.method == method && s.group == group && s.metric == metric) return s.mean;
    }
    throw DataError("summary lookup failed: " + method + "/" + group + "/" + metric);
}

double sd_of(const std::vector<SummaryRow>& summary, const std::string& method,
             const std::string& group, const std::string& metric) {
    for (const auto& s : summary) {
        if (s.method == method && s.group == group && s.metric == metric) return s.sd;
    }
    throw DataError("summary lookup failed: " + method + "/" + group + "/" + metric);
}

// ---------------------------------------------------------------------------
// Regression
// ---------------------------------------------------------------------------

void RegressionExperimentConfig::validate() const {
    if (n_estimator < 1 || n_train < 1 || n_validation < 1 || n_test < 1) {
        throw ConfigError("regression experiment: all sample counts must be >= 1");
    }
    if (repetitions < 1) throw ConfigError("regression experiment: repetitions must be >= 1");
    if (gammas.empty()) throw ConfigError("regression experiment: empty gamma list");
    for (double g : gammas) {
        if (!(g >= 0.0 && g <= 1.0)) {
            throw ConfigError("regression experiment: gamma values must be in [0,1]");
        }
    }
    if (grid_log2_lo > grid_log2_hi) throw ConfigError("regression experiment: empty reg grid");
    if (!(s_lo < s_hi)) throw ConfigError("regression experiment: need s_lo < s_hi");
    if (partition_cells < 1) throw ConfigError("regression experiment: partition_cells >= 1");
    kernel.validate();
}

namespace {

KernelSpec kernel_from(Config& cfg, const KernelSpec& def) {
    KernelSpec k;
    k.kind = kernel_kind_from_string(cfg.get_string("kernel.kind", to_string(def.kind)));
    k.degree = cfg.get_int("kernel.degree", def.degree);
    k.offset = cfg.get_double("kernel.offset", def.offset);
    k.sigma = cfg.get_double("kernel.sigma", def.sigma);
    k.validate();
    return k;
}

} // namespace

RegressionExperimentConfig regression_config_from(Config& cfg) {
    RegressionExperimentConfig c;
    c.variant = regression_variant_from_string(cfg.get_string("variant", "exp1"));
    c.gammas = cfg.get_double_list("gamma_list", c.gammas);
    c.n_estimator = cfg.get_int("n_estimator", static_cast<int>(c.n_estimator));
    c.n_train = cfg.get_int("n_train", static_cast<int>(c.n_train));
    c.n_validation = cfg.get_int("n_validation", static_cast<int>(c.n_validation));
    c.n_test = cfg.get_int("n_test", static_cast<int>(c.n_test));
    c.repetitions = cfg.get_int("repetitions", c.repetitions);
    c.base_seed = cfg.get_uint64("base_seed", c.base_seed);
    c.kernel = kernel_from(cfg, c.kernel);
    c.s_lo = cfg.get_double("partition.lo", c.s_lo);
    c.s_hi = cfg.get_double("partition.hi", c.s_hi);
    c.partition_cells = cfg.get_int("partition.cells", c.partition_cells);
    c.grid_log2_lo = cfg.get_int("grid.log2_lo", c.grid_log2_lo);
    c.grid_log2_hi = cfg.get_int("grid.log2_hi", c.grid_log2_hi);
    c.noise_variance = cfg.get_double("noise_variance", c.noise_variance);
    c.threads = cfg.get_int("threads", c.threads);
    c.validate();
    return c;
}

std::vector<ResultRow> run_regression_experiment(const RegressionExperimentConfig& cfg) {
    cfg.validate();
    const auto grid = pow2_grid(cfg.grid_log2_lo, cfg.grid_log2_hi);
    const Vector lo = Vector::Constant(1, cfg.s_lo);
    const Vector hi = Vector::Constant(1, cfg.s_hi);

    struct Task {
        double gamma;
        int rep;
    };
    std::vector<Task> tasks;
    for (double gamma : cfg.gammas) {
        for (int rep = 0; rep < cfg.repetitions; ++rep) tasks.push_back({gamma, rep});
    }

    std::vector<std::vector<ResultRow>> per_task(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int ti) {
        const auto& task = tasks[static_cast<std::size_t>(ti)];
        std::uint64_t seed = repetition_seed(cfg.base_seed, task.rep);

        Dataset est_ds = gen_regression(cfg.n_estimator, task.gamma, cfg.variant, seed + 0,
                                        cfg.noise_variance);
        Dataset train = gen_regression(cfg.n_train, task.gamma, cfg.variant, seed + 1,
                                       cfg.noise_variance);
        Dataset val = gen_regression(cfg.n_validation, task.gamma, cfg.variant, seed + 2,
                                     cfg.noise_variance);
        Dataset test = gen_regression(cfg.n_test, task.gamma, cfg.variant, seed + 3,
                                      cfg.noise_variance);

        auto partition = Partition::dyadic(lo, hi, cfg.partition_cells);
        auto est = std::make_shared<CondMeanEstimator>(
            CondMeanEstimator::fit(cfg.kernel, partition, est_ds.x, est_ds.s));
        ObliviousTransformer t(est);

        ObliviousGram og = t.gram_matrix(train.x, train.s);
        Matrix K = gram(cfg.kernel, train.x);

        Matrix K_val = gram(cfg.kernel, val.x, train.x);
        Matrix K_test = gram(cfg.kernel, test.x, train.x);
        Matrix C_val = t.cross_matrix(og, val.x, val.s);
        Matrix C_test = t.cross_matrix(og, test.x, test.s);
        Matrix R_val = t.raw_cross_matrix(train.x, val.x, val.s);
        Matrix R_test = t.raw_cross_matrix(train.x, test.x, test.s);

        // One factorization per lambda serves all three methods.
        std::map<double, double> loss_krr, loss_orr, loss_morr;
        std::map<double, Vector> alpha_k, alpha_o;
        for (double lambda : grid) {
            Vector ak = fit_ridge(K, train.y, lambda);
            Vector ao = fit_ridge(og.o, train.y, lambda);
            alpha_k[lambda] = ak;
            alpha_o[lambda] = ao;
            loss_krr[lambda] = mse(K_val * ak, val.y);
            loss_orr[lambda] = mse(C_val * ao, val.y);
            loss_morr[lambda] = mse(R_val * ak, val.y);
        }
        double l_krr = select_reg(grid, [&](double l) { return loss_krr.at(l); });
        double l_orr = select_reg(grid, [&](double l) { return loss_orr.at(l); });
        double l_morr = select_reg(grid, [&](double l) { return loss_morr.at(l); });

        double mse_krr = mse(K_test * alpha_k.at(l_krr), test.y);
        double mse_orr = mse(C_test * alpha_o.at(l_orr), test.y);
        double mse_morr = mse(R_test * alpha_k.at(l_morr), test.y);

        std::string group = group_label(task.gamma);
        auto& rows = per_task[static_cast<std::size_t>(ti)];
        auto push = [&](const char* method, const char* metric, double value) {
            rows.push_back({method, group, task.gamma, task.rep, seed, metric, value});
        };
        push("krr", "mse", mse_krr);
        push("orr", "mse", mse_orr);
        push("m_orr", "mse", mse_morr);
        push("krr", "lambda", l_krr);
        push("orr", "lambda", l_orr);
        push("m_orr", "lambda", l_morr);
    });

    std::vector<ResultRow> rows;
    for (auto& chunk : per_task) {
        rows.insert(rows.end(), chunk.begin(), chunk.end());
    }
    sort_rows(rows);
    return rows;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

void ClassificationExperimentConfig::validate() const {
    if (n_estimator < 1 || n_train < 1 || n_validation < 1 || n_test < 1) {
        throw ConfigError("classification experiment: all sample counts must be >= 1");
    }
    if (repetitions < 1) throw ConfigError("classification experiment: repetitions must be >= 1");
    if (grid_log2_lo > grid_log2_hi) throw ConfigError("classification experiment: empty C grid");
    if (svm_max_passes < 1) throw ConfigError("classification experiment: svm_max_passes >= 1");
    kernel.validate();
}

ClassificationExperimentConfig classification_config_from(Config& cfg) {
    ClassificationExperimentConfig c;
    c.data.mode = label_mode_from_string(cfg.get_string("label_mode", to_string(c.data.mode)));
    c.data.threshold = cfg.get_double("threshold", c.data.threshold);
    c.data.trunc_mean = cfg.get_double("trunc_mean", c.data.trunc_mean);
    c.data.trunc_sd = cfg.get_double("trunc_sd", c.data.trunc_sd);
    c.data.bump_p = cfg.get_double("bump_p", c.data.bump_p);
    c.n_estimator = cfg.get_int("n_estimator", static_cast<int>(c.n_estimator));
    c.n_train = cfg.get_int("n_train", static_cast<int>(c.n_train));
    c.n_validation = cfg.get_int("n_validation", static_cast<int>(c.n_validation));
    c.n_test = cfg.get_int("n_test", static_cast<int>(c.n_test));
    c.repetitions = cfg.get_int("repetitions", c.repetitions);
    c.base_seed = cfg.get_uint64("base_seed", c.base_seed);
    c.kernel = kernel_from(cfg, c.kernel);
    c.grid_log2_lo = cfg.get_int("grid.log2_lo", c.grid_log2_lo);
    c.grid_log2_hi = cfg.get_int("grid.log2_hi", c.grid_log2_hi);
    c.svm_max_passes = cfg.get_int("svm.max_passes", c.svm_max_passes);
    c.threads = cfg.get_int("threads", c.threads);
    c.validate();
    return c;
}

std::vector<ResultRow> run_classification_experiment(const ClassificationExperimentConfig& cfg) {
    cfg.validate();
    const auto grid = pow2_grid(cfg.grid_log2_lo, cfg.grid_log2_hi);
    const std::string group = to_string(cfg.data.mode);

    std::vector<std::vector<ResultRow>> per_task(static_cast<std::size_t>(cfg.repetitions));
    parallel_for(cfg.repetitions, cfg.threads, [&](int rep) {
        std::uint64_t seed = repetition_seed(cfg.base_seed, rep);
        Dataset est_ds = gen_classification(cfg.n_estimator, seed + 0, cfg.data);
        Dataset train = gen_classification(cfg.n_train, seed + 1, cfg.data);
        Dataset val = gen_classification(cfg.n_validation, seed + 2, cfg.data);
        Dataset test = gen_classification(cfg.n_test, seed + 3, cfg.data);

        auto partition = Partition::categorical({0.0, 1.0});
        auto est = std::make_shared<CondMeanEstimator>(
            CondMeanEstimator::fit(cfg.kernel, partition, est_ds.x, est_ds.s));
        ObliviousTransformer t(est);

        ObliviousGram og = t.gram_matrix(train.x, train.s);
        Matrix K = gram(cfg.kernel, train.x);
        Matrix K_val = gram(cfg.kernel, val.x, train.x);
        Matrix K_test = gram(cfg.kernel, test.x, train.x);
        Matrix C_val = t.cross_matrix(og, val.x, val.s);
        Matrix C_test = t.cross_matrix(og, test.x, test.s);

        Vector y_pm = 2.0 * train.y.array() - 1.0;

        auto run_side = [&](bool oblivious) {
            const Matrix& G = oblivious ? og.o : K;
            const Matrix& Xval = oblivious ? C_val : K_val;
            const Matrix& Xtest = oblivious ? C_test : K_test;
            double c_star = select_reg(grid, [&](double C) {
                DualModel m = fit_svm(G, y_pm, C, cfg.svm_max_passes);
                return zero_one_error(svm_decision(m, Xval), val.y);
            });
            DualModel m = fit_svm(G, y_pm, c_star, cfg.svm_max_passes);
            m.mode = oblivious ? ModelMode::svm_oblivious : ModelMode::svm_plain;

            Vector decision = svm_decision(m, Xtest);
            Vector pred01(decision.size());
            for (Index i = 0; i < decision.size(); ++i) pred01[i] = decision[i] >= 0.0 ? 1.0 : 0.0;

            auto& rows = per_task[static_cast<std::size_t>(rep)];
            const char* method = oblivious ? "svm_oblivious" : "svm_plain";
            auto push = [&](const char* metric, double value) {
                rows.push_back({method, group, 0.0, rep, seed, metric, value});
            };
            push("error_observed", zero_one_error(decision, test.y));
            push("error_ystar", zero_one_error(decision, *test.y_star));
            push("beta_tilde", beta_tilde(pred01, Vector(test.s.col(0))));
            push("C", c_star);
            push("converged", m.converged ? 1.0 : 0.0);
        };
        run_side(false);
        run_side(true);
    });

    std::vector<ResultRow> rows;
    for (auto& chunk : per_task) rows.insert(rows.end(), chunk.begin(), chunk.end());
    sort_rows(rows);
    return rows;
}

// ---------------------------------------------------------------------------
// Rate study
// ---------------------------------------------------------------------------

void RateStudyConfig::validate() const {
    if (ladder.empty()) throw ConfigError("rate study: empty sample-size ladder");
    for (Index n : ladder) {
        if (n < 4) throw ConfigError("rate study: ladder entries must be >= 4");
    }
    if (repetitions < 1) throw ConfigError("rate study: repetitions must be >= 1");
    if (!(noise_sd >= 0.0)) throw ConfigError("rate study: negative noise sd");
}

RateStudyConfig rate_study_config_from(Config& cfg) {
    RateStudyConfig c;
    std::string variant = cfg.get_string("variant", c.binary_s ? "finite" : "continuous");
    if (variant == "finite") {
        c.binary_s = true;
    } else if (variant == "continuous") {
        c.binary_s = false;
    } else {
        throw ConfigError("rate study: variant must be 'finite' or 'continuous'");
    }
    std::vector<double> ladder_d(c.ladder.begin(), c.ladder.end());
    ladder_d = cfg.get_double_list("n_ladder", ladder_d);
    c.ladder.clear();
    for (double v : ladder_d) c.ladder.push_back(static_cast<Index>(v));
    c.repetitions = cfg.get_int("repetitions", c.repetitions);
    c.base_seed = cfg.get_uint64("base_seed", c.base_seed);
    c.c = cfg.get_double("c", c.c);
    c.noise_sd = cfg.get_double("noise_sd", c.noise_sd);
    c.threads = cfg.get_int("threads", c.threads);
    c.validate();
    return c;
}

namespace {

// Squared L2(P_S) distance between the fitted per-cell means and the target
// E(X|S=s) = c*s. Binary S: exact two-term average. Uniform S on [0,1]:
// exact integral over each cell, int_a^b (m - c s)^2 ds
//   = w (m - c mid)^2 + c^2 w^3 / 12.
double plugin_error_sq(const CondMeanEstimator& est, double c, bool binary_s) {
    RowVector one(1);
    one[0] = 1.0;
    if (binary_s) {
        // Cell u of the categorical {0,1} partition holds S = u.
        double e0 = est.xi(one, 0) - 0.0;
        double e1 = est.xi(one, 1) - c;
        return 0.5 * (e0 * e0 + e1 * e1);
    }
    const auto& part = est.partition();
    const int cells = part.cells_per_axis();
    double acc = 0.0;
    for (int u = 0; u < cells; ++u) {
        double a = static_cast<double>(u) / cells;
        double b = static_cast<double>(u + 1) / cells;
        double w = b - a;
        double mid = 0.5 * (a + b);
        double m = est.xi(one, static_cast<std::size_t>(u)); // anchor mean; 0 when empty
        double d = m - c * mid;
        acc += w * d * d + c * c * w * w * w / 12.0;
    }
    return acc;
}

} // namespace

RateStudyResult run_rate_study(const RateStudyConfig& cfg) {
    cfg.validate();
    const KernelSpec kernel = KernelSpec::linear();

    struct Task {
        Index n;
        std::size_t n_index;
        int rep;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
        for (int rep = 0; rep < cfg.repetitions; ++rep) tasks.push_back({cfg.ladder[i], i, rep});
    }

    std::vector<ResultRow> rows(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int ti) {
        const auto& task = tasks[static_cast<std::size_t>(ti)];
        int flat = static_cast<int>(task.n_index) * cfg.repetitions + task.rep;
        std::uint64_t seed = repetition_seed(cfg.base_seed, flat);
        Dataset ds = gen_conditional_linear(task.n, cfg.c, cfg.binary_s, seed, cfg.noise_sd);

        Partition part = cfg.binary_s
                             ? Partition::categorical({0.0, 1.0})
                             : Partition::dyadic(Vector::Zero(1), Vector::Ones(1),
                                                 std::max(1, static_cast<int>(std::floor(
                                                                 std::pow(task.n, 0.25)))));
        auto est = CondMeanEstimator::fit(kernel, part, ds.x, ds.s);
        double err = std::sqrt(plugin_error_sq(est, cfg.c, cfg.binary_s));

        rows[static_cast<std::size_t>(ti)] = {cfg.binary_s ? "finite" : "continuous",
                                              group_label(static_cast<double>(task.n)),
                                              static_cast<double>(task.n),
                                              task.rep,
                                              seed,
                                              "h_err",
                                              err};
    });

    RateStudyResult out;
    out.rows = rows;
    sort_rows(out.rows);

    auto summary = summarize(out.rows);
    std::vector<double> xs, ys;
    for (const auto& s : summary) {
        if (s.metric == "h_err") {
            xs.push_back(s.group_value);
            ys.push_back(s.mean);
        }
    }
    out.slope = log_log_slope(xs, ys);
    return out;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DataError("log_log_slope: need at least two points");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) throw DataError("log_log_slope: values must be > 0");
        double lx = std::log(x[i]);
        double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace obliv
