// Command-line front end: data generation, fit/predict/audit/distance, the
// two synthetic experiments and the convergence-rate study.
//
// Exit codes: 0 success, 2 config error, 3 data error, 4 numerical error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "obliv/config.hpp"
#include "obliv/csv.hpp"
#include "obliv/dependence.hpp"
#include "obliv/errors.hpp"
#include "obliv/experiments.hpp"
#include "obliv/manifold.hpp"
#include "obliv/model_io.hpp"
#include "obliv/models.hpp"
#include "obliv/oblivious.hpp"
#include "obliv/synthetic.hpp"

namespace fs = std::filesystem;
using namespace obliv;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    bool print_config = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_seed = true) {
    cmd->add_option("--config", args.config_path, "flat key = value config file");
    cmd->add_option("--out", args.out, "output file or directory");
    if (with_seed) cmd->add_option("--seed", args.seed, "override the base seed");
    cmd->add_flag("--print-config", args.print_config,
                  "print the effective configuration and exit");
}

Config load_config(const CommonArgs& args) {
    Config cfg = args.config_path.empty() ? Config() : Config::from_file(args.config_path);
    if (args.seed) cfg.set("base_seed", std::to_string(*args.seed));
    return cfg;
}

void require_out(const CommonArgs& args) {
    if (args.out.empty()) throw ConfigError("--out is required");
}

Partition partition_from(Config& cfg) {
    std::string kind = cfg.get_string("partition.kind", "dyadic");
    if (kind == "categorical") {
        auto values = cfg.get_double_list("partition.values", {0.0, 1.0});
        return Partition::categorical(values);
    }
    if (kind != "dyadic") throw ConfigError("partition.kind must be dyadic or categorical");
    auto lo = cfg.get_double_list("partition.lo", {-5.0});
    auto hi = cfg.get_double_list("partition.hi", {5.0});
    int cells = cfg.get_int("partition.cells", 16);
    Vector lov = Eigen::Map<const Vector>(lo.data(), static_cast<Index>(lo.size()));
    Vector hiv = Eigen::Map<const Vector>(hi.data(), static_cast<Index>(hi.size()));
    return Partition::dyadic(lov, hiv, cells);
}

KernelSpec kernel_from_config(Config& cfg) {
    KernelSpec k;
    k.kind = kernel_kind_from_string(cfg.get_string("kernel.kind", "rbf"));
    k.degree = cfg.get_int("kernel.degree", 1);
    k.offset = cfg.get_double("kernel.offset", 0.0);
    k.sigma = cfg.get_double("kernel.sigma", 1.0);
    k.validate();
    return k;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

int cmd_gen(const CommonArgs& args) {
    Config cfg = load_config(args);
    std::string kind = cfg.get_string("generator", "regression");
    auto n = static_cast<Index>(cfg.get_int("n", 1000));
    std::uint64_t seed = cfg.get_uint64("base_seed", 12345);

    Dataset ds;
    if (kind == "regression") {
        auto variant = regression_variant_from_string(cfg.get_string("variant", "exp1"));
        double gamma = cfg.get_double("gamma", 0.5);
        double noise = cfg.get_double("noise_variance", 0.1);
        ds = gen_regression(n, gamma, variant, seed, noise);
    } else if (kind == "classification") {
        ClassificationParams p;
        p.mode = label_mode_from_string(cfg.get_string("label_mode", to_string(p.mode)));
        p.threshold = cfg.get_double("threshold", p.threshold);
        p.trunc_mean = cfg.get_double("trunc_mean", p.trunc_mean);
        p.trunc_sd = cfg.get_double("trunc_sd", p.trunc_sd);
        p.bump_p = cfg.get_double("bump_p", p.bump_p);
        ds = gen_classification(n, seed, p);
    } else if (kind == "gaussian_pair") {
        double c = cfg.get_double("c", 0.8);
        ds = gen_gaussian_pair(n, c, seed);
    } else if (kind == "conditional_linear") {
        double c = cfg.get_double("c", 0.8);
        bool binary = cfg.get_string("s_kind", "binary") == "binary";
        double noise_sd = cfg.get_double("noise_sd", 1.0);
        ds = gen_conditional_linear(n, c, binary, seed, noise_sd);
    } else {
        throw ConfigError("generator must be one of regression, classification, gaussian_pair, "
                          "conditional_linear");
    }
    cfg.reject_unknown();
    if (args.print_config) {
        std::cout << cfg.dump();
        return exit_ok;
    }
    require_out(args);
    csv::write_dataset(args.out, ds);
    std::cout << "wrote " << ds.size() << " rows to " << args.out << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

int cmd_fit(const CommonArgs& args, const std::string& data_path,
            const std::string& dump_gram_path) {
    Config cfg = load_config(args);
    auto mode = model_mode_from_string(cfg.get_string("mode", "orr"));
    double reg = cfg.get_double("reg", 1.0);
    int max_passes = cfg.get_int("svm.max_passes", 400);
    KernelSpec kernel = kernel_from_config(cfg);
    std::optional<Partition> partition;
    if (is_oblivious(mode)) partition = partition_from(cfg);
    cfg.reject_unknown();
    if (args.print_config) {
        std::cout << cfg.dump();
        return exit_ok;
    }
    if (data_path.empty()) throw ConfigError("--data is required");
    require_out(args);

    Dataset ds = csv::read_dataset(data_path);
    if (ds.y.size() != ds.size()) throw DataError(data_path + ": missing column 'y'");

    ModelFile mf;
    mf.kernel = kernel;
    mf.model.mode = mode;
    mf.model.reg = reg;

    Matrix train_x = ds.x, train_s = ds.s;
    Vector train_y = ds.y;
    if (is_oblivious(mode)) {
        // First half trains the model, second half anchors the conditional
        // expectation estimate.
        const Index n = ds.size();
        if (n < 2) throw DataError("oblivious modes need at least 2 rows to split");
        const Index half = n / 2;
        train_x = ds.x.topRows(half);
        train_s = ds.s.topRows(half);
        train_y = ds.y.head(half);
        mf.anchors_x = ds.x.bottomRows(n - half);
        mf.anchors_s = ds.s.bottomRows(n - half);
        mf.partition = partition;
    }
    mf.train_x = train_x;

    auto to_pm1 = [](const Vector& y01) {
        Vector y(y01.size());
        for (Index i = 0; i < y01.size(); ++i) {
            if (y01[i] != 0.0 && y01[i] != 1.0) {
                throw DataError("svm modes need 0/1 labels in column 'y'");
            }
            y[i] = 2.0 * y01[i] - 1.0;
        }
        return y;
    };

    switch (mode) {
    case ModelMode::krr: {
        Matrix K = gram(kernel, train_x);
        if (!dump_gram_path.empty()) csv::write_matrix(dump_gram_path, K);
        mf.model.alphas = fit_ridge(K, train_y, reg);
        break;
    }
    case ModelMode::svm_plain: {
        Matrix K = gram(kernel, train_x);
        if (!dump_gram_path.empty()) csv::write_matrix(dump_gram_path, K);
        mf.model = fit_svm(K, to_pm1(train_y), reg, max_passes);
        mf.model.mode = mode;
        break;
    }
    case ModelMode::orr:
    case ModelMode::m_orr:
    case ModelMode::svm_oblivious: {
        auto est = std::make_shared<CondMeanEstimator>(
            CondMeanEstimator::fit(kernel, *mf.partition, mf.anchors_x, mf.anchors_s));
        ObliviousTransformer t(est);
        if (mode == ModelMode::m_orr) {
            Matrix K = gram(kernel, train_x);
            if (!dump_gram_path.empty()) csv::write_matrix(dump_gram_path, K);
            mf.model.alphas = fit_ridge(K, train_y, reg);
        } else {
            ObliviousGram og = t.gram_matrix(train_x, train_s);
            if (!dump_gram_path.empty()) csv::write_matrix(dump_gram_path, og.o);
            if (mode == ModelMode::orr) {
                mf.model.alphas = fit_ridge(og.o, train_y, reg);
            } else {
                mf.model = fit_svm(og.o, to_pm1(train_y), reg, max_passes);
                mf.model.mode = mode;
            }
            mf.train_s = train_s;
        }
        break;
    }
    }

    save_model(args.out, mf);
    std::cout << "fitted " << to_string(mode) << " on " << train_x.rows() << " rows; model at "
              << args.out << "\n";
    if (is_svm(mode) && !mf.model.converged) {
        std::cout << "warning: svm stopped at the pass budget before meeting the KKT tolerance\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------------

int cmd_predict(const CommonArgs& args, const std::string& model_path,
                const std::string& data_path) {
    if (model_path.empty() || data_path.empty()) {
        throw ConfigError("--model and --data are required");
    }
    require_out(args);
    ModelFile mf = load_model(model_path);
    Dataset ds = csv::read_dataset(data_path);
    Vector out = model_predict(mf, ds.x, ds.s);

    if (is_svm(mf.model.mode)) {
        Matrix table(out.size(), 2);
        for (Index i = 0; i < out.size(); ++i) {
            table(i, 0) = out[i] >= 0.0 ? 1.0 : 0.0;
            table(i, 1) = out[i];
        }
        csv::write_table(args.out, {"prediction", "decision"}, table);
    } else {
        Matrix table(out.size(), 1);
        table.col(0) = out;
        csv::write_table(args.out, {"prediction"}, table);
    }
    std::cout << "wrote " << out.size() << " predictions to " << args.out << "\n";
    if (mf.clamped_predictions > 0) {
        std::cout << "note: " << mf.clamped_predictions
                  << " sensitive values fell outside the partition domain and were clamped\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------

int cmd_audit(const CommonArgs& args, const std::string& preds_path, const std::string& sens_path,
              const std::string& model_path, const std::string& data_path) {
    if (preds_path.empty() || sens_path.empty()) {
        throw ConfigError("--preds and --sens are required");
    }
    csv::Table preds_t = csv::read_table(preds_path);
    Vector preds = preds_t.data.col(preds_t.header.size() == 1
                                        ? 0
                                        : csv::find_column(preds_t, "prediction"));
    csv::Table sens_t = csv::read_table(sens_path);
    Index s_col = 0;
    for (std::size_t j = 0; j < sens_t.header.size(); ++j) {
        if (sens_t.header[j] == "s_0") s_col = static_cast<Index>(j);
    }
    Matrix sens = sens_t.data.middleCols(s_col, 1);
    if (preds.size() != sens.rows()) {
        throw DataError("audit: prediction and sensitive files disagree on row count");
    }

    std::optional<ModelFile> mf;
    std::optional<Partition> partition;
    if (!model_path.empty()) {
        mf = load_model(model_path);
        partition = mf->partition;
    }
    if (!partition) {
        // Without a model, treat the distinct sensitive values as cells.
        std::vector<double> values(sens.data(), sens.data() + sens.rows());
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.size() > 64) {
            throw DataError("audit: too many distinct sensitive values for a categorical "
                            "partition; pass --model to reuse the model's partition");
        }
        partition = Partition::categorical(values);
    }

    std::vector<std::size_t> cells(static_cast<std::size_t>(sens.rows()));
    for (Index i = 0; i < sens.rows(); ++i) {
        cells[static_cast<std::size_t>(i)] = partition->assign_clamped(sens.row(i));
    }
    double bt = beta_tilde(preds, Vector(sens.col(0)));
    CellMeanGap gap = cell_mean_gap(preds, cells, partition->cell_count());

    std::cout << "beta_tilde = " << csv::format_double(bt) << "\n";
    std::cout << "cell_mean_gap = " << csv::format_double(gap.gap) << " (populated cells: "
              << gap.populated_cells << ", empty cells skipped: " << gap.empty_cells << ")\n";

    std::optional<Matrix> probe_cov;
    std::vector<ProbeMap> maps;
    Matrix probes;
    if (mf && !data_path.empty() && mf->partition) {
        Dataset ds = csv::read_dataset(data_path);
        auto est = std::make_shared<CondMeanEstimator>(CondMeanEstimator::fit(
            mf->kernel, *mf->partition, mf->anchors_x, mf->anchors_s));
        ObliviousTransformer t(est);
        // Probe points: rows of the eval set at evenly spaced ranks of the
        // first feature coordinate.
        std::vector<Index> order(static_cast<std::size_t>(ds.x.rows()));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](Index a, Index b) { return ds.x(a, 0) < ds.x(b, 0); });
        const Index count = std::min<Index>(9, ds.x.rows());
        probes.resize(count, ds.x.cols());
        for (Index k = 0; k < count; ++k) {
            Index pos = count == 1 ? 0 : k * (ds.x.rows() - 1) / (count - 1);
            probes.row(k) = ds.x.row(order[static_cast<std::size_t>(pos)]);
        }
        maps = default_probe_maps(*mf->partition);
        probe_cov = h_independence_probe(t, ds.x, ds.s, probes, maps);

        std::cout << "probe covariances (rows: probe points, cols:";
        for (const auto& m : maps) std::cout << ' ' << m.name;
        std::cout << ")\n";
        for (Index a = 0; a < probe_cov->rows(); ++a) {
            std::cout << "  x*=" << probes(a, 0) << ":";
            for (Index b = 0; b < probe_cov->cols(); ++b) {
                std::cout << ' ' << (*probe_cov)(a, b);
            }
            std::cout << "\n";
        }
    }

    if (!args.out.empty()) {
        fs::create_directories(args.out);
        {
            std::ofstream out(fs::path(args.out) / "audit.csv");
            out << "metric,value\n";
            out << "beta_tilde," << csv::format_double(bt) << "\n";
            out << "cell_mean_gap," << csv::format_double(gap.gap) << "\n";
            out << "empty_cells," << gap.empty_cells << "\n";
        }
        if (probe_cov) {
            std::vector<std::string> header = {"probe_x"};
            for (const auto& m : maps) header.push_back("cov_" + m.name);
            Matrix table(probe_cov->rows(), probe_cov->cols() + 1);
            table.col(0) = probes.col(0);
            table.rightCols(probe_cov->cols()) = *probe_cov;
            csv::write_table((fs::path(args.out) / "probe_cov.csv").string(), header, table);
        }
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// distance
// ---------------------------------------------------------------------------

int cmd_distance(const CommonArgs& args, const std::string& model_path,
                 const std::string& data_path) {
    Config cfg = load_config(args);
    OptimizerConfig ocfg;
    auto lo = cfg.get_double_list("box.lo", {-5.0});
    auto hi = cfg.get_double_list("box.hi", {5.0});
    ocfg.lo = Eigen::Map<const Vector>(lo.data(), static_cast<Index>(lo.size()));
    ocfg.hi = Eigen::Map<const Vector>(hi.data(), static_cast<Index>(hi.size()));
    ocfg.resolution = cfg.get_int("optimizer.resolution", 64);
    ocfg.refine_sweeps = cfg.get_int("optimizer.refine_sweeps", 4);
    ocfg.refine_iters = cfg.get_int("optimizer.refine_iters", 60);
    double delta = cfg.get_double("delta", 0.05);
    std::string h_star_name = cfg.get_string("h_star", "empirical_mean");
    cfg.reject_unknown();
    if (args.print_config) {
        std::cout << cfg.dump();
        return exit_ok;
    }
    if (model_path.empty() || data_path.empty()) {
        throw ConfigError("--model and --data are required");
    }
    require_out(args);
    HStar h_star;
    if (h_star_name == "zero") {
        h_star = HStar::zero;
    } else if (h_star_name == "empirical_mean") {
        h_star = HStar::empirical_mean;
    } else {
        throw ConfigError("h_star must be zero or empirical_mean");
    }

    ModelFile mf = load_model(model_path);
    if (!mf.partition) throw DataError("distance needs an oblivious-mode model");
    Dataset ds = csv::read_dataset(data_path);
    auto est = std::make_shared<CondMeanEstimator>(
        CondMeanEstimator::fit(mf.kernel, *mf.partition, mf.anchors_x, mf.anchors_s));
    ObliviousTransformer t(est);

    std::vector<ZRep> zs;
    zs.reserve(static_cast<std::size_t>(ds.size()));
    for (Index i = 0; i < ds.size(); ++i) zs.emplace_back(t, ds.x.row(i), ds.s.row(i));
    DistanceReport rep = empirical_distance(zs, h_star, ocfg);

    // rho = max |phi(x)| over the box: 1 for rbf, otherwise a grid scan.
    double rho = 1.0;
    if (mf.kernel.kind != KernelKind::rbf) {
        rho = 0.0;
        RowVector p(ocfg.lo.size());
        const int res = ocfg.resolution;
        std::vector<int> idx(static_cast<std::size_t>(ocfg.lo.size()), 0);
        bool done = false;
        while (!done) {
            for (Index k = 0; k < ocfg.lo.size(); ++k) {
                p[k] = ocfg.lo[k] + idx[static_cast<std::size_t>(k)] *
                                        (ocfg.hi[k] - ocfg.lo[k]) / (res - 1);
            }
            rho = std::max(rho, std::sqrt(std::max(0.0, eval_kernel(mf.kernel, p, p))));
            Index k = 0;
            for (; k < ocfg.lo.size(); ++k) {
                auto& ik = idx[static_cast<std::size_t>(k)];
                if (++ik < res) break;
                ik = 0;
            }
            done = k == ocfg.lo.size();
        }
    }
    double radius = hoeffding_radius(ds.size(), delta, rho);

    fs::create_directories(args.out);
    {
        std::vector<std::string> header = {"index", "distance"};
        for (Index k = 0; k < rep.w.cols(); ++k) header.push_back("w_" + std::to_string(k));
        Matrix table(ds.size(), 2 + rep.w.cols());
        for (Index i = 0; i < ds.size(); ++i) {
            table(i, 0) = static_cast<double>(i);
            table(i, 1) = rep.per_sample[static_cast<std::size_t>(i)];
            table.row(i).tail(rep.w.cols()) = rep.w.row(i);
        }
        csv::write_table((fs::path(args.out) / "distances.csv").string(), header, table);
    }
    {
        Matrix table(1, 5);
        table << static_cast<double>(ds.size()), rep.d_n, rho, delta, radius;
        csv::write_table((fs::path(args.out) / "distance_summary.csv").string(),
                         {"n", "d_n", "rho", "delta", "epsilon"}, table);
    }
    std::cout << "d_n = " << rep.d_n << " over " << ds.size() << " samples; deviation radius at "
              << "confidence " << 1.0 - delta << " is " << radius << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

int cmd_experiment_regression(const CommonArgs& args) {
    Config cfg = load_config(args);
    RegressionExperimentConfig ec = regression_config_from(cfg);
    cfg.reject_unknown();
    if (args.print_config) {
        std::cout << cfg.dump();
        return exit_ok;
    }
    require_out(args);
    auto rows = run_regression_experiment(ec);
    auto summary = summarize(rows);
    fs::create_directories(args.out);
    write_results_csv((fs::path(args.out) / "results.csv").string(), rows);
    write_summary_csv((fs::path(args.out) / "summary.csv").string(), summary);
    for (const auto& s : summary) {
        if (s.metric == "mse") {
            std::cout << s.method << " gamma=" << s.group << " mse=" << s.mean << " +- " << s.sd
                      << "\n";
        }
    }
    return exit_ok;
}

int cmd_experiment_classification(const CommonArgs& args) {
    Config cfg = load_config(args);
    ClassificationExperimentConfig ec = classification_config_from(cfg);
    cfg.reject_unknown();
    if (args.print_config) {
        std::cout << cfg.dump();
        return exit_ok;
    }
    require_out(args);
    auto rows = run_classification_experiment(ec);
    auto summary = summarize(rows);
    fs::create_directories(args.out);
    write_results_csv((fs::path(args.out) / "results.csv").string(), rows);
    write_summary_csv((fs::path(args.out) / "summary.csv").string(), summary);
    for (const auto& s : summary) {
        if (s.metric != "C" && s.metric != "converged") {
            std::cout << s.method << " " << s.metric << " = " << s.mean << " +- " << s.sd << "\n";
        }
    }
    return exit_ok;
}

int cmd_rate_study(const CommonArgs& args) {
    Config cfg = load_config(args);
    RateStudyConfig rc = rate_study_config_from(cfg);
    cfg.reject_unknown();
    if (args.print_config) {
        std::cout << cfg.dump();
        return exit_ok;
    }
    require_out(args);
    RateStudyResult res = run_rate_study(rc);
    auto summary = summarize(res.rows);
    fs::create_directories(args.out);
    write_results_csv((fs::path(args.out) / "results.csv").string(), res.rows);
    write_summary_csv((fs::path(args.out) / "summary.csv").string(), summary);
    {
        std::ofstream out(fs::path(args.out) / "slope.csv");
        out << "variant,slope\n"
            << (rc.binary_s ? "finite" : "continuous") << ',' << csv::format_double(res.slope)
            << '\n';
    }
    std::cout << "fitted log-log slope: " << res.slope << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oblivious kernel features: fitting, prediction and dependence diagnostics"};
    app.require_subcommand(1);

    CommonArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset CSV");
    add_common(gen, gen_args);

    CommonArgs fit_args;
    std::string fit_data, fit_dump_gram;
    auto* fit = app.add_subcommand("fit", "fit a model from a training CSV");
    add_common(fit, fit_args, false);
    fit->add_option("--data", fit_data, "training CSV (x_*, s_*, y)");
    fit->add_option("--dump-gram", fit_dump_gram, "write the training Gram matrix as CSV");

    CommonArgs predict_args;
    std::string predict_model, predict_data;
    auto* predict = app.add_subcommand("predict", "predict with a saved model");
    add_common(predict, predict_args, false);
    predict->add_option("--model", predict_model, "model file from fit");
    predict->add_option("--data", predict_data, "CSV with x_* (and s_* for oblivious modes)");

    CommonArgs audit_args;
    std::string audit_preds, audit_sens, audit_model, audit_data;
    auto* audit = app.add_subcommand("audit", "dependence diagnostics for predictions");
    add_common(audit, audit_args, false);
    audit->add_option("--preds", audit_preds, "prediction CSV");
    audit->add_option("--sens", audit_sens, "CSV with the sensitive column s_0");
    audit->add_option("--model", audit_model, "optional model file (partition + probes)");
    audit->add_option("--data", audit_data, "optional eval CSV for the covariance probe");

    CommonArgs dist_args;
    std::string dist_model, dist_data;
    auto* dist = app.add_subcommand("distance", "manifold distances of oblivious features");
    add_common(dist, dist_args, false);
    dist->add_option("--model", dist_model, "oblivious-mode model file");
    dist->add_option("--data", dist_data, "CSV with x_*, s_*");

    auto* experiment = app.add_subcommand("experiment", "run a paper-scale study");
    experiment->require_subcommand(1);
    CommonArgs reg_args;
    auto* reg = experiment->add_subcommand("regression", "KRR vs ORR vs M-ORR across gamma");
    add_common(reg, reg_args);
    CommonArgs cls_args;
    auto* cls = experiment->add_subcommand("classification", "plain vs oblivious SVM");
    add_common(cls, cls_args);

    CommonArgs rate_args;
    auto* rate = app.add_subcommand("rate-study", "plug-in estimator convergence rates");
    add_common(rate, rate_args);

    try {
        app.parse(argc, argv);
        if (*gen) return cmd_gen(gen_args);
        if (*fit) return cmd_fit(fit_args, fit_data, fit_dump_gram);
        if (*predict) return cmd_predict(predict_args, predict_model, predict_data);
        if (*audit) return cmd_audit(audit_args, audit_preds, audit_sens, audit_model, audit_data);
        if (*dist) return cmd_distance(dist_args, dist_model, dist_data);
        if (*reg) return cmd_experiment_regression(reg_args);
        if (*cls) return cmd_experiment_classification(cls_args);
        if (*rate) return cmd_rate_study(rate_args);
        return exit_config;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
}
