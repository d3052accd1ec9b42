#include "obliv/model_io.hpp"

#include <fstream>
#include <memory>

#include <json.hpp>

#include "obliv/errors.hpp"
#include "obliv/oblivious.hpp"

namespace obliv {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    auto rows = static_cast<Index>(j.size());
    if (rows == 0) return Matrix(0, 0);
    auto cols = static_cast<Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Index>(row.size()) != cols) {
            throw DataError("model file: ragged matrix");
        }
        for (Index k = 0; k < cols; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
    }
    return m;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vector vector_from_json(const json& j) {
    Vector v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
    return v;
}

json partition_to_json(const Partition& p) {
    json j;
    if (p.kind() == PartitionKind::categorical) {
        j["kind"] = "categorical";
        j["values"] = p.values();
    } else {
        j["kind"] = "dyadic";
        j["lo"] = vector_to_json(p.lower());
        j["hi"] = vector_to_json(p.upper());
        j["cells_per_axis"] = p.cells_per_axis();
    }
    return j;
}

Partition partition_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "categorical") {
        return Partition::categorical(j.at("values").get<std::vector<double>>());
    }
    if (kind == "dyadic") {
        return Partition::dyadic(vector_from_json(j.at("lo")), vector_from_json(j.at("hi")),
                                 j.at("cells_per_axis").get<int>());
    }
    throw DataError("model file: unknown partition kind '" + kind + "'");
}

} // namespace

void save_model(const std::string& path, const ModelFile& mf) {
    json j;
    j["format"] = "obliv-model";
    j["version"] = 1;
    j["mode"] = to_string(mf.model.mode);
    j["reg"] = mf.model.reg;
    j["alphas"] = vector_to_json(mf.model.alphas);
    j["intercept"] = mf.model.intercept;
    j["converged"] = mf.model.converged;
    if (mf.model.labels.size() > 0) j["labels"] = vector_to_json(mf.model.labels);
    json k;
    k["kind"] = to_string(mf.kernel.kind);
    k["degree"] = mf.kernel.degree;
    k["offset"] = mf.kernel.offset;
    k["sigma"] = mf.kernel.sigma;
    j["kernel"] = std::move(k);
    j["train_x"] = matrix_to_json(mf.train_x);
    if (mf.train_s.size() > 0) j["train_s"] = matrix_to_json(mf.train_s);
    if (mf.partition) {
        j["partition"] = partition_to_json(*mf.partition);
        j["anchors_x"] = matrix_to_json(mf.anchors_x);
        j["anchors_s"] = matrix_to_json(mf.anchors_s);
    }

    std::ofstream out(path);
    if (!out) throw DataError(path + ": cannot open for writing");
    out << j.dump(1) << '\n';
    if (!out) throw DataError(path + ": write failed");
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError(path + ": cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    try {
        if (j.value("format", "") != "obliv-model") {
            throw DataError("not an obliv model file");
        }
        ModelFile mf;
        mf.model.mode = model_mode_from_string(j.at("mode").get<std::string>());
        mf.model.reg = j.at("reg").get<double>();
        mf.model.alphas = vector_from_json(j.at("alphas"));
        mf.model.intercept = j.value("intercept", 0.0);
        mf.model.converged = j.value("converged", true);
        if (j.contains("labels")) mf.model.labels = vector_from_json(j.at("labels"));
        const auto& k = j.at("kernel");
        mf.kernel.kind = kernel_kind_from_string(k.at("kind").get<std::string>());
        mf.kernel.degree = k.at("degree").get<int>();
        mf.kernel.offset = k.at("offset").get<double>();
        mf.kernel.sigma = k.at("sigma").get<double>();
        mf.kernel.validate();
        mf.train_x = matrix_from_json(j.at("train_x"));
        if (j.contains("train_s")) mf.train_s = matrix_from_json(j.at("train_s"));
        if (j.contains("partition")) {
            mf.partition = partition_from_json(j.at("partition"));
            mf.anchors_x = matrix_from_json(j.at("anchors_x"));
            mf.anchors_s = matrix_from_json(j.at("anchors_s"));
        }
        if (mf.model.alphas.size() != mf.train_x.rows()) {
            throw DataError("alpha count does not match training rows");
        }
        return mf;
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

Vector model_predict(ModelFile& mf, const Matrix& X, const Matrix& S) {
    const bool oblivious = is_oblivious(mf.model.mode);
    if (X.cols() != mf.train_x.cols()) {
        throw DataError("predict: feature arity mismatch (model expects " +
                        std::to_string(mf.train_x.cols()) + " x-columns, got " +
                        std::to_string(X.cols()) + ")");
    }
    if (oblivious && S.rows() != X.rows()) {
        throw DataError("predict: this model needs sensitive columns s_*");
    }

    if (!oblivious) {
        Matrix cross = gram(mf.kernel, X, mf.train_x);
        if (mf.model.mode == ModelMode::krr) return ridge_predict(mf.model.alphas, cross);
        return svm_decision(mf.model, cross);
    }

    if (!mf.partition) throw DataError("predict: oblivious model lacks a partition");
    auto est = std::make_shared<CondMeanEstimator>(CondMeanEstimator::fit(
        mf.kernel, *mf.partition, mf.anchors_x, mf.anchors_s));
    ObliviousTransformer t(std::move(est));

    Vector out;
    if (mf.model.mode == ModelMode::m_orr) {
        Matrix cross = t.raw_cross_matrix(mf.train_x, X, S);
        out = ridge_predict(mf.model.alphas, cross);
    } else {
        ObliviousGram g = t.gram_matrix(mf.train_x, mf.train_s);
        Matrix cross = t.cross_matrix(g, X, S);
        out = mf.model.mode == ModelMode::orr ? ridge_predict(mf.model.alphas, cross)
                                              : svm_decision(mf.model, cross);
    }
    mf.clamped_predictions += t.clamp_tally();
    return out;
}

} // namespace obliv
