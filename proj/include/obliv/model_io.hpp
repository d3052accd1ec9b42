#pragma once

#include <optional>
#include <string>

#include "obliv/models.hpp"
#include "obliv/partition.hpp"
#include "obliv/types.hpp"

namespace obliv {

// Everything needed to reproduce predictions: the dual model plus the
// kernel, the training rows and, for oblivious modes, the partition and
// anchor sample. Serialized as JSON; doubles are written in their shortest
// round-trip form so load(save(m)) is bit-exact.
struct ModelFile {
    DualModel model;
    KernelSpec kernel;
    Matrix train_x;                    // rows the dual coefficients refer to
    Matrix train_s;                    // oblivious modes only (may be empty)
    std::optional<Partition> partition;
    Matrix anchors_x, anchors_s;       // oblivious modes only

    std::int64_t clamped_predictions = 0; // updated by model_predict
};

void save_model(const std::string& path, const ModelFile& mf);
ModelFile load_model(const std::string& path);

// Predictions for new rows. Ridge modes return real values; SVM modes
// return decision values (take the sign for the class). S may be empty for
// the plain modes.
Vector model_predict(ModelFile& mf, const Matrix& X, const Matrix& S);

} // namespace obliv
