#pragma once

#include <cstddef>
#include <vector>

#include "obliv/types.hpp"

namespace obliv {

enum class PartitionKind { categorical, dyadic };

// Finite partition of the sensitive space: a list of categorical values, or
// an axis-aligned box split into cells_per_axis^d equal cubes. Cells are
// half-open [a, b) per axis except the last one along each axis, which also
// owns the upper boundary, so the cells are disjoint and cover the domain.
// Immutable after construction.
class Partition {
public:
    static Partition categorical(std::vector<double> values);
    static Partition dyadic(const Vector& lo, const Vector& hi, int cells_per_axis);

    PartitionKind kind() const { return kind_; }
    std::size_t cell_count() const;
    Index dim() const;

    // Strict assignment; throws AssignmentError for values outside the
    // domain (or outside the categorical value list).
    std::size_t assign(RowRef s) const;

    // Prediction-time assignment: out-of-domain values map to the nearest
    // cell and *clamped is set, so callers can keep a diagnostics tally.
    std::size_t assign_clamped(RowRef s, bool* clamped = nullptr) const;

    // Serialization accessors.
    const std::vector<double>& values() const { return values_; }
    const Vector& lower() const { return lo_; }
    const Vector& upper() const { return hi_; }
    int cells_per_axis() const { return cells_per_axis_; }

private:
    Partition() = default;

    PartitionKind kind_ = PartitionKind::categorical;
    std::vector<double> values_; // categorical
    Vector lo_, hi_;             // dyadic box
    int cells_per_axis_ = 0;     // dyadic
};

} // namespace obliv
