#include "obliv/partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "obliv/errors.hpp"

namespace obliv {

Partition Partition::categorical(std::vector<double> values) {
    if (values.empty()) throw DataError("categorical partition needs at least one value");
    std::set<double> uniq(values.begin(), values.end());
    if (uniq.size() != values.size()) {
        throw DataError("categorical partition values must be distinct");
    }
    Partition p;
    p.kind_ = PartitionKind::categorical;
    p.values_ = std::move(values);
    return p;
}

Partition Partition::dyadic(const Vector& lo, const Vector& hi, int cells_per_axis) {
    if (lo.size() != hi.size() || lo.size() == 0) {
        throw DataError("dyadic partition: lo/hi must be nonempty and of equal dimension");
    }
    if (cells_per_axis < 1) throw DataError("dyadic partition needs cells_per_axis >= 1");
    for (Index k = 0; k < lo.size(); ++k) {
        if (!(lo[k] < hi[k])) {
            throw DataError("dyadic partition: lo must be < hi on every axis");
        }
    }
    Partition p;
    p.kind_ = PartitionKind::dyadic;
    p.lo_ = lo;
    p.hi_ = hi;
    p.cells_per_axis_ = cells_per_axis;
    return p;
}

std::size_t Partition::cell_count() const {
    if (kind_ == PartitionKind::categorical) return values_.size();
    std::size_t c = 1;
    for (Index k = 0; k < lo_.size(); ++k) c *= static_cast<std::size_t>(cells_per_axis_);
    return c;
}

Index Partition::dim() const {
    return kind_ == PartitionKind::categorical ? 1 : lo_.size();
}

std::size_t Partition::assign(RowRef s) const {
    if (kind_ == PartitionKind::categorical) {
        if (s.size() != 1) throw DataError("categorical partition expects 1-d sensitive values");
        for (std::size_t u = 0; u < values_.size(); ++u) {
            if (s[0] == values_[u]) return u;
        }
        throw AssignmentError("sensitive value " + std::to_string(s[0]) +
                                  " not in the categorical value list",
                              s[0]);
    }
    if (s.size() != lo_.size()) {
        throw DataError("dyadic partition: sensitive dimension mismatch");
    }
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (Index k = 0; k < lo_.size(); ++k) {
        if (!(s[k] >= lo_[k] && s[k] <= hi_[k])) {
            throw AssignmentError("sensitive value " + std::to_string(s[k]) +
                                      " outside partition domain on axis " + std::to_string(k),
                                  s[k]);
        }
        double width = (hi_[k] - lo_[k]) / cells_per_axis_;
        auto bin = static_cast<long>(std::floor((s[k] - lo_[k]) / width));
        // The upper boundary belongs to the last cell.
        bin = std::min<long>(bin, cells_per_axis_ - 1);
        bin = std::max<long>(bin, 0);
        idx += static_cast<std::size_t>(bin) * stride;
        stride *= static_cast<std::size_t>(cells_per_axis_);
    }
    return idx;
}

std::size_t Partition::assign_clamped(RowRef s, bool* clamped) const {
    if (clamped) *clamped = false;
    if (kind_ == PartitionKind::categorical) {
        if (s.size() != 1) throw DataError("categorical partition expects 1-d sensitive values");
        std::size_t best = 0;
        double best_d = std::abs(s[0] - values_[0]);
        for (std::size_t u = 1; u < values_.size(); ++u) {
            double d = std::abs(s[0] - values_[u]);
            if (d < best_d) {
                best_d = d;
                best = u;
            }
        }
        if (clamped && best_d != 0.0) *clamped = true;
        return best;
    }
    if (s.size() != lo_.size()) {
        throw DataError("dyadic partition: sensitive dimension mismatch");
    }
    RowVector t = s;
    bool moved = false;
    for (Index k = 0; k < t.size(); ++k) {
        double c = std::min(hi_[k], std::max(lo_[k], t[k]));
        if (c != t[k]) moved = true;
        t[k] = c;
    }
    if (clamped) *clamped = moved;
    return assign(t);
}

} // namespace obliv
