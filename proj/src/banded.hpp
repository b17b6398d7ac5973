// banded.hpp - internal few-diagonal operator storage and fast applies
#pragma once

#include "dickesim/types.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <thread>
#include <vector>

namespace dicke::detail {

// One stored diagonal: vals(i) = A(i, i + offset) for rows where the entry
// exists; vals is full length with zeros outside the valid range so row
// windows can be taken without extra bookkeeping.
struct Band {
    int offset = 0;
    VectorCd vals;
};

class BandedOp {
public:
    BandedOp() = default;

    static BandedOp from_sparse(const SparseCd& m) {
        BandedOp op;
        op.dim_ = static_cast<int>(m.rows());
        std::map<int, VectorCd> bands;
        for (int k = 0; k < m.outerSize(); ++k)
            for (SparseCd::InnerIterator it(m, k); it; ++it) {
                int off = static_cast<int>(it.col() - it.row());
                auto [pos, fresh] = bands.try_emplace(off, VectorCd::Zero(op.dim_));
                pos->second(it.row()) = it.value();
            }
        for (auto& [off, vals] : bands) op.bands_.push_back(Band{off, std::move(vals)});
        return op;
    }

    int dim() const { return dim_; }
    int band_count() const { return static_cast<int>(bands_.size()); }
    const std::vector<Band>& bands() const { return bands_; }

    // y += scale * A x
    void apply(VectorCd& y, const VectorCd& x, Complex scale) const {
        for (const Band& b : bands_) {
            const int r0 = std::max(0, -b.offset);
            const int len = dim_ - std::abs(b.offset);
            y.segment(r0, len).array() +=
                scale * b.vals.segment(r0, len).array() * x.segment(r0 + b.offset, len).array();
        }
    }

private:
    int dim_ = 0;
    std::vector<Band> bands_;
};

// Gershgorin interval [lo, hi] containing the spectrum of a Hermitian matrix.
inline std::pair<double, double> gershgorin_interval(const SparseCd& m) {
    const int d = static_cast<int>(m.rows());
    VectorXd diag = VectorXd::Zero(d), radius = VectorXd::Zero(d);
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseCd::InnerIterator it(m, k); it; ++it) {
            if (it.row() == it.col())
                diag(it.row()) = it.value().real();
            else
                radius(it.row()) += std::abs(it.value());
        }
    double lo = (diag - radius).minCoeff();
    double hi = (diag + radius).maxCoeff();
    return {lo, hi};
}

// Run fn(begin, end) over [0, n) split into contiguous chunks, one per worker.
// Chunking is fixed by n and the worker count, and each chunk's arithmetic is
// independent, so results do not depend on scheduling.
inline void parallel_ranges(int n, int threads, const std::function<void(int, int)>& fn) {
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw ? static_cast<int>(hw) : 1;
    }
    threads = std::min(threads, n);
    if (threads <= 1) {
        fn(0, n);
        return;
    }
    const int chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int w = 1; w < threads; ++w) {
        int b = w * chunk, e = std::min(n, b + chunk);
        if (b < e) pool.emplace_back(fn, b, e);
    }
    fn(0, std::min(n, chunk));
    for (auto& t : pool) t.join();
}

}  // namespace dicke::detail
