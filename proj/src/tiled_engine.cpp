#include "lps/tiled_engine.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <thread>

#include "lps/errors.hpp"

namespace lps {

MemoryCounters& MemoryCounters::operator+=(const MemoryCounters& other) {
    device_reads += other.device_reads;
    device_writes += other.device_writes;
    local_reads += other.local_reads;
    local_writes += other.local_writes;
    h2d_bytes += other.h2d_bytes;
    d2h_bytes += other.d2h_bytes;
    kernel_launches += other.kernel_launches;
    pivot_row_h2d_bytes += other.pivot_row_h2d_bytes;
    partition_h2d_bytes += other.partition_h2d_bytes;
    partition_d2h_bytes += other.partition_d2h_bytes;
    column_stream_h2d_bytes += other.column_stream_h2d_bytes;
    bulk_h2d_bytes += other.bulk_h2d_bytes;
    bulk_d2h_bytes += other.bulk_d2h_bytes;
    return *this;
}

TilePlan plan(int num_rows, int row_width, const MemoryBudget& budget) {
    assert(num_rows >= 1 && row_width >= 1);
    TilePlan out;
    const std::uint64_t row_bytes = std::uint64_t(row_width) * budget.element_bytes;
    const std::uint64_t total_bytes = std::uint64_t(num_rows) * row_bytes;

    if (!budget.device_bytes.has_value() || total_bytes <= *budget.device_bytes) {
        out.mode = TileCase::in_core;
        out.partitions = {{0, num_rows}};
        out.resident_partition = 0;
        return out;
    }

    const std::uint64_t capacity_rows = *budget.device_bytes / row_bytes;
    if (capacity_rows < 2)
        throw BudgetTooSmall("device budget of " + std::to_string(*budget.device_bytes) +
                             " bytes cannot hold one data row plus the pivot row (row is " +
                             std::to_string(row_bytes) + " bytes)");
    const int rows_per_partition = int(capacity_rows - 1);  // pivot-row reservation

    out.mode = TileCase::tiled;
    for (int begin = 0; begin < num_rows; begin += rows_per_partition)
        out.partitions.push_back({begin, std::min(begin + rows_per_partition, num_rows)});
    out.resident_partition = int(out.partitions.size()) - 1;
    return out;
}

void tile_kernel(double* tile, int rows, int cols, std::size_t stride,
                 const double* pivot_row_seg, const double* pivot_col_seg,
                 KernelMode mode, MemoryCounters& counters) {
    std::uint64_t dr = 0, dw = 0, lr = 0, lw = 0;

    if (mode == KernelMode::naive) {
        // Kernel 1: every element reads A[i][j], y_i and x_j from device
        // memory and writes A[i][j] back unconditionally.
        for (int i = 0; i < rows; ++i) {
            double* row = tile + std::size_t(i) * stride;
            for (int j = 0; j < cols; ++j) {
                double temp = row[j];
                temp = (-pivot_col_seg[i]) * pivot_row_seg[j] + temp;
                row[j] = temp;
                dr += 3;
                dw += 1;
            }
        }
        counters.device_reads += dr;
        counters.device_writes += dw;
        return;
    }

    // Kernel 2: stage the segments tile-locally, then update with the
    // temp != 0 guard.
    constexpr int kMaxTile = 256;
    assert(rows <= kMaxTile && cols <= kMaxTile);
    double ys[kMaxTile], xs[kMaxTile];
    for (int j = 0; j < cols; ++j) {
        xs[j] = pivot_row_seg[j];
        dr += 1;
        lw += 1;
    }
    for (int i = 0; i < rows; ++i) {
        ys[i] = pivot_col_seg[i];
        dr += 1;
        lw += 1;
    }
    for (int i = 0; i < rows; ++i) {
        double* row = tile + std::size_t(i) * stride;
        const double y = -ys[i];
        for (int j = 0; j < cols; ++j) {
            const double temp = y * xs[j];
            lr += 2;
            if (temp != 0.0) {
                row[j] += temp;
                dr += 1;
                dw += 1;
            }
        }
    }
    counters.device_reads += dr;
    counters.device_writes += dw;
    counters.local_reads += lr;
    counters.local_writes += lw;
}

TiledEngine::TiledEngine(int num_rows, int row_width, const MemoryBudget& budget,
                         KernelMode kernel, int workers)
    : rows_(num_rows),
      width_(row_width),
      kernel_(kernel),
      workers_(std::max(1, workers)),
      plan_(lps::plan(num_rows, row_width, budget)),
      host_(std::size_t(num_rows) * row_width, 0.0),
      pivot_buf_(row_width, 0.0),
      col_buf_(num_rows, 0.0) {
    const std::size_t slab_rows = plan_.mode == TileCase::in_core
                                      ? std::size_t(rows_)
                                      : std::size_t(plan_.partitions.front().size());
    arena_.assign(slab_rows * width_, 0.0);
}

void TiledEngine::begin_solve(std::uint64_t constant_bytes) {
    if (plan_.mode == TileCase::in_core) {
        std::memcpy(arena_.data(), host_.data(), host_.size() * sizeof(double));
        in_core_active_ = true;
        counters_.h2d_bytes += tableau_bytes() + constant_bytes;
        counters_.bulk_h2d_bytes += tableau_bytes() + constant_bytes;
    }
}

void TiledEngine::end_solve() {
    if (plan_.mode == TileCase::in_core) {
        if (in_core_active_) {
            std::memcpy(host_.data(), arena_.data(), host_.size() * sizeof(double));
            in_core_active_ = false;
            counters_.d2h_bytes += tableau_bytes();
            counters_.bulk_d2h_bytes += tableau_bytes();
        }
    } else {
        download_resident();
    }
}

const double* TiledEngine::row(int i) const {
    if (in_core_active_) return arena_.data() + std::size_t(i) * width_;
    if (resident_ >= 0) {
        const RowRange& r = plan_.partitions[resident_];
        if (i >= r.begin && i < r.end)
            return arena_.data() + std::size_t(i - r.begin) * width_;
    }
    return host_.data() + std::size_t(i) * width_;
}

double* TiledEngine::row_mut(int i) {
    return const_cast<double*>(static_cast<const TiledEngine*>(this)->row(i));
}

void TiledEngine::upload_partition(int p) {
    const RowRange& r = plan_.partitions[p];
    std::memcpy(arena_.data(), host_.data() + std::size_t(r.begin) * width_,
                std::size_t(r.size()) * width_ * sizeof(double));
    const std::uint64_t bytes = std::uint64_t(r.size()) * row_bytes();
    counters_.h2d_bytes += bytes;
    counters_.partition_h2d_bytes += bytes;
    resident_ = p;
}

void TiledEngine::download_resident() {
    if (resident_ < 0) return;
    const RowRange& r = plan_.partitions[resident_];
    std::memcpy(host_.data() + std::size_t(r.begin) * width_, arena_.data(),
                std::size_t(r.size()) * width_ * sizeof(double));
    const std::uint64_t bytes = std::uint64_t(r.size()) * row_bytes();
    counters_.d2h_bytes += bytes;
    counters_.partition_d2h_bytes += bytes;
    resident_ = -1;
}

void TiledEngine::run_partition(const RowRange& range, const std::vector<double>& pivot_col) {
    double* base = plan_.mode == TileCase::in_core
                       ? arena_.data() + std::size_t(range.begin) * width_
                       : arena_.data();

    const int band_rows = plan_.tile_rows;
    const int band_cols = plan_.tile_cols;
    const int n_bands = (range.size() + band_rows - 1) / band_rows;
    const int n_strips = (width_ + band_cols - 1) / band_cols;
    const int n_tiles = n_bands * n_strips;

    auto run_tiles = [&](int first, int last, MemoryCounters& mc) {
        for (int t = first; t < last; ++t) {
            const int band = t / n_strips;
            const int strip = t % n_strips;
            const int r0 = band * band_rows;
            const int c0 = strip * band_cols;
            const int nr = std::min(band_rows, range.size() - r0);
            const int nc = std::min(band_cols, width_ - c0);
            tile_kernel(base + std::size_t(r0) * width_ + c0, nr, nc, width_,
                        pivot_buf_.data() + c0, pivot_col.data() + range.begin + r0,
                        kernel_, mc);
        }
    };

    if (workers_ == 1 || n_tiles < 2) {
        run_tiles(0, n_tiles, counters_);
    } else {
        const int nw = std::min(workers_, n_tiles);
        std::vector<MemoryCounters> deltas(nw);
        std::vector<std::thread> threads;
        threads.reserve(nw);
        const int chunk = (n_tiles + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            const int first = w * chunk;
            const int last = std::min(first + chunk, n_tiles);
            threads.emplace_back([&, first, last, w] { run_tiles(first, last, deltas[w]); });
        }
        for (auto& t : threads) t.join();
        for (const auto& d : deltas) counters_ += d;  // per-partition barrier merge
    }
    counters_.kernel_launches += 1;
}

void TiledEngine::tiled_pivot_update(int pivot_row) {
    // Stage the scaled pivot row into the device buffer; exactly one
    // row-width upload per update, independent of the partition count.
    std::memcpy(pivot_buf_.data(), row(pivot_row), width_ * sizeof(double));
    counters_.h2d_bytes += row_bytes();
    counters_.pivot_row_h2d_bytes += row_bytes();

    // Snapshot the pivot column (d_y) before any row is modified, then
    // blank the pivot row's multiplier so the branchless passes leave it
    // untouched.
    for (int i = 0; i < rows_; ++i) col_buf_[i] = row(i)[width_ - 1];
    col_buf_[pivot_row] = 0.0;
    row_mut(pivot_row)[width_ - 1] = 0.0;

    if (plan_.mode == TileCase::in_core) {
        run_partition(plan_.partitions.front(), col_buf_);
    } else {
        // Resident partition first (skips its upload), then the others in
        // order; each is downloaded when evicted, and the last processed
        // stays resident for the next update.
        std::vector<int> order;
        order.reserve(plan_.partitions.size());
        if (resident_ >= 0) order.push_back(resident_);
        for (int p = 0; p < int(plan_.partitions.size()); ++p)
            if (p != resident_) order.push_back(p);

        for (int p : order) {
            if (p != resident_) {
                download_resident();
                upload_partition(p);
            }
            run_partition(plan_.partitions[p], col_buf_);
        }
    }

    row_mut(pivot_row)[width_ - 1] = 1.0;
}

void TiledEngine::charge_column_stream(std::uint64_t bytes) {
    if (plan_.mode == TileCase::in_core) return;  // columns are resident
    counters_.h2d_bytes += bytes;
    counters_.column_stream_h2d_bytes += bytes;
}

}  // namespace lps
