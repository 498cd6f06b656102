#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lps {

/// Simulated fast-memory capacity. Unlimited means Case 1 (in-core) always.
struct MemoryBudget {
    std::optional<std::uint64_t> device_bytes;  // nullopt = unlimited
    int element_bytes = 8;                      // double precision

    static MemoryBudget unlimited() { return {}; }
    static MemoryBudget of_bytes(std::uint64_t n) { return {n, 8}; }
};

enum class TileCase { in_core, tiled };

enum class KernelMode {
    cached,  // pivot row/column segments staged tile-locally before updating
    naive    // every element update reads its operands from device memory
};

struct RowRange {
    int begin = 0;
    int end = 0;
    int size() const { return end - begin; }
};

/// Partitioning of the tableau's rows under the byte budget. In-core plans
/// have exactly one partition; tiled plans reserve one row slot for the
/// pivot-row buffer and keep the last-updated partition resident across
/// iterations.
struct TilePlan {
    TileCase mode = TileCase::in_core;
    std::vector<RowRange> partitions;
    int resident_partition = 0;
    int tile_rows = 16;
    int tile_cols = 16;
};

/// Instrumented access and transfer counts. device_* and local_* counters
/// are incremented by the update kernels only; vector scaling, snapshots and
/// matrix-vector products model library (CUBLAS-style) calls and contribute
/// transfer bytes alone. The *_h2d/_d2h breakdown fields sum to h2d_bytes
/// and d2h_bytes.
struct MemoryCounters {
    std::uint64_t device_reads = 0;
    std::uint64_t device_writes = 0;
    std::uint64_t local_reads = 0;
    std::uint64_t local_writes = 0;
    std::uint64_t h2d_bytes = 0;
    std::uint64_t d2h_bytes = 0;
    std::uint64_t kernel_launches = 0;

    std::uint64_t pivot_row_h2d_bytes = 0;   // one row width per pivot update
    std::uint64_t partition_h2d_bytes = 0;   // tiled-mode partition payload up
    std::uint64_t partition_d2h_bytes = 0;   // tiled-mode partition payload down
    std::uint64_t column_stream_h2d_bytes = 0;  // pricing-pass column traffic
    std::uint64_t bulk_h2d_bytes = 0;        // in-core solve-start upload
    std::uint64_t bulk_d2h_bytes = 0;        // in-core solve-end download

    std::uint64_t device_accesses() const { return device_reads + device_writes; }
    MemoryCounters& operator+=(const MemoryCounters& other);
};

/// Decides Case 1 vs Case 2 for `num_rows` rows of `row_width` elements:
/// in-core with a single partition when the whole block fits the budget,
/// otherwise the maximal number of whole rows per partition that fits the
/// budget minus one pivot-row buffer. Throws BudgetTooSmall when the budget
/// cannot hold one data row plus the pivot row.
TilePlan plan(int num_rows, int row_width, const MemoryBudget& budget);

/// One block update: tile[i][j] += (-pivot_col_seg[i]) * pivot_row_seg[j].
/// Cached mode stages both segments tile-locally (one device read per
/// distinct element) and skips zero increments; naive mode reads all three
/// operands from device memory per element and always writes. Counter
/// deltas for a full 16x16 tile are 32 + 2*256 (cached, all increments
/// nonzero) versus 4*256 (naive).
void tile_kernel(double* tile, int rows, int cols, std::size_t stride,
                 const double* pivot_row_seg, const double* pivot_col_seg,
                 KernelMode mode, MemoryCounters& counters);

/// Simulated two-tier memory backend owning the solver tableau: a host
/// buffer plus a distinct device arena. All reads and writes between pivot
/// updates go through row()/row_mut(), which resolve to the arena when the
/// row is device-resident. Tiles within a partition may run on a worker
/// pool; each tile owns a disjoint block and counter deltas are merged at
/// the partition barrier, so results are identical for any worker count.
class TiledEngine {
public:
    /// Lays out `num_rows` rows of `row_width` doubles and plans the
    /// partitioning. The last column of each row is the pivot-column slot
    /// (Y_k, with the entering reduced cost in row 0).
    TiledEngine(int num_rows, int row_width, const MemoryBudget& budget,
                KernelMode kernel = KernelMode::cached, int workers = 1);

    int num_rows() const { return rows_; }
    int row_width() const { return width_; }
    std::uint64_t row_bytes() const { return std::uint64_t(width_) * 8; }
    std::uint64_t tableau_bytes() const { return std::uint64_t(rows_) * row_bytes(); }
    const TilePlan& plan() const { return plan_; }
    TileCase mode_case() const { return plan_.mode; }
    KernelMode kernel_mode() const { return kernel_; }

    /// In-core: uploads the tableau (plus `constant_bytes` of read-only
    /// problem data) into the arena. Tiled: leaves everything host-side.
    void begin_solve(std::uint64_t constant_bytes = 0);

    /// Flushes any device-resident rows back to the host buffer.
    void end_solve();

    const double* row(int i) const;
    double* row_mut(int i);

    /// Executes one partitioned pivot update. Precondition: row `pivot_row`
    /// has already been divided by the pivot element, so its pivot-column
    /// slot holds exactly 1. Stages the pivot row into the device row
    /// buffer (one row-width upload, tagged pivot_row_h2d_bytes), snapshots
    /// the pivot column, zeroes the stored pivot-column slot of the pivot
    /// row for the branchless passes and restores it to 1 afterwards.
    /// Partition traffic: the resident partition is processed first and
    /// skips its upload; every partition is downloaded except the last one
    /// processed, which stays resident.
    void tiled_pivot_update(int pivot_row);

    /// Charges pricing-pass traffic: in tiled mode constraint columns are
    /// streamed through the device per pass; in-core they are resident.
    void charge_column_stream(std::uint64_t bytes);

    const MemoryCounters& counters() const { return counters_; }
    MemoryCounters& counters_mut() { return counters_; }

private:
    void run_partition(const RowRange& range, const std::vector<double>& pivot_col);
    void upload_partition(int p);
    void download_resident();

    int rows_;
    int width_;
    KernelMode kernel_;
    int workers_;
    TilePlan plan_;
    MemoryCounters counters_;

    std::vector<double> host_;      // main-memory tableau copy
    std::vector<double> arena_;     // device partition slab
    std::vector<double> pivot_buf_; // device pivot-row buffer (d_x)
    std::vector<double> col_buf_;   // device pivot-column snapshot (d_y)

    bool in_core_active_ = false;   // in-core: arena holds the whole tableau
    int resident_ = -1;             // tiled: partition index held in arena_
};

}  // namespace lps
