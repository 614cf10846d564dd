#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabforge/exactla/field.hpp"

namespace stabforge::exactla {

/// Sparse row over a finite field: parallel column/value arrays, columns
/// strictly increasing, values nonzero codes.
struct ModRow {
    std::vector<std::uint32_t> cols;
    std::vector<std::uint32_t> vals;

    std::size_t size() const { return cols.size(); }
    bool empty() const { return cols.empty(); }
    void push(std::uint32_t c, std::uint32_t v) {
        cols.push_back(c);
        vals.push_back(v);
    }
};

/// Build a ModRow from unsorted (col, value) pairs, merging duplicates.
ModRow make_row(std::vector<std::pair<std::uint32_t, std::uint32_t>> entries, const Zq& f);

/// Incremental row echelon form over a finite field.
///
/// Columns are eliminated in a fixed processing order (by default ascending
/// nonzero count when built through `echelonize`, the natural order
/// otherwise). Below `kDenseThreshold` columns rows are stored densely.
class ModEchelon {
public:
    static constexpr std::size_t kDenseThreshold = 200;

    ModEchelon(const Zq& f, std::size_t ncols);
    /// Same, with an explicit processing order: order[k] is the original column eliminated k-th.
    ModEchelon(const Zq& f, std::size_t ncols, std::vector<std::uint32_t> order);

    /// Reduce `row` against the current pivots; keep it if it is independent.
    bool insert(const ModRow& row);
    /// Reduce a row without inserting; returns the remainder in original columns.
    ModRow remainder(const ModRow& row);

    std::size_t rank() const { return pivots_.size(); }
    std::size_t ncols() const { return ncols_; }
    bool full() const { return pivots_.size() == ncols_; }

    /// Back-substitute to reduced row echelon form.
    void reduce();
    /// Pivot columns (original indices) in processing order.
    std::vector<std::uint32_t> pivot_columns() const;
    /// Rows of the (reduced, if `reduce` was called) echelon form in original columns.
    std::vector<ModRow> rows() const;
    /// Basis of the right kernel of the inserted rows, in original columns.
    /// Calls `reduce` first.
    std::vector<ModRow> kernel();

private:
    struct Pivot {
        std::vector<std::uint32_t> cols;  // processing positions, ascending, cols[0] = leading
        std::vector<std::uint32_t> vals;  // vals[0] = 1
    };

    void load(const ModRow& row);
    // Eliminate the accumulator; returns the first surviving position or npos.
    std::uint32_t eliminate(std::uint32_t from);
    Pivot harvest(std::uint32_t lead);
    void clear_acc();

    Zq zq_;
    std::size_t ncols_;
    std::vector<std::uint32_t> order_;  // position -> original column
    std::vector<std::uint32_t> pos_;    // original column -> position
    std::vector<Pivot> pivots_;
    std::vector<std::int32_t> pivot_at_;  // position -> pivot index
    std::vector<std::uint32_t> acc_;
    std::vector<std::uint32_t> touched_;
    std::vector<std::uint32_t> heap_;
    bool reduced_ = false;
};

/// Column processing order: ascending number of nonzeros, ties by index.
std::vector<std::uint32_t> markowitz_order(const std::vector<ModRow>& rows, std::size_t ncols);

/// Rank of a list of rows.
std::size_t mod_rank(const Zq& f, const std::vector<ModRow>& rows, std::size_t ncols);

/// Kernel of the rows, returned as a reduced row echelon basis in natural
/// column order (unique for the kernel subspace).
std::vector<ModRow> mod_kernel(const Zq& f, const std::vector<ModRow>& rows, std::size_t ncols);

/// Reduced row echelon basis (natural column order) of the span of `rows`.
std::vector<ModRow> mod_rref(const Zq& f, const std::vector<ModRow>& rows, std::size_t ncols);

}  // namespace stabforge::exactla
