#include "stabforge/exactla/mod_echelon.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "stabforge/errors.hpp"

namespace stabforge::exactla {

namespace {
constexpr std::uint32_t npos = 0xffffffffu;
}

ModRow make_row(std::vector<std::pair<std::uint32_t, std::uint32_t>> entries, const Zq& f) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ModRow r;
    for (std::size_t i = 0; i < entries.size();) {
        std::uint32_t c = entries[i].first, v = 0;
        for (; i < entries.size() && entries[i].first == c; ++i) v = f.add(v, entries[i].second);
        if (v) r.push(c, v);
    }
    return r;
}

ModEchelon::ModEchelon(const Zq& f, std::size_t ncols) : ModEchelon(f, ncols, {}) {}

ModEchelon::ModEchelon(const Zq& f, std::size_t ncols, std::vector<std::uint32_t> order)
    : zq_(f), ncols_(ncols), order_(std::move(order)) {
    if (order_.empty()) {
        order_.resize(ncols_);
        std::iota(order_.begin(), order_.end(), 0u);
    }
    if (order_.size() != ncols_) throw DimensionMismatch("column order length");
    pos_.assign(ncols_, npos);
    for (std::uint32_t k = 0; k < ncols_; ++k) pos_[order_[k]] = k;
    pivot_at_.assign(ncols_, -1);
    acc_.assign(ncols_, 0);
}

void ModEchelon::load(const ModRow& row) {
    const bool dense = ncols_ < kDenseThreshold;
    for (std::size_t k = 0; k < row.size(); ++k) {
        std::uint32_t p = pos_[row.cols[k]];
        acc_[p] = zq_.add(acc_[p], row.vals[k]);
        if (!dense) {
            heap_.push_back(p);
            touched_.push_back(p);
        }
    }
    if (!dense) std::make_heap(heap_.begin(), heap_.end(), std::greater<>());
}

void ModEchelon::clear_acc() {
    if (ncols_ < kDenseThreshold) {
        std::fill(acc_.begin(), acc_.end(), 0);
    } else {
        for (auto p : touched_) acc_[p] = 0;
        touched_.clear();
        heap_.clear();
    }
}

std::uint32_t ModEchelon::eliminate(std::uint32_t from) {
    const Zq& f = zq_;
    if (ncols_ < kDenseThreshold) {
        for (std::uint32_t p = from; p < ncols_; ++p) {
            std::uint32_t a = acc_[p];
            if (!a) continue;
            std::int32_t idx = pivot_at_[p];
            if (idx < 0) return p;
            const Pivot& piv = pivots_[idx];
            for (std::size_t k = 0; k < piv.cols.size(); ++k) {
                std::uint32_t c = piv.cols[k];
                acc_[c] = f.sub(acc_[c], f.mul(a, piv.vals[k]));
            }
        }
        return npos;
    }
    std::uint32_t last = npos;
    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
        std::uint32_t p = heap_.back();
        heap_.pop_back();
        if (p == last) continue;
        last = p;
        std::uint32_t a = acc_[p];
        if (!a) continue;
        std::int32_t idx = pivot_at_[p];
        if (idx < 0) {
            heap_.push_back(p);
            std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
            return p;
        }
        const Pivot& piv = pivots_[idx];
        for (std::size_t k = 0; k < piv.cols.size(); ++k) {
            std::uint32_t c = piv.cols[k];
            std::uint32_t old = acc_[c];
            std::uint32_t nv = f.sub(old, f.mul(a, piv.vals[k]));
            acc_[c] = nv;
            if (!old && nv) {
                heap_.push_back(c);
                std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
                touched_.push_back(c);
            }
        }
    }
    return npos;
}

ModEchelon::Pivot ModEchelon::harvest(std::uint32_t lead) {
    Pivot piv;
    if (ncols_ < kDenseThreshold) {
        for (std::uint32_t p = lead; p < ncols_; ++p) {
            if (acc_[p]) {
                piv.cols.push_back(p);
                piv.vals.push_back(acc_[p]);
            }
        }
    } else {
        std::uint32_t last = npos;
        while (!heap_.empty()) {
            std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
            std::uint32_t p = heap_.back();
            heap_.pop_back();
            if (p == last) continue;
            last = p;
            if (acc_[p]) {
                piv.cols.push_back(p);
                piv.vals.push_back(acc_[p]);
            }
        }
    }
    clear_acc();
    return piv;
}

bool ModEchelon::insert(const ModRow& row) {
    if (full()) return false;
    load(row);
    std::uint32_t lead = eliminate(0);
    if (lead == npos) {
        clear_acc();
        return false;
    }
    Pivot piv = harvest(lead);
    std::uint32_t s = zq_.inv(piv.vals[0]);
    for (auto& v : piv.vals) v = zq_.mul(v, s);
    pivot_at_[lead] = static_cast<std::int32_t>(pivots_.size());
    pivots_.push_back(std::move(piv));
    reduced_ = false;
    return true;
}

ModRow ModEchelon::remainder(const ModRow& row) {
    load(row);
    // Full reduction: keep eliminating past non-pivot positions.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rest;
    std::uint32_t from = 0;
    while (true) {
        std::uint32_t p = eliminate(from);
        if (p == npos) break;
        rest.emplace_back(order_[p], acc_[p]);
        acc_[p] = 0;
        if (ncols_ >= kDenseThreshold) {
            // drop p from the heap top
            std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
            heap_.pop_back();
        }
        from = p + 1;
    }
    clear_acc();
    return make_row(std::move(rest), zq_);
}

void ModEchelon::reduce() {
    if (reduced_) return;
    std::vector<std::uint32_t> leads;
    for (const auto& piv : pivots_) leads.push_back(piv.cols[0]);
    std::sort(leads.rbegin(), leads.rend());
    for (std::uint32_t lead : leads) {
        Pivot& piv = pivots_[pivot_at_[lead]];
        if (piv.cols.size() == 1) continue;
        ModRow tail;
        for (std::size_t k = 1; k < piv.cols.size(); ++k) tail.push(order_[piv.cols[k]], piv.vals[k]);
        ModRow rest = remainder(tail);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pos_entries;
        for (std::size_t k = 0; k < rest.size(); ++k) pos_entries.emplace_back(pos_[rest.cols[k]], rest.vals[k]);
        std::sort(pos_entries.begin(), pos_entries.end());
        Pivot np;
        np.cols.push_back(lead);
        np.vals.push_back(1);
        for (auto& [p, v] : pos_entries) {
            np.cols.push_back(p);
            np.vals.push_back(v);
        }
        piv = std::move(np);
    }
    reduced_ = true;
}

std::vector<std::uint32_t> ModEchelon::pivot_columns() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 0; p < ncols_; ++p)
        if (pivot_at_[p] >= 0) out.push_back(order_[p]);
    return out;
}

std::vector<ModRow> ModEchelon::rows() const {
    std::vector<ModRow> out;
    for (std::uint32_t p = 0; p < ncols_; ++p) {
        if (pivot_at_[p] < 0) continue;
        const Pivot& piv = pivots_[pivot_at_[p]];
        std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
        for (std::size_t k = 0; k < piv.cols.size(); ++k) e.emplace_back(order_[piv.cols[k]], piv.vals[k]);
        out.push_back(make_row(std::move(e), zq_));
    }
    return out;
}

std::vector<ModRow> ModEchelon::kernel() {
    reduce();
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> vecs(ncols_);
    for (std::uint32_t p = 0; p < ncols_; ++p)
        if (pivot_at_[p] < 0) vecs[p].emplace_back(order_[p], 1);
    for (const auto& piv : pivots_) {
        std::uint32_t lead_col = order_[piv.cols[0]];
        for (std::size_t k = 1; k < piv.cols.size(); ++k) vecs[piv.cols[k]].emplace_back(lead_col, zq_.neg(piv.vals[k]));
    }
    std::vector<ModRow> out;
    for (std::uint32_t p = 0; p < ncols_; ++p)
        if (pivot_at_[p] < 0) out.push_back(make_row(std::move(vecs[p]), zq_));
    return out;
}

std::vector<std::uint32_t> markowitz_order(const std::vector<ModRow>& rows, std::size_t ncols) {
    std::vector<std::uint32_t> count(ncols, 0);
    for (const auto& r : rows)
        for (auto c : r.cols) ++count[c];
    std::vector<std::uint32_t> order(ncols);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return count[a] < count[b]; });
    return order;
}

namespace {

std::vector<const ModRow*> by_size(const std::vector<ModRow>& rows) {
    std::vector<const ModRow*> ptrs;
    ptrs.reserve(rows.size());
    for (const auto& r : rows)
        if (!r.empty()) ptrs.push_back(&r);
    std::stable_sort(ptrs.begin(), ptrs.end(), [](const ModRow* a, const ModRow* b) { return a->size() < b->size(); });
    return ptrs;
}

}  // namespace

std::size_t mod_rank(const Zq& f, const std::vector<ModRow>& rows, std::size_t ncols) {
    ModEchelon ech(f, ncols, markowitz_order(rows, ncols));
    for (const ModRow* r : by_size(rows)) {
        ech.insert(*r);
        if (ech.full()) break;
    }
    return ech.rank();
}

std::vector<ModRow> mod_rref(const Zq& f, const std::vector<ModRow>& rows, std::size_t ncols) {
    ModEchelon ech(f, ncols);
    for (const ModRow* r : by_size(rows)) {
        ech.insert(*r);
        if (ech.full()) break;
    }
    ech.reduce();
    return ech.rows();
}

std::vector<ModRow> mod_kernel(const Zq& f, const std::vector<ModRow>& rows, std::size_t ncols) {
    ModEchelon ech(f, ncols, markowitz_order(rows, ncols));
    for (const ModRow* r : by_size(rows)) {
        ech.insert(*r);
        if (ech.full()) break;
    }
    auto raw = ech.kernel();
    return mod_rref(f, raw, ncols);
}

}  // namespace stabforge::exactla
