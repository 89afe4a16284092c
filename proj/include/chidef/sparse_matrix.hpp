#pragma once

#include "chidef/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>
#include <stdexcept>

namespace chidef {

using Vec = std::vector<Rational>;

// Sparse matrix over the rationals. All eliminations are exact; there is no
// tolerance parameter anywhere in the library.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set(std::size_t r, std::size_t c, const Rational& v) {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set");
        if (v.is_zero()) entries_.erase({r, c});
        else entries_[{r, c}] = v;
    }

    void add(std::size_t r, std::size_t c, const Rational& v) {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add");
        auto it = entries_.find({r, c});
        if (it == entries_.end()) {
            if (!v.is_zero()) entries_[{r, c}] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    Rational get(std::size_t r, std::size_t c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational() : it->second;
    }

    const std::map<std::pair<std::size_t, std::size_t>, Rational>& entries() const {
        return entries_;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols_, rows_);
        for (const auto& [rc, v] : entries_) t.entries_[{rc.second, rc.first}] = v;
        return t;
    }

    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw std::invalid_argument("SparseMatrix::apply: size mismatch");
        Vec y(rows_);
        for (const auto& [rc, v] : entries_) y[rc.first] += v * x[rc.second];
        return y;
    }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMatrix: product shape mismatch");
        SparseMatrix c(a.rows_, b.cols_);
        for (const auto& [rc, v] : a.entries_)
            for (const auto& [rc2, w] : b.entries_)
                if (rc.second == rc2.first) c.add(rc.first, rc2.second, v * w);
        return c;
    }

    bool is_zero() const { return entries_.empty(); }

private:
    std::size_t rows_, cols_;
    std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
};

namespace detail {

// Row-echelon elimination state shared by rank / kernel / solve.
struct Echelon {
    std::vector<std::map<std::size_t, Rational>> rows; // reduced rows, pivot -> 1
    std::vector<std::size_t> pivot_cols;               // ascending
};

inline void reduce_row(Echelon& e, std::map<std::size_t, Rational>& row) {
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
        auto it = row.find(e.pivot_cols[i]);
        if (it == row.end()) continue;
        Rational f = it->second;
        row.erase(it);
        for (const auto& [c, v] : e.rows[i]) {
            if (c == e.pivot_cols[i]) continue;
            auto jt = row.find(c);
            if (jt == row.end()) {
                row[c] = -(f * v);
                if (row[c].is_zero()) row.erase(c);
            } else {
                jt->second -= f * v;
                if (jt->second.is_zero()) row.erase(jt);
            }
        }
    }
}

inline bool insert_row(Echelon& e, std::map<std::size_t, Rational> row) {
    reduce_row(e, row);
    if (row.empty()) return false;
    std::size_t p = row.begin()->first;
    Rational inv = row.begin()->second.inverse();
    for (auto& [c, v] : row) v *= inv;
    // back-substitute into existing rows to keep the echelon reduced
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        auto it = e.rows[i].find(p);
        if (it == e.rows[i].end()) continue;
        Rational f = it->second;
        e.rows[i].erase(it);
        for (const auto& [c, v] : row) {
            if (c == p) continue;
            auto jt = e.rows[i].find(c);
            if (jt == e.rows[i].end()) {
                Rational nv = -(f * v);
                if (!nv.is_zero()) e.rows[i][c] = nv;
            } else {
                jt->second -= f * v;
                if (jt->second.is_zero()) e.rows[i].erase(jt);
            }
        }
    }
    // keep pivots sorted
    std::size_t pos = 0;
    while (pos < e.pivot_cols.size() && e.pivot_cols[pos] < p) ++pos;
    e.pivot_cols.insert(e.pivot_cols.begin() + pos, p);
    e.rows.insert(e.rows.begin() + pos, std::move(row));
    return true;
}

inline Echelon eliminate(const SparseMatrix& m) {
    Echelon e;
    std::vector<std::map<std::size_t, Rational>> rows(m.rows());
    for (const auto& [rc, v] : m.entries()) rows[rc.first][rc.second] = v;
    for (auto& r : rows) insert_row(e, std::move(r));
    return e;
}

} // namespace detail

inline std::size_t rank(const SparseMatrix& m) {
    return detail::eliminate(m).rows.size();
}

// Basis of the right kernel; size == cols - rank.
inline std::vector<Vec> kernel_basis(const SparseMatrix& m) {
    detail::Echelon e = detail::eliminate(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : e.pivot_cols) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free_c = 0; free_c < m.cols(); ++free_c) {
        if (is_pivot[free_c]) continue;
        Vec v(m.cols());
        v[free_c] = Rational(1);
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            auto it = e.rows[i].find(free_c);
            if (it != e.rows[i].end()) v[e.pivot_cols[i]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

struct AffineSolution {
    Vec particular;
    std::vector<Vec> kernel;
};

// Solves m x = b exactly. Empty optional means the system is inconsistent.
inline std::optional<AffineSolution> solve_affine(const SparseMatrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve_affine: rhs size mismatch");
    // eliminate the augmented matrix [m | b]
    SparseMatrix aug(m.rows(), m.cols() + 1);
    for (const auto& [rc, v] : m.entries()) aug.set(rc.first, rc.second, v);
    for (std::size_t r = 0; r < b.size(); ++r)
        if (!b[r].is_zero()) aug.set(r, m.cols(), b[r]);
    detail::Echelon e = detail::eliminate(aug);
    for (std::size_t p : e.pivot_cols)
        if (p == m.cols()) return std::nullopt;
    Vec x(m.cols());
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        auto it = e.rows[i].find(m.cols());
        if (it != e.rows[i].end()) x[e.pivot_cols[i]] = it->second;
    }
    return AffineSolution{std::move(x), kernel_basis(m)};
}

} // namespace chidef
