#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qchain/rational.hpp"

namespace qchain {

using Vec = std::vector<Rational>;

// Sparse matrix over the rationals. Storage is a map (row,col) -> value with
// no explicit zeros; elimination switches to a dense working array for small
// shapes (rows*cols <= kDenseLimit) where that is faster.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw invalid_input("negative matrix dimension");
    }

    static RationalMatrix identity(int n) {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.set(i, i, Rational(1));
        return m;
    }

    static RationalMatrix from_rows(const std::vector<Vec>& rows) {
        int r = static_cast<int>(rows.size());
        int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
        RationalMatrix m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c)
                throw invalid_input("ragged row list");
            for (int j = 0; j < c; ++j)
                m.set(i, j, rows[i][j]);
        }
        return m;
    }

    static RationalMatrix from_columns(const std::vector<Vec>& cols, int ambient_rows) {
        RationalMatrix m(ambient_rows, static_cast<int>(cols.size()));
        for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
            if (static_cast<int>(cols[j].size()) != ambient_rows)
                throw invalid_input("column length mismatch");
            for (int i = 0; i < ambient_rows; ++i)
                m.set(i, j, cols[j][i]);
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Rational& at(int r, int c) const {
        check_bounds(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? zero_ : it->second;
    }

    void set(int r, int c, const Rational& v) {
        check_bounds(r, c);
        if (v.is_zero())
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    void add_to(int r, int c, const Rational& v) {
        check_bounds(r, c);
        auto it = entries_.find({r, c});
        if (it == entries_.end()) {
            if (!v.is_zero())
                entries_.emplace(std::make_pair(r, c), v);
            return;
        }
        it->second += v;
        if (it->second.is_zero())
            entries_.erase(it);
    }

    bool is_zero() const { return entries_.empty(); }
    size_t nnz() const { return entries_.size(); }
    const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (const auto& [rc, v] : entries_)
            t.entries_[{rc.second, rc.first}] = v;
        return t;
    }

    Vec apply(const Vec& x) const {
        if (static_cast<int>(x.size()) != cols_)
            throw invalid_input("matrix/vector shape mismatch");
        Vec y(rows_, Rational(0));
        for (const auto& [rc, v] : entries_)
            if (!x[rc.second].is_zero())
                y[rc.first] += v * x[rc.second];
        return y;
    }

    Vec column(int c) const {
        Vec v(rows_, Rational(0));
        for (auto it = entries_.lower_bound({0, 0}); it != entries_.end(); ++it)
            if (it->first.second == c)
                v[it->first.first] = it->second;
        return v;
    }

    std::vector<Vec> columns() const {
        std::vector<Vec> out(cols_, Vec(rows_, Rational(0)));
        for (const auto& [rc, v] : entries_)
            out[rc.second][rc.first] = v;
        return out;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.cols_ != b.rows_)
            throw invalid_input("matrix product shape mismatch");
        RationalMatrix c(a.rows_, b.cols_);
        // group b by row for sparse row-times-matrix accumulation
        for (const auto& [rc, av] : a.entries_) {
            auto it = b.entries_.lower_bound({rc.second, 0});
            for (; it != b.entries_.end() && it->first.first == rc.second; ++it)
                c.add_to(rc.first, it->first.second, av * it->second);
        }
        return c;
    }

    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw invalid_input("matrix sum shape mismatch");
        RationalMatrix c = a;
        for (const auto& [rc, v] : b.entries_)
            c.add_to(rc.first, rc.second, v);
        return c;
    }

    friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
        return a + (-b);
    }

    RationalMatrix operator-() const {
        RationalMatrix c(rows_, cols_);
        for (const auto& [rc, v] : entries_)
            c.entries_[rc] = -v;
        return c;
    }

    RationalMatrix scaled(const Rational& s) const {
        RationalMatrix c(rows_, cols_);
        if (s.is_zero())
            return c;
        for (const auto& [rc, v] : entries_)
            c.entries_[rc] = v * s;
        return c;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const RationalMatrix& a, const RationalMatrix& b) { return !(a == b); }

    // Horizontal concatenation [a | b].
    static RationalMatrix augment(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.rows_ != b.rows_)
            throw invalid_input("augment: row mismatch");
        RationalMatrix c(a.rows_, a.cols_ + b.cols_);
        for (const auto& [rc, v] : a.entries_)
            c.entries_[rc] = v;
        for (const auto& [rc, v] : b.entries_)
            c.entries_[{rc.first, rc.second + a.cols_}] = v;
        return c;
    }

private:
    void check_bounds(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw invalid_input("matrix index out of bounds");
    }

    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, Rational> entries_;
    inline static const Rational zero_{};
};

struct RrefResult {
    RationalMatrix matrix;
    std::vector<int> pivots;  // strictly increasing pivot columns
};

inline constexpr long kDenseLimit = 4096;

namespace detail {

// Dense elimination. Pivot within the candidate column by smallest
// bit_size (Markowitz-flavoured; keeps coefficients from blowing up),
// ties broken by row index so the run is deterministic.
inline RrefResult rref_dense(const RationalMatrix& m) {
    int r = m.rows(), c = m.cols();
    std::vector<Vec> g(r, Vec(c, Rational(0)));
    for (const auto& [rc, v] : m.entries())
        g[rc.first][rc.second] = v;
    std::vector<int> pivots;
    int lead = 0;
    for (int col = 0; col < c && lead < r; ++col) {
        int best = -1;
        size_t best_score = 0;
        for (int i = lead; i < r; ++i) {
            if (g[i][col].is_zero())
                continue;
            size_t score = g[i][col].bit_size();
            if (best < 0 || score < best_score) {
                best = i;
                best_score = score;
            }
        }
        if (best < 0)
            continue;
        std::swap(g[lead], g[best]);
        Rational inv = g[lead][col].inverse();
        for (int j = col; j < c; ++j)
            if (!g[lead][j].is_zero())
                g[lead][j] *= inv;
        for (int i = 0; i < r; ++i) {
            if (i == lead || g[i][col].is_zero())
                continue;
            Rational f = g[i][col];
            for (int j = col; j < c; ++j)
                if (!g[lead][j].is_zero())
                    g[i][j] -= f * g[lead][j];
        }
        pivots.push_back(col);
        ++lead;
    }
    RationalMatrix out(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (!g[i][j].is_zero())
                out.set(i, j, g[i][j]);
    return {std::move(out), std::move(pivots)};
}

// Sparse elimination over rows kept as ordered column->value maps.
inline RrefResult rref_sparse(const RationalMatrix& m) {
    int r = m.rows(), c = m.cols();
    std::vector<std::map<int, Rational>> g(r);
    for (const auto& [rc, v] : m.entries())
        g[rc.first][rc.second] = v;
    std::vector<int> pivots;
    int lead = 0;
    for (int col = 0; col < c && lead < r; ++col) {
        int best = -1;
        size_t best_score = 0;
        for (int i = lead; i < r; ++i) {
            auto it = g[i].find(col);
            if (it == g[i].end())
                continue;
            size_t score = it->second.bit_size();
            if (best < 0 || score < best_score) {
                best = i;
                best_score = score;
            }
        }
        if (best < 0)
            continue;
        std::swap(g[lead], g[best]);
        Rational inv = g[lead].at(col).inverse();
        for (auto& [j, v] : g[lead])
            v *= inv;
        for (int i = 0; i < r; ++i) {
            if (i == lead)
                continue;
            auto it = g[i].find(col);
            if (it == g[i].end())
                continue;
            Rational f = it->second;
            for (const auto& [j, v] : g[lead]) {
                auto jt = g[i].find(j);
                if (jt == g[i].end()) {
                    g[i].emplace(j, -f * v);
                } else {
                    jt->second -= f * v;
                    if (jt->second.is_zero())
                        g[i].erase(jt);
                }
            }
        }
        pivots.push_back(col);
        ++lead;
    }
    RationalMatrix out(r, c);
    for (int i = 0; i < r; ++i)
        for (const auto& [j, v] : g[i])
            out.set(i, j, v);
    return {std::move(out), std::move(pivots)};
}

}  // namespace detail

// Reduced row echelon form plus pivot columns. RREF is unique, so the dense
// and sparse paths agree exactly; only speed differs.
inline RrefResult rref(const RationalMatrix& m) {
    if (static_cast<long>(m.rows()) * m.cols() <= kDenseLimit)
        return detail::rref_dense(m);
    return detail::rref_sparse(m);
}

inline int rank(const RationalMatrix& m) { return static_cast<int>(rref(m).pivots.size()); }

// Canonical kernel basis: one vector per free column, in ascending free-column
// order, with a unit in the free coordinate and pivot coordinates filled from
// the RREF. Exactly satisfies M v = 0.
inline std::vector<Vec> kernel_basis(const RationalMatrix& m) {
    RrefResult rr = rref(m);
    int c = m.cols();
    std::vector<bool> is_pivot(c, false);
    for (int p : rr.pivots)
        is_pivot[p] = true;
    std::vector<Vec> out;
    for (int f = 0; f < c; ++f) {
        if (is_pivot[f])
            continue;
        Vec v(c, Rational(0));
        v[f] = Rational(1);
        for (size_t i = 0; i < rr.pivots.size(); ++i)
            v[rr.pivots[i]] = -rr.matrix.at(static_cast<int>(i), f);
        out.push_back(std::move(v));
    }
    return out;
}

// Canonical basis of the span of the given vectors: the nonzero rows of the
// RREF of the stacked vectors. Unique per subspace, hence reproducible.
inline std::vector<Vec> canonical_span(const std::vector<Vec>& vecs, int ambient) {
    for (const auto& v : vecs)
        if (static_cast<int>(v.size()) != ambient)
            throw invalid_input("canonical_span: ambient mismatch");
    if (vecs.empty())
        return {};
    RrefResult rr = rref(RationalMatrix::from_rows(vecs));
    std::vector<Vec> out;
    for (size_t i = 0; i < rr.pivots.size(); ++i) {
        Vec v(ambient, Rational(0));
        for (int j = 0; j < ambient; ++j)
            v[j] = rr.matrix.at(static_cast<int>(i), j);
        out.push_back(std::move(v));
    }
    return out;
}

// Canonical basis of the column space.
inline std::vector<Vec> column_space_basis(const RationalMatrix& m) {
    return canonical_span(m.columns(), m.rows());
}

inline int rank_of_span(const std::vector<Vec>& vecs, int ambient) {
    return static_cast<int>(canonical_span(vecs, ambient).size());
}

namespace detail {

// Incremental row-echelon accumulator: insert() reduces against the stored
// rows and keeps the remainder when it is nonzero.
class Echelon {
public:
    // returns true when v was independent of the stored span
    bool insert(Vec v) {
        for (const auto& [p, row] : rows_) {
            if (v[p].is_zero())
                continue;
            Rational f = v[p];
            for (size_t j = p; j < v.size(); ++j)
                if (!row[j].is_zero())
                    v[j] -= f * row[j];
        }
        size_t pivot = v.size();
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) {
                pivot = j;
                break;
            }
        if (pivot == v.size())
            return false;
        Rational inv = v[pivot].inverse();
        for (size_t j = pivot; j < v.size(); ++j)
            if (!v[j].is_zero())
                v[j] *= inv;
        rows_.emplace(pivot, std::move(v));
        return true;
    }

    bool contains(Vec v) { return !would_extend(std::move(v)); }

private:
    bool would_extend(Vec v) const {
        for (const auto& [p, row] : rows_) {
            if (v[p].is_zero())
                continue;
            Rational f = v[p];
            for (size_t j = p; j < v.size(); ++j)
                if (!row[j].is_zero())
                    v[j] -= f * row[j];
        }
        for (const auto& x : v)
            if (!x.is_zero())
                return true;
        return false;
    }

    std::map<size_t, Vec> rows_;  // pivot column -> normalized row
};

}  // namespace detail

// Representatives completing a basis of span(W) to one of span(U).
// Reports a containment violation when span(W) is not inside span(U).
inline std::vector<Vec> quotient_basis(const std::vector<Vec>& u, const std::vector<Vec>& w, int ambient) {
    std::vector<Vec> uc = canonical_span(u, ambient);
    std::vector<Vec> wc = canonical_span(w, ambient);
    detail::Echelon span_u;
    for (const auto& v : uc)
        span_u.insert(v);
    for (const auto& v : wc)
        if (!span_u.contains(v))
            throw invalid_input("quotient_basis: span(W) not contained in span(U)");
    detail::Echelon acc;
    for (const auto& v : wc)
        acc.insert(v);
    std::vector<Vec> reps;
    for (const auto& cand : uc)
        if (acc.insert(cand))
            reps.push_back(cand);
    return reps;
}

// One exact solution of M x = b (free coordinates zero), or nullopt.
inline std::optional<Vec> solve(const RationalMatrix& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw invalid_input("solve: rhs length mismatch");
    RationalMatrix rhs(m.rows(), 1);
    for (int i = 0; i < m.rows(); ++i)
        rhs.set(i, 0, b[i]);
    RrefResult rr = rref(RationalMatrix::augment(m, rhs));
    for (int p : rr.pivots)
        if (p == m.cols())
            return std::nullopt;
    Vec x(m.cols(), Rational(0));
    for (size_t i = 0; i < rr.pivots.size(); ++i)
        x[rr.pivots[i]] = rr.matrix.at(static_cast<int>(i), m.cols());
    return x;
}

// Coordinates of v in the given spanning columns, if v lies in their span.
inline std::optional<Vec> coordinates_in(const std::vector<Vec>& basis, const Vec& v) {
    int ambient = static_cast<int>(v.size());
    RationalMatrix m = RationalMatrix::from_columns(basis, ambient);
    return solve(m, v);
}

}  // namespace qchain
