#pragma once

#include <cstdint>
#include <vector>

#include "qchain/complex.hpp"
#include "qchain/double_complex.hpp"
#include "qchain/multivector.hpp"

namespace qchain {

// splitmix64; hand-rolled so seeded runs are byte-identical across standard
// libraries (std distributions are implementation-defined).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi]
    int uniform(int lo, int hi) {
        if (hi < lo)
            throw invalid_input("rng range empty");
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    // small integers, mildly biased toward zero to keep matrices sparse
    Rational small_rational(int bound = 3) {
        int roll = uniform(0, 9);
        if (roll < 4)
            return Rational(0);
        return Rational(uniform(-bound, bound));
    }

    Rng fork() { return Rng(next()); }

private:
    uint64_t state_;
};

inline RationalMatrix random_matrix(Rng& rng, int rows, int cols, int bound = 3) {
    RationalMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.set(i, j, rng.small_rational(bound));
    return m;
}

// unit upper-triangular times unit lower-triangular times a permutation
inline RationalMatrix random_invertible(Rng& rng, int n) {
    RationalMatrix u = RationalMatrix::identity(n);
    RationalMatrix l = RationalMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            u.set(i, j, rng.small_rational(2));
            l.set(j, i, rng.small_rational(2));
        }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i)
        perm[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.uniform(0, i)]);
    RationalMatrix p(n, n);
    for (int i = 0; i < n; ++i)
        p.set(i, perm[i], Rational(1));
    return u * l * p;
}

// Random complex with exact d^2 = 0: differentials built top-down with
// columns drawn from the kernel of the next differential.
inline Complex random_complex(Rng& rng, int k_min, int k_max, int max_dim) {
    Complex c(k_min, k_max);
    for (int k = k_min; k <= k_max; ++k)
        c.set_dim(k, rng.uniform(0, max_dim));
    for (int k = k_max - 1; k >= k_min; --k) {
        if (k == k_max - 1) {
            c.set_diff(k, random_matrix(rng, c.dim(k + 1), c.dim(k)));
            continue;
        }
        std::vector<Vec> ker = kernel_basis(c.d(k + 1));
        RationalMatrix kmat = RationalMatrix::from_columns(ker, c.dim(k + 1));
        RationalMatrix mix = random_matrix(rng, static_cast<int>(ker.size()), c.dim(k));
        c.set_diff(k, kmat * mix);
    }
    ValidationReport v = validate_complex(c);
    if (!v.ok())
        throw internal_error("random_complex invalid:\n" + v.summary());
    return c;
}

// Uniform-ish random chain map source -> target: sample the solution space of
// the chain-map equations f_{k+1} d = d f_k with exact kernel arithmetic.
inline ChainMap random_chain_map(Rng& rng, const Complex& source, const Complex& target) {
    if (source.k_min != target.k_min || source.k_max != target.k_max)
        throw invalid_input("random_chain_map needs matching windows");
    int k_min = source.k_min, k_max = source.k_max;
    // unknown layout: for each degree k, entries of f_k in row-major order
    std::vector<int> offset;
    int total = 0;
    for (int k = k_min; k <= k_max; ++k) {
        offset.push_back(total);
        total += target.dim(k) * source.dim(k);
    }
    auto unknown = [&](int k, int r, int cidx) {
        return offset[k - k_min] + r * source.dim(k) + cidx;
    };
    int n_eq = 0;
    for (int k = k_min; k < k_max; ++k)
        n_eq += target.dim(k + 1) * source.dim(k);
    RationalMatrix sys(n_eq, total);
    int eq = 0;
    for (int k = k_min; k < k_max; ++k) {
        RationalMatrix da = source.d(k), db = target.d(k);
        for (int r = 0; r < target.dim(k + 1); ++r)
            for (int cidx = 0; cidx < source.dim(k); ++cidx) {
                // (f_{k+1} da)[r,c] - (db f_k)[r,c] = 0
                for (int s = 0; s < source.dim(k + 1); ++s)
                    if (!da.at(s, cidx).is_zero())
                        sys.add_to(eq, unknown(k + 1, r, s), da.at(s, cidx));
                for (int s = 0; s < target.dim(k); ++s)
                    if (!db.at(r, s).is_zero())
                        sys.add_to(eq, unknown(k, s, cidx), -db.at(r, s));
                ++eq;
            }
    }
    std::vector<Vec> ker = kernel_basis(sys);
    Vec coeffs(total, Rational(0));
    for (const auto& kv : ker) {
        Rational c = rng.small_rational(2);
        if (c.is_zero())
            continue;
        for (int i = 0; i < total; ++i)
            coeffs[i] += c * kv[i];
    }
    ChainMap f;
    f.source = source;
    f.target = target;
    for (int k = k_min; k <= k_max; ++k) {
        RationalMatrix m(target.dim(k), source.dim(k));
        for (int r = 0; r < target.dim(k); ++r)
            for (int cidx = 0; cidx < source.dim(k); ++cidx)
                m.set(r, cidx, coeffs[unknown(k, r, cidx)]);
        f.components[k] = std::move(m);
    }
    ValidationReport v = validate_chain_map(f);
    if (!v.ok())
        throw internal_error("random_chain_map invalid:\n" + v.summary());
    return f;
}

// Two nonzero rows q = 0, 1 over p in [0, p_len-1], commuting squares by
// construction (the vertical map is a sampled chain map between the rows).
inline DoubleComplex random_two_row(Rng& rng, int p_len, int max_dim) {
    Complex lower = random_complex(rng, 0, p_len - 1, max_dim);
    Complex upper = random_complex(rng, 0, p_len - 1, max_dim);
    ChainMap vert = random_chain_map(rng, lower, upper);
    return two_row_from_map(vert);
}

// Chain map source -> target with the extra constraint f . prev = 0, sampled
// from the exact solution space; prev must land in source.
inline ChainMap random_chain_map_annihilating(Rng& rng, const Complex& source, const Complex& target,
                                              const ChainMap& prev) {
    int k_min = source.k_min, k_max = source.k_max;
    std::vector<int> offset;
    int total = 0;
    for (int k = k_min; k <= k_max; ++k) {
        offset.push_back(total);
        total += target.dim(k) * source.dim(k);
    }
    auto unknown = [&](int k, int r, int cidx) {
        return offset[k - k_min] + r * source.dim(k) + cidx;
    };
    int n_eq = 0;
    for (int k = k_min; k < k_max; ++k)
        n_eq += target.dim(k + 1) * source.dim(k);
    for (int k = k_min; k <= k_max; ++k)
        n_eq += target.dim(k) * prev.source.dim(k);
    RationalMatrix sys(n_eq, total);
    int eq = 0;
    for (int k = k_min; k < k_max; ++k) {
        RationalMatrix da = source.d(k), db = target.d(k);
        for (int r = 0; r < target.dim(k + 1); ++r)
            for (int cidx = 0; cidx < source.dim(k); ++cidx) {
                for (int s = 0; s < source.dim(k + 1); ++s)
                    if (!da.at(s, cidx).is_zero())
                        sys.add_to(eq, unknown(k + 1, r, s), da.at(s, cidx));
                for (int s = 0; s < target.dim(k); ++s)
                    if (!db.at(r, s).is_zero())
                        sys.add_to(eq, unknown(k, s, cidx), -db.at(r, s));
                ++eq;
            }
    }
    for (int k = k_min; k <= k_max; ++k) {
        RationalMatrix pk = prev.at(k);
        for (int r = 0; r < target.dim(k); ++r)
            for (int cidx = 0; cidx < prev.source.dim(k); ++cidx) {
                for (int s = 0; s < source.dim(k); ++s)
                    if (!pk.at(s, cidx).is_zero())
                        sys.add_to(eq, unknown(k, r, s), pk.at(s, cidx));
                ++eq;
            }
    }
    std::vector<Vec> ker = kernel_basis(sys);
    Vec coeffs(total, Rational(0));
    for (const auto& kv : ker) {
        Rational c = rng.small_rational(2);
        if (c.is_zero())
            continue;
        for (int i = 0; i < total; ++i)
            coeffs[i] += c * kv[i];
    }
    ChainMap f;
    f.source = source;
    f.target = target;
    for (int k = k_min; k <= k_max; ++k) {
        RationalMatrix m(target.dim(k), source.dim(k));
        for (int r = 0; r < target.dim(k); ++r)
            for (int cidx = 0; cidx < source.dim(k); ++cidx)
                m.set(r, cidx, coeffs[unknown(k, r, cidx)]);
        f.components[k] = std::move(m);
    }
    ValidationReport v = validate_chain_map(f);
    if (!v.ok())
        throw internal_error("random_chain_map_annihilating invalid:\n" + v.summary());
    return f;
}

// q_len rows stacked by vertical chain maps composing to zero.
inline DoubleComplex random_double_complex(Rng& rng, int p_len, int q_len, int max_dim) {
    if (q_len < 1)
        throw invalid_input("need at least one row");
    std::vector<Complex> rows;
    for (int q = 0; q < q_len; ++q)
        rows.push_back(random_complex(rng, 0, p_len - 1, max_dim));
    std::vector<ChainMap> verts;
    for (int q = 0; q + 1 < q_len; ++q) {
        if (q == 0)
            verts.push_back(random_chain_map(rng, rows[0], rows[1]));
        else
            verts.push_back(random_chain_map_annihilating(rng, rows[q], rows[q + 1], verts[q - 1]));
    }
    DoubleComplex d(0, p_len - 1, 0, q_len - 1);
    for (int q = 0; q < q_len; ++q)
        for (int p = 0; p < p_len; ++p) {
            d.set_dim(p, q, rows[q].dim(p));
            if (p + 1 < p_len)
                d.set_h(p, q, rows[q].d(p));
            if (q + 1 < q_len)
                d.set_v(p, q, verts[q].at(p));
        }
    ValidationReport v = validate_double(d);
    if (!v.ok())
        throw internal_error("random_double_complex invalid:\n" + v.summary());
    return d;
}

// H^k = 0 for k >= vanish_from, by direct-summing a degree-(0,1) head with
// elementary acyclic two-term pieces in higher degrees.
inline Complex random_acyclic_above(Rng& rng, int vanish_from, int k_max, int max_dim) {
    if (vanish_from < 2 || vanish_from > k_max)
        throw invalid_input("random_acyclic_above: bad vanishing degree");
    Complex c(0, k_max);
    int d0 = rng.uniform(0, max_dim), d1 = rng.uniform(0, max_dim);
    std::vector<int> cell(k_max + 1, 0);  // acyclic pieces: cell[k] at (k, k+1)
    for (int k = 1; k < k_max; ++k)
        cell[k] = rng.uniform(0, max_dim);
    c.set_dim(0, d0);
    for (int k = 1; k <= k_max; ++k)
        c.set_dim(k, (k == 1 ? d1 : 0) + cell[k - 1] + (k < k_max ? cell[k] : 0));
    // degree layout per k: [head | incoming cell (k-1) | outgoing cell (k)]
    RationalMatrix head = random_matrix(rng, d1, d0);
    for (int k = 0; k < k_max; ++k) {
        RationalMatrix m(c.dim(k + 1), c.dim(k));
        if (k == 0)
            for (int i = 0; i < d1; ++i)
                for (int j = 0; j < d0; ++j)
                    m.set(i, j, head.at(i, j));
        int head_k = k == 0 ? d0 : (k == 1 ? d1 : 0);
        int head_k1 = k + 1 == 1 ? d1 : 0;
        if (cell[k] > 0) {
            RationalMatrix iso = random_invertible(rng, cell[k]);
            int src_off = head_k + (k >= 1 ? cell[k - 1] : 0);
            int dst_off = head_k1;
            for (const auto& [rc, v] : iso.entries())
                m.set(dst_off + rc.first, src_off + rc.second, v);
        }
        c.set_diff(k, std::move(m));
    }
    ValidationReport v = validate_complex(c);
    if (!v.ok())
        throw internal_error("random_acyclic_above invalid:\n" + v.summary());
    return c;
}

inline Polynomial random_polynomial(Rng& rng, int nvars, int max_deg, int n_terms = 3) {
    Polynomial p(nvars);
    for (int t = 0; t < n_terms; ++t) {
        Monomial m(nvars, 0);
        int deg = rng.uniform(0, max_deg);
        for (int d = 0; d < deg; ++d)
            m[rng.uniform(0, nvars - 1)] += 1;
        p.add_term(m, rng.small_rational(2));
    }
    return p;
}

inline PolyMultivector random_multivector(Rng& rng, const CoordinateSpace& sp, int degree, int max_deg) {
    PolyMultivector p(sp, degree);
    auto idxs = detail::increasing_multiindices(sp.dim(), degree);
    for (const auto& idx : idxs)
        if (rng.uniform(0, 2) != 0)
            p.add_term(idx, random_polynomial(rng, sp.dim(), max_deg));
    return p;
}

}  // namespace qchain
