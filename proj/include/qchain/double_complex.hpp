#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qchain/complex.hpp"

namespace qchain {

using Bidegree = std::pair<int, int>;

// Bounded first-quadrant style double complex: commuting squares, horizontal
// differential to (p+1, q), vertical to (p, q+1).
struct DoubleComplex {
    int p_min = 0, p_max = 0, q_min = 0, q_max = 0;
    std::map<Bidegree, int> dims;
    std::map<Bidegree, RationalMatrix> horiz;
    std::map<Bidegree, RationalMatrix> vert;

    DoubleComplex() = default;
    DoubleComplex(int pmin, int pmax, int qmin, int qmax)
        : p_min(pmin), p_max(pmax), q_min(qmin), q_max(qmax) {
        if (pmax < pmin || qmax < qmin)
            throw invalid_input("double complex range empty");
    }

    int dim(int p, int q) const {
        auto it = dims.find({p, q});
        return it == dims.end() ? 0 : it->second;
    }
    RationalMatrix h(int p, int q) const {
        auto it = horiz.find({p, q});
        return it != horiz.end() ? it->second : RationalMatrix(dim(p + 1, q), dim(p, q));
    }
    RationalMatrix v(int p, int q) const {
        auto it = vert.find({p, q});
        return it != vert.end() ? it->second : RationalMatrix(dim(p, q + 1), dim(p, q));
    }
    void set_dim(int p, int q, int n) {
        if (p < p_min || p > p_max || q < q_min || q > q_max)
            throw invalid_input("bidegree outside range");
        dims[{p, q}] = n;
    }
    void set_h(int p, int q, RationalMatrix m) { horiz[{p, q}] = std::move(m); }
    void set_v(int p, int q, RationalMatrix m) { vert[{p, q}] = std::move(m); }
};

inline DoubleComplex transpose(const DoubleComplex& d) {
    DoubleComplex t(d.q_min, d.q_max, d.p_min, d.p_max);
    for (const auto& [pq, n] : d.dims)
        t.dims[{pq.second, pq.first}] = n;
    for (const auto& [pq, m] : d.horiz)
        t.vert[{pq.second, pq.first}] = m;
    for (const auto& [pq, m] : d.vert)
        t.horiz[{pq.second, pq.first}] = m;
    return t;
}

// Checks the three invariants (rows are complexes, columns are complexes,
// squares commute) and reports violations with their bidegrees; shape
// problems are reported separately from algebraic ones.
inline ValidationReport validate_double(const DoubleComplex& d) {
    ValidationReport rep;
    auto bid = [](int p, int q) {
        std::ostringstream os;
        os << "(" << p << "," << q << ")";
        return os.str();
    };
    for (int p = d.p_min; p <= d.p_max; ++p) {
        for (int q = d.q_min; q <= d.q_max; ++q) {
            RationalMatrix hm = d.h(p, q);
            if (hm.rows() != d.dim(p + 1, q) || hm.cols() != d.dim(p, q))
                rep.issues.push_back({"shape", "horizontal at " + bid(p, q)});
            RationalMatrix vm = d.v(p, q);
            if (vm.rows() != d.dim(p, q + 1) || vm.cols() != d.dim(p, q))
                rep.issues.push_back({"shape", "vertical at " + bid(p, q)});
        }
    }
    if (!rep.ok())
        return rep;
    for (int p = d.p_min; p <= d.p_max; ++p) {
        for (int q = d.q_min; q <= d.q_max; ++q) {
            if (p + 2 <= d.p_max + 1 && !(d.h(p + 1, q) * d.h(p, q)).is_zero())
                rep.issues.push_back({"d2", "row " + std::to_string(q) + " fails h^2 = 0 at " + bid(p, q)});
            if (q + 2 <= d.q_max + 1 && !(d.v(p, q + 1) * d.v(p, q)).is_zero())
                rep.issues.push_back({"d2", "column " + std::to_string(p) + " fails v^2 = 0 at " + bid(p, q)});
            RationalMatrix a = d.v(p + 1, q) * d.h(p, q);
            RationalMatrix b = d.h(p, q + 1) * d.v(p, q);
            if (!(a == b))
                rep.issues.push_back({"square", "square at " + bid(p, q) + " does not commute"});
        }
    }
    return rep;
}

struct TotalComplex {
    Complex cx;
    // coordinate offset of block (p,q) inside Tot^{p+q}; blocks ordered by
    // ascending p within each degree
    std::map<Bidegree, int> offset;
};

// Tot^n = (+)_{p+q=n} D^{p,q} with differential h + (-1)^p v.
inline TotalComplex total(const DoubleComplex& d) {
    ValidationReport v = validate_double(d);
    if (!v.ok())
        throw invalid_input("total of invalid double complex:\n" + v.summary());
    int n_min = d.p_min + d.q_min, n_max = d.p_max + d.q_max;
    TotalComplex t;
    t.cx = Complex(n_min, n_max);
    for (int n = n_min; n <= n_max; ++n) {
        int total_dim = 0;
        for (int p = d.p_min; p <= d.p_max; ++p) {
            int q = n - p;
            if (q < d.q_min || q > d.q_max)
                continue;
            t.offset[{p, q}] = total_dim;
            total_dim += d.dim(p, q);
        }
        t.cx.set_dim(n, total_dim);
    }
    for (int n = n_min; n < n_max; ++n) {
        RationalMatrix m(t.cx.dim(n + 1), t.cx.dim(n));
        for (int p = d.p_min; p <= d.p_max; ++p) {
            int q = n - p;
            if (q < d.q_min || q > d.q_max || d.dim(p, q) == 0)
                continue;
            int src_off = t.offset.at({p, q});
            if (p + 1 <= d.p_max && q >= d.q_min && q <= d.q_max && d.dim(p + 1, q) > 0) {
                int dst_off = t.offset.at({p + 1, q});
                RationalMatrix hm = d.h(p, q);
                for (const auto& [rc, val] : hm.entries())
                    m.add_to(dst_off + rc.first, src_off + rc.second, val);
            }
            if (q + 1 <= d.q_max && d.dim(p, q + 1) > 0) {
                int dst_off = t.offset.at({p, q + 1});
                Rational sign(p % 2 == 0 ? 1 : -1);
                RationalMatrix vm = d.v(p, q);
                for (const auto& [rc, val] : vm.entries())
                    m.add_to(dst_off + rc.first, src_off + rc.second, val * sign);
            }
        }
        t.cx.set_diff(n, std::move(m));
    }
    ValidationReport tv = validate_complex(t.cx);
    if (!tv.ok())
        throw internal_error("total complex failed d^2 = 0:\n" + tv.summary());
    return t;
}

enum class SweepDirection { rows_first, cols_first };

// One page of a spectral sequence. For cols_first the page differential is
// d_r : (p,q) -> (p+r, q-r+1); for rows_first it is (p,q) -> (p-r+1, q+r).
struct SpectralPage {
    int r = 0;
    SweepDirection direction = SweepDirection::cols_first;
    std::map<Bidegree, int> dims;
    std::map<Bidegree, RationalMatrix> d;
};

namespace detail {

// Column-filtration subquotient engine on the total complex:
//   Z_r(p, n) = { x in F_p Tot^n : D x in F_{p+r} },
//   E_r(p,q)  = Z_r(p,n) / (Z_{r-1}(p+1,n) + D Z_{r-1}(p-r+1, n-1)).
// Every space is held as a canonical basis of vectors in Tot coordinates, so
// the produced dims and d_r matrices are reproducible.
class SpectralEngine {
public:
    explicit SpectralEngine(const DoubleComplex& d) : d_(d), t_(total(d_)) {}

    const TotalComplex& tot() const { return t_; }

    std::vector<SpectralPage> pages(int r_max) {
        std::vector<SpectralPage> out;
        for (int r = 1; r <= r_max; ++r) {
            SpectralPage page;
            page.r = r;
            page.direction = SweepDirection::cols_first;
            std::map<Bidegree, std::vector<Vec>> reps;
            std::map<Bidegree, std::vector<Vec>> bnd;
            for (int p = d_.p_min; p <= d_.p_max; ++p) {
                for (int q = d_.q_min; q <= d_.q_max; ++q) {
                    int n = p + q;
                    std::vector<Vec> z = zspace(r, p, n);
                    std::vector<Vec> b = boundary_space(r, p, n);
                    std::vector<Vec> rp = quotient_basis(z, b, t_.cx.dim(n));
                    page.dims[{p, q}] = static_cast<int>(rp.size());
                    reps[{p, q}] = std::move(rp);
                    bnd[{p, q}] = std::move(b);
                }
            }
            for (int p = d_.p_min; p <= d_.p_max; ++p) {
                for (int q = d_.q_min; q <= d_.q_max; ++q) {
                    int tp = p + r, tq = q - r + 1;
                    int sdim = page.dims[{p, q}];
                    int tdim = (tp >= d_.p_min && tp <= d_.p_max && tq >= d_.q_min && tq <= d_.q_max)
                                   ? page.dims[{tp, tq}]
                                   : 0;
                    RationalMatrix m(tdim, sdim);
                    if (sdim > 0 && tdim > 0) {
                        std::vector<Vec> basis = reps[{tp, tq}];
                        const auto& bb = bnd[{tp, tq}];
                        basis.insert(basis.end(), bb.begin(), bb.end());
                        for (int j = 0; j < sdim; ++j) {
                            Vec w = t_.cx.d(p + q).apply(reps[{p, q}][j]);
                            auto coords = coordinates_in(basis, w);
                            if (!coords)
                                throw internal_error("spectral d_r image escapes its page");
                            for (int i = 0; i < tdim; ++i)
                                m.set(i, j, (*coords)[i]);
                        }
                    } else if (sdim > 0) {
                        // image must die in the quotient by the boundary space
                        for (int j = 0; j < sdim; ++j) {
                            Vec w = t_.cx.d(p + q).apply(reps[{p, q}][j]);
                            if (tp >= d_.p_min && tp <= d_.p_max && tq >= d_.q_min && tq <= d_.q_max) {
                                std::vector<Vec> probe = bnd[{tp, tq}];
                                probe.push_back(w);
                                if (rank_of_span(probe, static_cast<int>(w.size())) !=
                                    static_cast<int>(bnd[{tp, tq}].size()))
                                    throw internal_error("spectral d_r lands outside zero entry");
                            }
                        }
                    }
                    page.d[{p, q}] = std::move(m);
                }
            }
            out.push_back(std::move(page));
        }
        return out;
    }

private:
    // basis (coordinate columns) of F_p inside Tot^n
    std::vector<int> filtration_coords(int p, int n) const {
        std::vector<int> coords;
        for (int pp = std::max(p, d_.p_min); pp <= d_.p_max; ++pp) {
            int qq = n - pp;
            if (qq < d_.q_min || qq > d_.q_max || d_.dim(pp, qq) == 0)
                continue;
            int off = t_.offset.at({pp, qq});
            for (int i = 0; i < d_.dim(pp, qq); ++i)
                coords.push_back(off + i);
        }
        return coords;
    }

    std::vector<Vec> zspace(int r, int p, int n) {
        auto key = std::make_tuple(r, p, n);
        auto it = zcache_.find(key);
        if (it != zcache_.end())
            return it->second;
        std::vector<Vec> result;
        int dim_n = (n >= t_.cx.k_min && n <= t_.cx.k_max) ? t_.cx.dim(n) : 0;
        if (dim_n > 0) {
            std::vector<int> sup = filtration_coords(p, n);
            if (!sup.empty()) {
                RationalMatrix inj(dim_n, static_cast<int>(sup.size()));
                for (size_t j = 0; j < sup.size(); ++j)
                    inj.set(sup[j], static_cast<int>(j), Rational(1));
                RationalMatrix dn = (n < t_.cx.k_max) ? t_.cx.d(n) : RationalMatrix(0, dim_n);
                RationalMatrix a = dn * inj;
                // rows of a outside F_{p+r} must vanish
                std::vector<int> keep = filtration_coords(p + r, n + 1);
                std::vector<bool> in_keep(a.rows(), false);
                for (int c : keep)
                    in_keep[c] = true;
                std::vector<int> bad;
                for (int i = 0; i < a.rows(); ++i)
                    if (!in_keep[i])
                        bad.push_back(i);
                RationalMatrix sel(static_cast<int>(bad.size()), a.rows());
                for (size_t i = 0; i < bad.size(); ++i)
                    sel.set(static_cast<int>(i), bad[i], Rational(1));
                std::vector<Vec> ker = kernel_basis(sel * a);
                for (const auto& k : ker)
                    result.push_back(inj.apply(k));
                result = canonical_span(result, dim_n);
            }
        }
        zcache_[key] = result;
        return result;
    }

    std::vector<Vec> boundary_space(int r, int p, int n) {
        std::vector<Vec> b = zspace(r - 1, p + 1, n);
        std::vector<Vec> pre = zspace(r - 1, p - r + 1, n - 1);
        if (!pre.empty()) {
            RationalMatrix dprev = t_.cx.d(n - 1);
            for (const auto& x : pre)
                b.push_back(dprev.apply(x));
        }
        int dim_n = (n >= t_.cx.k_min && n <= t_.cx.k_max) ? t_.cx.dim(n) : 0;
        return canonical_span(b, dim_n);
    }

    DoubleComplex d_;
    TotalComplex t_;
    std::map<std::tuple<int, int, int>, std::vector<Vec>> zcache_;
};

}  // namespace detail

// Pages E_1..E_{r_max} with exact subquotient bases. The rows-first sweep is
// computed as the cols-first sweep of the transposed double complex.
inline std::vector<SpectralPage> spectral_pages(const DoubleComplex& d, SweepDirection dir, int r_max) {
    if (r_max < 1)
        throw invalid_input("spectral_pages: r_max must be >= 1");
    ValidationReport v = validate_double(d);
    if (!v.ok())
        throw invalid_input("spectral_pages of invalid double complex:\n" + v.summary());
    if (dir == SweepDirection::cols_first) {
        detail::SpectralEngine eng(d);
        return eng.pages(r_max);
    }
    DoubleComplex dt = transpose(d);
    detail::SpectralEngine eng(dt);
    std::vector<SpectralPage> raw = eng.pages(r_max);
    std::vector<SpectralPage> out;
    for (auto& page : raw) {
        SpectralPage p;
        p.r = page.r;
        p.direction = SweepDirection::rows_first;
        for (const auto& [pq, n] : page.dims)
            p.dims[{pq.second, pq.first}] = n;
        for (auto& [pq, m] : page.d)
            p.d[{pq.second, pq.first}] = std::move(m);
        out.push_back(std::move(p));
    }
    return out;
}

inline bool page_differentials_zero(const SpectralPage& page) {
    for (const auto& [pq, m] : page.d)
        if (!m.is_zero())
            return false;
    return true;
}

inline bool pages_equal_dims(const SpectralPage& a, const SpectralPage& b) {
    for (const auto& [pq, n] : a.dims) {
        auto it = b.dims.find(pq);
        if ((it == b.dims.end() ? 0 : it->second) != n)
            return false;
    }
    for (const auto& [pq, n] : b.dims) {
        auto it = a.dims.find(pq);
        if ((it == a.dims.end() ? 0 : it->second) != n)
            return false;
    }
    return true;
}

struct TwoRowRow {
    int k;
    int h_tot;
    int e2_k0, e2_km1_1;                // page machinery
    int e2_k0_direct, e2_km1_1_direct;  // direct subquotients of the E_2 formula
    bool sum_ok;
    bool direct_ok;
};

struct TwoRowReport {
    bool ok = false;
    bool stabilizes = false;  // rows-first E_2 = E_3
    std::vector<TwoRowRow> rows;
    std::string error;
};

// For a double complex concentrated in rows q = 0, 1: verifies
// dim H^k(Tot) = dim E_2^{k,0} + dim E_2^{k-1,1}, computing the E_2 entries
// both through the page machinery and as direct quotients of the formula's
// numerator and denominator spaces.
inline TwoRowReport two_row_check(const DoubleComplex& d) {
    TwoRowReport rep;
    ValidationReport v = validate_double(d);
    if (!v.ok()) {
        rep.error = "invalid double complex:\n" + v.summary();
        return rep;
    }
    for (const auto& [pq, n] : d.dims)
        if (n != 0 && pq.second != 0 && pq.second != 1) {
            rep.error = "nonzero entry outside rows q = 0, 1 at (" + std::to_string(pq.first) + "," +
                        std::to_string(pq.second) + ")";
            return rep;
        }

    std::vector<SpectralPage> pages = spectral_pages(d, SweepDirection::rows_first, 3);
    const SpectralPage& e2 = pages[1];
    const SpectralPage& e3 = pages[2];
    rep.stabilizes = pages_equal_dims(e2, e3) && page_differentials_zero(e2);

    TotalComplex t = total(d);
    CohomologyTable ht = cohomology(t.cx);

    auto hL = [&](int p) { return d.h(p, 0); };
    auto hU = [&](int p) { return d.h(p, 1); };
    auto vv = [&](int p) { return d.v(p, 0); };
    auto kernel_at = [&](const RationalMatrix& m, int space_dim, bool top) {
        return top ? RationalMatrix::identity(space_dim).columns() : kernel_basis(m);
    };

    auto e2_dim = [&](const SpectralPage& pg, int p, int q) {
        auto it = pg.dims.find({p, q});
        return it == pg.dims.end() ? 0 : it->second;
    };

    rep.ok = rep.stabilizes;
    for (int k = d.p_min; k <= d.p_max + 1; ++k) {
        TwoRowRow row{};
        row.k = k;
        row.h_tot = (k >= t.cx.k_min && k <= t.cx.k_max) ? ht[k].dim : 0;
        row.e2_k0 = e2_dim(e2, k, 0);
        row.e2_km1_1 = e2_dim(e2, k - 1, 1);

        // direct E_2^{k,0} = {x in ker hL_k : v x in im hU_{k-1}} / im hL_{k-1}
        if (k >= d.p_min && k <= d.p_max && d.dim(k, 0) > 0) {
            std::vector<Vec> kerL = kernel_at(hL(k), d.dim(k, 0), k == d.p_max);
            std::vector<Vec> im_u =
                k - 1 >= d.p_min ? column_space_basis(hU(k - 1)) : std::vector<Vec>{};
            std::vector<Vec> numerator;
            if (!kerL.empty()) {
                RationalMatrix kmat = RationalMatrix::from_columns(kerL, d.dim(k, 0));
                RationalMatrix vk = vv(k) * kmat;
                RationalMatrix im_mat = RationalMatrix::from_columns(im_u, d.dim(k, 1));
                std::vector<Vec> pairs = kernel_basis(RationalMatrix::augment(vk, im_mat));
                for (const auto& ab : pairs) {
                    Vec a(ab.begin(), ab.begin() + kerL.size());
                    numerator.push_back(kmat.apply(a));
                }
                numerator = canonical_span(numerator, d.dim(k, 0));
            }
            std::vector<Vec> im_l =
                k - 1 >= d.p_min ? column_space_basis(hL(k - 1)) : std::vector<Vec>{};
            row.e2_k0_direct =
                static_cast<int>(quotient_basis(numerator, im_l, d.dim(k, 0)).size());
        }

        // direct E_2^{k-1,1} = ker hU_{k-1} / (im hU_{k-2} + v(ker hL_{k-1}))
        if (k - 1 >= d.p_min && k - 1 <= d.p_max && d.dim(k - 1, 1) > 0) {
            std::vector<Vec> kerU = kernel_at(hU(k - 1), d.dim(k - 1, 1), k - 1 == d.p_max);
            std::vector<Vec> denom =
                k - 2 >= d.p_min ? column_space_basis(hU(k - 2)) : std::vector<Vec>{};
            std::vector<Vec> kerL = kernel_at(hL(k - 1), d.dim(k - 1, 0), k - 1 == d.p_max);
            for (const auto& x : kerL)
                denom.push_back(vv(k - 1).apply(x));
            row.e2_km1_1_direct = static_cast<int>(
                quotient_basis(canonical_span(kerU, d.dim(k - 1, 1)),
                               canonical_span(denom, d.dim(k - 1, 1)), d.dim(k - 1, 1))
                    .size());
        }

        row.sum_ok = row.h_tot == row.e2_k0 + row.e2_km1_1;
        row.direct_ok = row.e2_k0 == row.e2_k0_direct && row.e2_km1_1 == row.e2_km1_1_direct;
        rep.ok = rep.ok && row.sum_ok && row.direct_ok;
        rep.rows.push_back(row);
    }
    return rep;
}

struct SevenTermNode {
    std::string name;
    int degree;
    int dim;
    bool exact;
};

struct SevenTermIso {
    int k;             // H^k(Cone) ~ H^{k-1}(target)
    int dim_cone;
    int dim_target;
    bool verified;
};

struct SevenTermReport {
    bool hypothesis_ok = false;
    std::string error;
    int vanishing_from = 0;
    int term_count = 0;
    bool exact = false;
    std::vector<SevenTermNode> sequence;
    std::vector<SevenTermIso> isos;
};

// Truncates the cone long exact sequence under the vanishing hypothesis
// H^k(source) = 0 for k >= vanishing_from, reproducing the proper-groupoid
// 7-term pattern (vanishing_from = 2 gives seven terms), plus the
// isomorphisms H^k(Cone) ~ H^{k-1}(target) above the cut.
inline SevenTermReport seven_term_extract(const LongExactSequence& les, int vanishing_from) {
    SevenTermReport rep;
    rep.vanishing_from = vanishing_from;
    if (vanishing_from <= les.k_min) {
        rep.error = "vanishing_from must exceed the window minimum";
        return rep;
    }
    for (int k = vanishing_from; k <= les.k_max; ++k) {
        auto it = les.source_h.find(k);
        if (it != les.source_h.end() && it->second != 0) {
            rep.error = "vanishing hypothesis fails: H^" + std::to_string(k) +
                        "(source) has dimension " + std::to_string(it->second);
            return rep;
        }
    }
    rep.hypothesis_ok = true;

    // slots: 0 = target@k_min-1, then cone/source/target per degree
    auto cone_index = [&](int k) { return 1 + 3 * (k - les.k_min); };
    int v = vanishing_from;
    rep.exact = true;
    for (int idx = cone_index(les.k_min); idx <= cone_index(v); ++idx) {
        const LesNode& n = les.nodes[idx];
        bool node_exact = n.exact;
        if (idx == cone_index(v))
            node_exact = (n.incoming_rank == n.dim);  // surjectivity closes the sequence with 0
        rep.sequence.push_back({n.complex_name, n.degree, n.dim, node_exact});
        rep.exact = rep.exact && node_exact;
    }
    rep.term_count = static_cast<int>(rep.sequence.size());

    for (int k = v + 1; k <= les.k_max + 1; ++k) {
        const LesNode& cn = les.nodes[cone_index(k)];
        int dim_t = 0;
        auto it = les.target_h.find(k - 1);
        if (it != les.target_h.end())
            dim_t = it->second;
        const RationalMatrix& inc = les.arrows[cone_index(k) - 1].matrix;
        bool verified = cn.dim == dim_t && rank(inc) == cn.dim;
        rep.isos.push_back({k, cn.dim, dim_t, verified});
    }
    return rep;
}

// Convenience constructor used by tests and the workbench: the two-row
// double complex with row 0 the source of a chain map, row 1 its target,
// and the map as vertical differential.
inline DoubleComplex two_row_from_map(const ChainMap& vertical) {
    ValidationReport v = validate_chain_map(vertical);
    if (!v.ok())
        throw invalid_input("two_row_from_map of invalid chain map:\n" + v.summary());
    const Complex& low = vertical.source;
    const Complex& up = vertical.target;
    DoubleComplex d(low.k_min, low.k_max, 0, 1);
    for (int p = low.k_min; p <= low.k_max; ++p) {
        d.set_dim(p, 0, low.dim(p));
        d.set_dim(p, 1, up.dim(p));
        if (p < low.k_max) {
            d.set_h(p, 0, low.d(p));
            d.set_h(p, 1, up.d(p));
        }
        d.set_v(p, 0, vertical.at(p));
    }
    return d;
}

}  // namespace qchain
