#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qchain/complex.hpp"
#include "qchain/lie_algebra.hpp"
#include "qchain/multivector.hpp"

namespace qchain {

// Kirillov-Kostant-Souriau bivector on g*: pi = sum_{i<j} (sum_k c^k_{ij} xi_k) d_i ^ d_j,
// so that {xi_i, xi_j} = <., [e_i, e_j]>.
inline PolyMultivector linear_poisson(const LieAlgebra& g) {
    ValidationReport v = validate_jacobi(g);
    if (!v.ok())
        throw invalid_input("linear_poisson of non-Lie structure constants:\n" + v.summary());
    std::vector<std::string> names;
    for (int i = 0; i < g.n; ++i)
        names.push_back("xi" + std::to_string(i + 1));
    CoordinateSpace sp(names);
    PolyMultivector pi(sp, 2);
    for (const auto& [ij, coeffs] : g.c) {
        Polynomial p(g.n);
        for (int k = 0; k < g.n; ++k) {
            if (coeffs[k].is_zero())
                continue;
            Monomial m(g.n, 0);
            m[k] = 1;
            p.add_term(m, coeffs[k]);
        }
        pi.add_term({ij.first, ij.second}, p);
    }
    return pi;
}

struct PoissonCheck {
    bool ok = false;
    PolyMultivector witness;  // [pi, pi]; zero exactly when ok
};

inline PoissonCheck is_poisson(const PolyMultivector& pi) {
    if (pi.degree != 2)
        throw invalid_input("is_poisson expects a bivector");
    PoissonCheck out;
    out.witness = schouten(pi, pi);
    out.ok = out.witness.is_zero();
    return out;
}

// Weight selector for the Poisson complex: explicit base weights, or the
// window 0..D.
struct WeightSelector {
    std::vector<int> weights;

    static WeightSelector single(int w) { return {{w}}; }
    static WeightSelector window(int lo, int hi) {
        if (lo > hi || lo < 0)
            throw invalid_input("bad weight window");
        WeightSelector s;
        for (int w = lo; w <= hi; ++w)
            s.weights.push_back(w);
        return s;
    }
};

namespace detail {

inline std::vector<Monomial> monomials_of_degree(int nvars, int deg) {
    std::vector<Monomial> out;
    Monomial cur(nvars, 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == nvars - 1) {
            cur[var] = left;
            out.push_back(cur);
            cur[var] = 0;
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[var] = e;
            self(self, var + 1, left - e);
        }
        cur[var] = 0;
    };
    if (nvars == 0) {
        if (deg == 0)
            out.push_back({});
        return out;
    }
    if (deg >= 0)
        rec(rec, 0, deg);
    // keep lexicographic-map order: sort ascending like std::map does
    std::sort(out.begin(), out.end());
    return out;
}

// uniform coefficient degree of a multivector; nullopt when inhomogeneous,
// 1 for the zero multivector (the weight-preserving convention)
inline std::optional<int> homogeneous_degree(const PolyMultivector& p) {
    std::set<int> degs;
    for (const auto& [idx, poly] : p.terms)
        for (const auto& [m, c] : poly.terms)
            degs.insert(monomial_degree(m));
    if (degs.empty())
        return 1;
    if (degs.size() > 1)
        return std::nullopt;
    return *degs.begin();
}

}  // namespace detail

// One weight-graded block of the Poisson complex of a homogeneous pi of
// coefficient degree h: C^k holds the k-multivectors with coefficient degree
// w + k(h-1) (for linear pi the weight w is preserved across the complex),
// with d = [pi, .]. Each block is a finite complex with exact d^2 = 0.
inline Complex poisson_complex(const PolyMultivector& pi, int w, int k_max) {
    PoissonCheck pc = is_poisson(pi);
    if (!pc.ok)
        throw invalid_input("poisson_complex with non-Poisson bivector; [pi,pi] = " + pc.witness.str());
    auto h = detail::homogeneous_degree(pi);
    if (!h)
        throw invalid_input(
            "poisson_complex per single weight needs a homogeneous bivector; use the weight window");
    int n = pi.space.dim();
    if (k_max < 1)
        throw invalid_input("k_max must be >= 1");

    Complex c(0, k_max);
    struct BasisElem {
        std::vector<int> idx;
        Monomial mono;
    };
    std::vector<std::vector<BasisElem>> bases(k_max + 1);
    std::vector<std::map<std::pair<std::vector<int>, Monomial>, int>> pos(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        int coeff_deg = w + k * (*h - 1);
        std::vector<BasisElem> basis;
        if (coeff_deg >= 0 && k <= n) {
            auto idxs = detail::increasing_multiindices(n, k);
            auto monos = detail::monomials_of_degree(n, coeff_deg);
            for (const auto& idx : idxs)
                for (const auto& m : monos)
                    basis.push_back({idx, m});
        }
        for (size_t i = 0; i < basis.size(); ++i)
            pos[k][{basis[i].idx, basis[i].mono}] = static_cast<int>(i);
        c.set_dim(k, static_cast<int>(basis.size()));
        std::vector<std::string> lab;
        for (const auto& b : basis) {
            Polynomial p(n);
            p.add_term(b.mono, Rational(1));
            PolyMultivector mv(pi.space, k);
            mv.add_term(b.idx, p);
            lab.push_back(mv.str());
        }
        c.labels[k] = std::move(lab);
        bases[k] = std::move(basis);
    }
    for (int k = 0; k < k_max; ++k) {
        RationalMatrix d(c.dim(k + 1), c.dim(k));
        for (size_t j = 0; j < bases[k].size(); ++j) {
            Polynomial p(n);
            p.add_term(bases[k][j].mono, Rational(1));
            PolyMultivector mv(pi.space, k);
            mv.add_term(bases[k][j].idx, p);
            PolyMultivector img = schouten(pi, mv);
            for (const auto& [idx, poly] : img.terms)
                for (const auto& [m, coef] : poly.terms) {
                    auto it = pos[k + 1].find({idx, m});
                    if (it == pos[k + 1].end())
                        throw internal_error("d_pi image leaves the weight block");
                    d.add_to(it->second, static_cast<int>(j), coef);
                }
        }
        c.set_diff(k, std::move(d));
    }
    ValidationReport cv = validate_complex(c);
    if (!cv.ok())
        throw internal_error("poisson weight complex failed d^2 = 0:\n" + cv.summary());
    return c;
}

// Window complex for an inhomogeneous bivector: C^k holds every coefficient
// degree up to the window top, and the differential is the quotient of d_pi
// onto the window. Dropping the escaping terms is only legitimate when every
// coefficient degree of pi is at least 1 (weights never drop back), so other
// bivectors are refused. Cohomology near the top weight is truncated data;
// the labels carry the flag.
inline Complex poisson_window_complex(const PolyMultivector& pi, int window_top, int k_max) {
    PoissonCheck pc = is_poisson(pi);
    if (!pc.ok)
        throw invalid_input("poisson_complex with non-Poisson bivector; [pi,pi] = " + pc.witness.str());
    if (k_max < 1 || window_top < 0)
        throw invalid_input("bad window parameters");
    int h_min = window_top + 1;
    for (const auto& [idx, poly] : pi.terms)
        for (const auto& [m, c] : poly.terms)
            h_min = std::min(h_min, monomial_degree(m));
    if (!pi.is_zero() && h_min < 1)
        throw invalid_input(
            "weight window needs every coefficient degree of pi to be >= 1; constant terms would "
            "leave the window downwards");
    int n = pi.space.dim();
    Complex c(0, k_max);
    struct BasisElem {
        std::vector<int> idx;
        Monomial mono;
    };
    std::vector<std::vector<BasisElem>> bases(k_max + 1);
    std::vector<std::map<std::pair<std::vector<int>, Monomial>, int>> pos(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        std::vector<BasisElem> basis;
        if (k <= n) {
            auto idxs = detail::increasing_multiindices(n, k);
            for (const auto& idx : idxs)
                for (int w = 0; w <= window_top; ++w)
                    for (const auto& m : detail::monomials_of_degree(n, w))
                        basis.push_back({idx, m});
        }
        for (size_t i = 0; i < basis.size(); ++i)
            pos[k][{basis[i].idx, basis[i].mono}] = static_cast<int>(i);
        c.set_dim(k, static_cast<int>(basis.size()));
        std::vector<std::string> lab;
        for (const auto& b : basis) {
            Polynomial p(n);
            p.add_term(b.mono, Rational(1));
            PolyMultivector mv(pi.space, k);
            mv.add_term(b.idx, p);
            lab.push_back(mv.str() + " [window<=" + std::to_string(window_top) + "]");
        }
        c.labels[k] = std::move(lab);
        bases[k] = std::move(basis);
    }
    for (int k = 0; k < k_max; ++k) {
        RationalMatrix d(c.dim(k + 1), c.dim(k));
        for (size_t j = 0; j < bases[k].size(); ++j) {
            Polynomial p(n);
            p.add_term(bases[k][j].mono, Rational(1));
            PolyMultivector mv(pi.space, k);
            mv.add_term(bases[k][j].idx, p);
            PolyMultivector img = schouten(pi, mv);
            for (const auto& [idx, poly] : img.terms)
                for (const auto& [m, coef] : poly.terms) {
                    auto it = pos[k + 1].find({idx, m});
                    if (it == pos[k + 1].end())
                        continue;  // escaped above the window: quotient
                    d.add_to(it->second, static_cast<int>(j), coef);
                }
        }
        c.set_diff(k, std::move(d));
    }
    ValidationReport cv = validate_complex(c);
    if (!cv.ok())
        throw internal_error("poisson window complex failed d^2 = 0:\n" + cv.summary());
    return c;
}

// The operation-level entry point: a homogeneous bivector with a single
// weight gives that weight block; a weight window on a homogeneous bivector
// gives the direct sum of its blocks; an inhomogeneous bivector goes through
// the quotient window.
struct PoissonComplexSpec {
    PolyMultivector pi;
    WeightSelector weight;
    int k_max = 1;
};

inline Complex poisson_complex(const PoissonComplexSpec& spec) {
    auto h = detail::homogeneous_degree(spec.pi);
    if (!h) {
        if (spec.weight.weights.size() < 2)
            throw invalid_input("inhomogeneous bivector needs a weight window");
        return poisson_window_complex(spec.pi, spec.weight.weights.back(), spec.k_max);
    }
    if (spec.weight.weights.size() == 1)
        return poisson_complex(spec.pi, spec.weight.weights[0], spec.k_max);
    // direct sum of the weight blocks
    Complex sum(0, spec.k_max);
    std::vector<Complex> blocks;
    for (int w : spec.weight.weights)
        blocks.push_back(poisson_complex(spec.pi, w, spec.k_max));
    for (int k = 0; k <= spec.k_max; ++k) {
        int dim = 0;
        std::vector<std::string> lab;
        for (const auto& b : blocks) {
            dim += b.dim(k);
            if (b.labels.count(k))
                lab.insert(lab.end(), b.labels.at(k).begin(), b.labels.at(k).end());
        }
        sum.set_dim(k, dim);
        sum.labels[k] = std::move(lab);
    }
    for (int k = 0; k < spec.k_max; ++k) {
        RationalMatrix d(sum.dim(k + 1), sum.dim(k));
        int row_off = 0, col_off = 0;
        for (const auto& b : blocks) {
            RationalMatrix bd = b.d(k);
            for (const auto& [rc, v] : bd.entries())
                d.set(row_off + rc.first, col_off + rc.second, v);
            row_off += b.dim(k + 1);
            col_off += b.dim(k);
        }
        sum.set_diff(k, std::move(d));
    }
    return sum;
}

// Cohomology of the Poisson complex per weight: rows (k, w) -> dim H.
struct PoissonCohomology {
    std::map<std::pair<int, int>, int> dims;  // (degree k, weight w)
    std::map<int, Complex> blocks;            // weight -> complex
};

inline PoissonCohomology poisson_cohomology(const PolyMultivector& pi, const WeightSelector& sel, int k_max) {
    PoissonCohomology out;
    for (int w : sel.weights) {
        Complex c = poisson_complex(pi, w, k_max);
        CohomologyTable h = cohomology(c);
        for (int k = 0; k <= k_max; ++k)
            out.dims[{k, w}] = h[k].dim;
        out.blocks[w] = std::move(c);
    }
    return out;
}

struct MapIResult {
    PolyMultivector lifted;  // i(X) stored as the fibre-linear lift of X
    bool chain_check = false;
};

// The map i realized as the tangent lift of multivector fields: the returned
// multivector represents i(X) through the multiderivation identification,
// and chain_check confirms [T pi, T X] = T([pi, X]), the chain-map law in
// the lifted picture.
inline MapIResult map_i(const PolyMultivector& x, const PolyMultivector& pi) {
    if (x.space != pi.space)
        throw invalid_input("map_i arguments on different spaces");
    PoissonCheck pc = is_poisson(pi);
    if (!pc.ok)
        throw invalid_input("map_i with non-Poisson bivector");
    MapIResult out;
    out.lifted = tangent_lift(x);
    PolyMultivector lhs = schouten(tangent_lift(pi), out.lifted);
    PolyMultivector rhs = tangent_lift(schouten(pi, x));
    out.chain_check = lhs == rhs;
    return out;
}

}  // namespace qchain
