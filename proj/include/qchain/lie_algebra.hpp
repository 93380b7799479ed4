#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qchain/combinatorics.hpp"
#include "qchain/complex.hpp"

namespace qchain {

// Lie algebra given by structure constants: [e_i, e_j] = sum_k c^k_{ij} e_k,
// stored for i < j only (antisymmetry is the storage convention, Jacobi is
// checked, not assumed).
struct LieAlgebra {
    std::string name;
    int n = 0;
    std::map<std::pair<int, int>, Vec> c;  // (i,j) with i < j, 0-based

    Vec bracket_basis(int i, int j) const {
        Vec out(n, Rational(0));
        if (i == j)
            return out;
        bool flip = i > j;
        if (flip)
            std::swap(i, j);
        auto it = c.find({i, j});
        if (it == c.end())
            return out;
        out = it->second;
        if (flip)
            for (auto& x : out)
                x = -x;
        return out;
    }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec out(n, Rational(0));
        for (int i = 0; i < n; ++i) {
            if (x[i].is_zero())
                continue;
            for (int j = 0; j < n; ++j) {
                if (y[j].is_zero())
                    continue;
                Vec b = bracket_basis(i, j);
                for (int k = 0; k < n; ++k)
                    out[k] += x[i] * y[j] * b[k];
            }
        }
        return out;
    }

    void set_bracket(int i, int j, Vec coeffs) {
        if (i < 0 || j < 0 || i >= n || j >= n || i >= j)
            throw invalid_input("set_bracket expects 0 <= i < j < n");
        if (static_cast<int>(coeffs.size()) != n)
            throw invalid_input("bracket coefficient vector has wrong length");
        bool zero = true;
        for (const auto& x : coeffs)
            zero = zero && x.is_zero();
        if (zero)
            c.erase({i, j});
        else
            c[{i, j}] = std::move(coeffs);
    }
};

// Jacobi on all basis triples i < j < k; failures come with the nonzero
// cyclic sum as witness.
inline ValidationReport validate_jacobi(const LieAlgebra& g) {
    ValidationReport rep;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            for (int k = j + 1; k < g.n; ++k) {
                Vec ei(g.n, Rational(0)), ej(g.n, Rational(0)), ek(g.n, Rational(0));
                ei[i] = ej[j] = ek[k] = Rational(1);
                Vec sum = g.bracket(ei, g.bracket_basis(j, k));
                Vec t2 = g.bracket(ej, g.bracket_basis(k, i));
                Vec t3 = g.bracket(ek, g.bracket_basis(i, j));
                bool zero = true;
                std::ostringstream val;
                for (int m = 0; m < g.n; ++m) {
                    sum[m] += t2[m] + t3[m];
                    if (!sum[m].is_zero()) {
                        zero = false;
                        val << (val.tellp() > 0 ? " + " : "") << sum[m].str() << "*e" << m + 1;
                    }
                }
                if (!zero) {
                    std::ostringstream os;
                    os << "jacobiator(e" << i + 1 << ",e" << j + 1 << ",e" << k + 1 << ") = " << val.str();
                    rep.issues.push_back({"axiom", os.str()});
                }
            }
    return rep;
}

enum class Coefficients { trivial, adjoint, coadjoint };

inline std::vector<RationalMatrix> trivial_rep(const LieAlgebra& g) {
    return std::vector<RationalMatrix>(g.n, RationalMatrix(1, 1));
}

// rho_i = ad_{e_i}; column j holds [e_i, e_j].
inline std::vector<RationalMatrix> adjoint_rep(const LieAlgebra& g) {
    std::vector<RationalMatrix> rho(g.n, RationalMatrix(g.n, g.n));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            Vec b = g.bracket_basis(i, j);
            for (int k = 0; k < g.n; ++k)
                rho[i].set(k, j, b[k]);
        }
    return rho;
}

// (ad*_x xi)(y) = -xi([x, y]); as matrices, rho_i = -ad_{e_i}^T.
inline std::vector<RationalMatrix> coadjoint_rep(const LieAlgebra& g) {
    std::vector<RationalMatrix> rho = adjoint_rep(g);
    for (auto& m : rho)
        m = -(m.transpose());
    return rho;
}

// rho([e_i, e_j]) = rho_i rho_j - rho_j rho_i for all i < j.
inline ValidationReport validate_representation(const LieAlgebra& g, const std::vector<RationalMatrix>& rho) {
    ValidationReport rep;
    if (static_cast<int>(rho.size()) != g.n) {
        rep.issues.push_back({"shape", "one action matrix per basis element required"});
        return rep;
    }
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            Vec b = g.bracket_basis(i, j);
            RationalMatrix lhs(rho[0].rows(), rho[0].cols());
            for (int k = 0; k < g.n; ++k)
                if (!b[k].is_zero())
                    lhs = lhs + rho[k].scaled(b[k]);
            RationalMatrix rhs = rho[i] * rho[j] - rho[j] * rho[i];
            if (!(lhs == rhs))
                rep.issues.push_back({"axiom", "representation law fails on (e" + std::to_string(i + 1) +
                                                    ",e" + std::to_string(j + 1) + ")"});
        }
    return rep;
}

namespace detail {

inline std::string wedge_label(const std::vector<int>& s) {
    if (s.empty())
        return "1";
    std::ostringstream os;
    for (size_t i = 0; i < s.size(); ++i)
        os << (i ? "^" : "") << "e" << s[i] + 1 << "*";
    return os.str();
}

}  // namespace detail

// Chevalley-Eilenberg complex with coefficients in the representation rho on
// a module of dimension dim_v. Basis of C^k = Lambda^k g* (x) V: increasing
// multi-index (lex order, major) times module index (minor).
inline Complex ce_complex_rep(const LieAlgebra& g, const std::vector<RationalMatrix>& rho, int k_max,
                              const std::string& coeff_label) {
    ValidationReport jv = validate_jacobi(g);
    if (!jv.ok())
        throw invalid_input("ce_complex on non-Lie structure constants:\n" + jv.summary());
    ValidationReport rv = validate_representation(g, rho);
    if (!rv.ok())
        throw invalid_input("ce_complex with invalid representation:\n" + rv.summary());
    if (k_max > g.n)
        throw invalid_input("k_max exceeds the algebra dimension (cochain spaces vanish above n)");
    int dim_v = g.n == 0 ? 0 : rho[0].rows();
    Complex c(0, k_max);
    std::vector<std::vector<std::vector<int>>> bases(k_max + 1);
    std::vector<std::map<std::vector<int>, int>> pos(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        bases[k] = detail::increasing_multiindices(g.n, k);
        for (size_t i = 0; i < bases[k].size(); ++i)
            pos[k][bases[k][i]] = static_cast<int>(i);
        c.set_dim(k, static_cast<int>(bases[k].size()) * dim_v);
        std::vector<std::string> lab;
        for (const auto& s : bases[k])
            for (int m = 0; m < dim_v; ++m)
                lab.push_back(detail::wedge_label(s) + "(x)" + coeff_label + std::to_string(m + 1));
        c.labels[k] = std::move(lab);
    }
    for (int k = 0; k < k_max; ++k) {
        RationalMatrix d(c.dim(k + 1), c.dim(k));
        for (size_t ti = 0; ti < bases[k + 1].size(); ++ti) {
            const std::vector<int>& t = bases[k + 1][ti];
            // action terms: sum_i (-1)^i rho(e_{t_i}) omega(t \ t_i)
            for (int i = 0; i <= k; ++i) {
                std::vector<int> rest;
                for (int a = 0; a <= k; ++a)
                    if (a != i)
                        rest.push_back(t[a]);
                int col_block = pos[k][rest] * dim_v;
                Rational sgn(i % 2 == 0 ? 1 : -1);
                for (const auto& [rc, val] : rho[t[i]].entries())
                    d.add_to(static_cast<int>(ti) * dim_v + rc.first, col_block + rc.second, val * sgn);
            }
            // bracket terms: sum_{i<j} (-1)^{i+j} omega([e_{t_i}, e_{t_j}] ^ rest)
            for (int i = 0; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j) {
                    Vec b = g.bracket_basis(t[i], t[j]);
                    std::vector<int> rest;
                    for (int a = 0; a <= k; ++a)
                        if (a != i && a != j)
                            rest.push_back(t[a]);
                    Rational sgn((i + j) % 2 == 0 ? 1 : -1);
                    for (int l = 0; l < g.n; ++l) {
                        if (b[l].is_zero())
                            continue;
                        std::vector<int> arg = rest;
                        arg.insert(arg.begin(), l);
                        int s = detail::sort_indices(arg);
                        if (s == 0)
                            continue;
                        int col_block = pos[k][arg] * dim_v;
                        Rational f = sgn * b[l] * Rational(s);
                        for (int m = 0; m < dim_v; ++m)
                            d.add_to(static_cast<int>(ti) * dim_v + m, col_block + m, f);
                    }
                }
        }
        c.set_diff(k, std::move(d));
    }
    ValidationReport cv = validate_complex(c);
    if (!cv.ok())
        throw internal_error("CE complex failed d^2 = 0:\n" + cv.summary());
    return c;
}

inline Complex ce_complex(const LieAlgebra& g, Coefficients coeffs, int k_max) {
    switch (coeffs) {
        case Coefficients::trivial:
            return ce_complex_rep(g, trivial_rep(g), k_max, "1");
        case Coefficients::adjoint:
            return ce_complex_rep(g, adjoint_rep(g), k_max, "e");
        case Coefficients::coadjoint:
            return ce_complex_rep(g, coadjoint_rep(g), k_max, "e*");
    }
    throw internal_error("unknown coefficient module");
}

// Deformation complex C^k_def(g) = Der^{k-1}(g): over a point these are the
// antisymmetric maps Lambda^k g -> g (the symbol is identically zero and kept
// only implicitly). The differential is the multiderivation formula
//   (dD)(a_0..a_k) = sum_i (-1)^i [a_i, D(..no a_i..)]
//                  + sum_{i<j} (-1)^{i+j} D([a_i,a_j], ..no a_i, a_j..),
// evaluated literally on basis multiderivations; it must agree matrix for
// matrix with ce_complex(adjoint).
inline Complex deformation_complex(const LieAlgebra& g, int k_max) {
    ValidationReport jv = validate_jacobi(g);
    if (!jv.ok())
        throw invalid_input("deformation_complex on non-Lie structure constants:\n" + jv.summary());
    if (k_max > g.n)
        throw invalid_input("k_max exceeds the algebra dimension");
    Complex c(0, k_max);
    std::vector<std::vector<std::vector<int>>> bases(k_max + 1);
    std::vector<std::map<std::vector<int>, int>> pos(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        bases[k] = detail::increasing_multiindices(g.n, k);
        for (size_t i = 0; i < bases[k].size(); ++i)
            pos[k][bases[k][i]] = static_cast<int>(i);
        c.set_dim(k, static_cast<int>(bases[k].size()) * g.n);
        std::vector<std::string> lab;
        for (const auto& s : bases[k])
            for (int m = 0; m < g.n; ++m)
                lab.push_back("D[" + detail::wedge_label(s) + "->e" + std::to_string(m + 1) + "]");
        c.labels[k] = std::move(lab);
    }
    for (int k = 0; k < k_max; ++k) {
        RationalMatrix d(c.dim(k + 1), c.dim(k));
        // column: basis multiderivation D = (S, target m): D(e_S) = e_m
        for (size_t si = 0; si < bases[k].size(); ++si) {
            const std::vector<int>& S = bases[k][si];
            for (int m = 0; m < g.n; ++m) {
                int col = static_cast<int>(si) * g.n + m;
                auto eval_D = [&](std::vector<int> arg) -> std::pair<int, bool> {
                    int s = detail::sort_indices(arg);
                    if (s == 0 || arg != S)
                        return {0, false};
                    return {s, true};
                };
                for (size_t ti = 0; ti < bases[k + 1].size(); ++ti) {
                    const std::vector<int>& t = bases[k + 1][ti];
                    Vec value(g.n, Rational(0));
                    for (int i = 0; i <= k; ++i) {
                        std::vector<int> rest;
                        for (int a = 0; a <= k; ++a)
                            if (a != i)
                                rest.push_back(t[a]);
                        auto [sgn_eval, hit] = eval_D(rest);
                        if (!hit)
                            continue;
                        Vec br = g.bracket_basis(t[i], m);
                        Rational f = Rational(i % 2 == 0 ? 1 : -1) * Rational(sgn_eval);
                        for (int l = 0; l < g.n; ++l)
                            value[l] += f * br[l];
                    }
                    for (int i = 0; i <= k; ++i)
                        for (int j = i + 1; j <= k; ++j) {
                            Vec b = g.bracket_basis(t[i], t[j]);
                            std::vector<int> rest;
                            for (int a = 0; a <= k; ++a)
                                if (a != i && a != j)
                                    rest.push_back(t[a]);
                            for (int l = 0; l < g.n; ++l) {
                                if (b[l].is_zero())
                                    continue;
                                std::vector<int> arg = rest;
                                arg.insert(arg.begin(), l);
                                auto [sgn_eval, hit] = eval_D(arg);
                                if (!hit)
                                    continue;
                                value[m] += Rational((i + j) % 2 == 0 ? 1 : -1) * b[l] * Rational(sgn_eval);
                            }
                        }
                    for (int l = 0; l < g.n; ++l)
                        if (!value[l].is_zero())
                            d.add_to(static_cast<int>(ti) * g.n + l, col, value[l]);
                }
            }
        }
        c.set_diff(k, std::move(d));
    }
    ValidationReport cv = validate_complex(c);
    if (!cv.ok())
        throw internal_error("deformation complex failed d^2 = 0:\n" + cv.summary());
    return c;
}

// --- catalogue constructions ---

inline LieAlgebra abelian_algebra(int n) {
    LieAlgebra g;
    g.name = "abelian-R" + std::to_string(n);
    g.n = n;
    return g;
}

inline LieAlgebra so3_algebra() {
    LieAlgebra g;
    g.name = "so3";
    g.n = 3;
    g.set_bracket(0, 1, {Rational(0), Rational(0), Rational(1)});   // [e1,e2] = e3
    g.set_bracket(1, 2, {Rational(1), Rational(0), Rational(0)});   // [e2,e3] = e1
    g.set_bracket(0, 2, {Rational(0), Rational(-1), Rational(0)});  // [e3,e1] = e2
    return g;
}

inline LieAlgebra sl2_algebra() {
    LieAlgebra g;
    g.name = "sl2";
    g.n = 3;  // basis h, e, f
    g.set_bracket(0, 1, {Rational(0), Rational(2), Rational(0)});   // [h,e] = 2e
    g.set_bracket(0, 2, {Rational(0), Rational(0), Rational(-2)});  // [h,f] = -2f
    g.set_bracket(1, 2, {Rational(1), Rational(0), Rational(0)});   // [e,f] = h
    return g;
}

inline LieAlgebra heisenberg_algebra() {
    LieAlgebra g;
    g.name = "heisenberg";
    g.n = 3;
    g.set_bracket(0, 1, {Rational(0), Rational(0), Rational(1)});  // [e1,e2] = e3
    return g;
}

inline LieAlgebra aff1_algebra() {
    LieAlgebra g;
    g.name = "aff1";
    g.n = 2;
    g.set_bracket(0, 1, {Rational(0), Rational(1)});  // [e1,e2] = e2
    return g;
}

}  // namespace qchain
