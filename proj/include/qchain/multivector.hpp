#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qchain/combinatorics.hpp"
#include "qchain/matrix.hpp"

namespace qchain {

// Ordered coordinate labels; fibre marks single out the dotted coordinates of
// a tangent-type space. A space with no fibre marks counts as undoubled.
struct CoordinateSpace {
    std::vector<std::string> names;
    std::vector<bool> fibre;  // empty or names.size()

    CoordinateSpace() = default;
    explicit CoordinateSpace(std::vector<std::string> nm, std::vector<bool> fb = {})
        : names(std::move(nm)), fibre(std::move(fb)) {
        if (!fibre.empty() && fibre.size() != names.size())
            throw invalid_input("fibre mask length mismatch");
        std::map<std::string, int> seen;
        for (const auto& s : names)
            if (++seen[s] > 1)
                throw invalid_input("duplicate coordinate name: " + s);
    }

    int dim() const { return static_cast<int>(names.size()); }
    bool has_fibre() const {
        for (bool b : fibre)
            if (b)
                return true;
        return false;
    }
    bool is_fibre(int i) const { return !fibre.empty() && fibre[i]; }

    friend bool operator==(const CoordinateSpace& a, const CoordinateSpace& b) {
        return a.names == b.names && a.has_fibre() == b.has_fibre() &&
               [&] {
                   for (int i = 0; i < a.dim(); ++i)
                       if (a.is_fibre(i) != b.is_fibre(i))
                           return false;
                   return true;
               }();
    }
    friend bool operator!=(const CoordinateSpace& a, const CoordinateSpace& b) { return !(a == b); }
};

// Monomial as a dense exponent vector over the space's coordinates.
using Monomial = std::vector<int>;

// Polynomial with exact rational coefficients, terms kept in lexicographic
// monomial order with no zero coefficients.
struct Polynomial {
    int nvars = 0;
    std::map<Monomial, Rational> terms;

    Polynomial() = default;
    explicit Polynomial(int nv) : nvars(nv) {}

    static Polynomial constant(int nv, const Rational& c) {
        Polynomial p(nv);
        if (!c.is_zero())
            p.terms[Monomial(nv, 0)] = c;
        return p;
    }
    static Polynomial variable(int nv, int i, const Rational& c = Rational(1)) {
        Polynomial p(nv);
        if (!c.is_zero()) {
            Monomial m(nv, 0);
            m[i] = 1;
            p.terms[m] = c;
        }
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero())
            return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms)
            add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms)
            add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial p(a.nvars);
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                Monomial m = ma;
                for (int i = 0; i < p.nvars; ++i)
                    m[i] += mb[i];
                p.add_term(m, ca * cb);
            }
        return p;
    }
    Polynomial scaled(const Rational& s) const {
        Polynomial p(nvars);
        if (s.is_zero())
            return p;
        for (const auto& [m, c] : terms)
            p.terms[m] = c * s;
        return p;
    }
    Polynomial operator-() const { return scaled(Rational(-1)); }

    Polynomial derivative(int i) const {
        Polynomial p(nvars);
        for (const auto& [m, c] : terms) {
            if (m[i] == 0)
                continue;
            Monomial d = m;
            d[i] -= 1;
            p.add_term(d, c * Rational(m[i]));
        }
        return p;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string str(const std::vector<std::string>& names) const {
        if (terms.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms) {
            os << (first ? "" : " + ") << c.str();
            for (int i = 0; i < nvars; ++i)
                for (int e = 0; e < m[i]; ++e)
                    os << "*" << names[i];
            first = false;
        }
        return os.str();
    }
};

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (int e : m)
        d += e;
    return d;
}

// Multivector field of fixed degree with polynomial coefficients: a map from
// strictly increasing coordinate-direction indices to coefficient
// polynomials, zero polynomials never stored.
struct PolyMultivector {
    CoordinateSpace space;
    int degree = 0;
    std::map<std::vector<int>, Polynomial> terms;

    PolyMultivector() = default;
    // degree may exceed dim(space); such multivectors are necessarily zero
    PolyMultivector(CoordinateSpace sp, int deg) : space(std::move(sp)), degree(deg) {
        if (deg < 0)
            throw invalid_input("multivector degree out of range");
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const std::vector<int>& index, const Polynomial& p) {
        if (p.is_zero())
            return;
        for (size_t i = 0; i < index.size(); ++i) {
            if (index[i] < 0 || index[i] >= space.dim())
                throw invalid_input("multivector index out of range");
            if (i > 0 && index[i] <= index[i - 1])
                throw invalid_input("multivector index not strictly increasing");
        }
        if (static_cast<int>(index.size()) != degree)
            throw invalid_input("multivector index has wrong length");
        auto it = terms.find(index);
        if (it == terms.end()) {
            terms.emplace(index, p);
        } else {
            it->second += p;
            if (it->second.is_zero())
                terms.erase(it);
        }
    }

    // adds c * x^m * d_{idx} with idx in any order (sign normalized)
    void add_signed(std::vector<int> idx, const Monomial& m, const Rational& c) {
        int s = detail::sort_indices(idx);
        if (s == 0 || c.is_zero())
            return;
        Polynomial p(space.dim());
        p.add_term(m, c * Rational(s));
        add_term(idx, p);
    }

    PolyMultivector& operator+=(const PolyMultivector& o) {
        if (space != o.space || degree != o.degree)
            throw invalid_input("multivector sum shape mismatch");
        for (const auto& [i, p] : o.terms)
            add_term(i, p);
        return *this;
    }
    friend PolyMultivector operator+(PolyMultivector a, const PolyMultivector& b) { return a += b; }
    friend PolyMultivector operator-(const PolyMultivector& a, const PolyMultivector& b) {
        return a + b.scaled(Rational(-1));
    }
    PolyMultivector scaled(const Rational& s) const {
        PolyMultivector out(space, degree);
        if (s.is_zero())
            return out;
        for (const auto& [i, p] : terms)
            out.terms[i] = p.scaled(s);
        return out;
    }

    friend bool operator==(const PolyMultivector& a, const PolyMultivector& b) {
        return a.space == b.space && a.degree == b.degree && a.terms == b.terms;
    }
    friend bool operator!=(const PolyMultivector& a, const PolyMultivector& b) { return !(a == b); }

    std::string str() const {
        if (terms.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [idx, p] : terms) {
            os << (first ? "" : " + ") << "(" << p.str(space.names) << ")";
            for (int i : idx)
                os << "^d_" << space.names[i];
            first = false;
        }
        return os.str();
    }
};

namespace detail {

// Left odd derivative d/d(theta_c): f theta_I -> sign f theta_{I minus c}.
inline PolyMultivector theta_derivative(const PolyMultivector& p, int c) {
    PolyMultivector out(p.space, p.degree > 0 ? p.degree - 1 : 0);
    if (p.degree == 0)
        return out;
    for (const auto& [idx, poly] : p.terms) {
        auto it = std::find(idx.begin(), idx.end(), c);
        if (it == idx.end())
            continue;
        int pos = static_cast<int>(it - idx.begin());
        std::vector<int> rest;
        for (int x : idx)
            if (x != c)
                rest.push_back(x);
        Polynomial q = pos % 2 == 0 ? poly : -poly;
        out.add_term(rest, q);
    }
    return out;
}

inline PolyMultivector coeff_derivative(const PolyMultivector& p, int c) {
    PolyMultivector out(p.space, p.degree);
    for (const auto& [idx, poly] : p.terms)
        out.add_term(idx, poly.derivative(c));
    return out;
}

inline PolyMultivector wedge(const PolyMultivector& a, const PolyMultivector& b) {
    if (a.space != b.space)
        throw invalid_input("wedge across different spaces");
    PolyMultivector out(a.space, a.degree + b.degree);
    for (const auto& [ia, pa] : a.terms)
        for (const auto& [ib, pb] : b.terms) {
            std::vector<int> idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            int s = sort_indices(idx);
            if (s == 0)
                continue;
            Polynomial q = pa * pb;
            if (s < 0)
                q = -q;
            out.add_term(idx, q);
        }
    return out;
}

}  // namespace detail

// Schouten-Nijenhuis bracket, fixed by [X, f] = X(f), the graded Leibniz rule
// and graded antisymmetry. In the odd-coordinate picture with P of degree p:
//   [P,Q] = (-1)^{p-1} sum_c dP/d(theta_c) ^ dQ/dx_c  -  sum_c dP/dx_c ^ dQ/d(theta_c).
inline PolyMultivector schouten(const PolyMultivector& p, const PolyMultivector& q) {
    if (p.space != q.space)
        throw invalid_input("schouten bracket across different spaces");
    if (p.degree + q.degree == 0)
        return PolyMultivector(p.space, 0);  // [f, g] = 0
    PolyMultivector out(p.space, p.degree + q.degree - 1);
    Rational lead(p.degree % 2 == 0 ? -1 : 1);  // (-1)^{p-1}
    for (int c = 0; c < p.space.dim(); ++c) {
        if (p.degree > 0)
            out += detail::wedge(detail::theta_derivative(p, c), detail::coeff_derivative(q, c))
                       .scaled(lead);
        if (q.degree > 0)
            out += detail::wedge(detail::coeff_derivative(p, c), detail::theta_derivative(q, c))
                       .scaled(Rational(-1));
    }
    return out;
}

// Doubled space of V: base coordinates first, then their dotted fibre copies.
inline CoordinateSpace tangent_space(const CoordinateSpace& v) {
    std::vector<std::string> names = v.names;
    for (const auto& s : v.names)
        names.push_back(s + "_dot");
    std::vector<bool> fibre(names.size(), false);
    for (int i = v.dim(); i < static_cast<int>(names.size()); ++i)
        fibre[i] = true;
    return CoordinateSpace(std::move(names), std::move(fibre));
}

// Tangent (complete) lift: on a monomial term f d_{i_1}^...^d_{i_k},
//   T(f dI) = fdot d_{i_1 dot}^...^d_{i_k dot}
//           + f sum_j d_{i_1 dot}^...^d_{x_{i_j}}^...^d_{i_k dot},
// with fdot = sum_a x_a_dot df/dx_a. The result is fibre-weight homogeneous
// of weight one.
inline PolyMultivector tangent_lift(const PolyMultivector& p) {
    if (p.space.has_fibre())
        throw invalid_input("tangent_lift expects an undoubled space");
    int n = p.space.dim();
    CoordinateSpace tv = tangent_space(p.space);
    PolyMultivector out(tv, p.degree);
    auto inject = [&](const Monomial& m) {
        Monomial d(2 * n, 0);
        for (int i = 0; i < n; ++i)
            d[i] = m[i];
        return d;
    };
    for (const auto& [idx, poly] : p.terms) {
        for (const auto& [m, c] : poly.terms) {
            // fdot part: derivative monomials times a dotted variable
            for (int a = 0; a < n; ++a) {
                if (m[a] == 0)
                    continue;
                Monomial d = inject(m);
                d[a] -= 1;
                d[n + a] += 1;
                std::vector<int> didx;
                for (int i : idx)
                    didx.push_back(n + i);
                out.add_signed(didx, d, c * Rational(m[a]));
            }
            // mixed parts: one base direction, the rest dotted
            for (size_t j = 0; j < idx.size(); ++j) {
                std::vector<int> mix;
                for (size_t i = 0; i < idx.size(); ++i)
                    mix.push_back(i == j ? idx[i] : n + idx[i]);
                out.add_signed(mix, inject(m), c);
            }
        }
    }
    return out;
}

// Fibre weight of one (monomial, index) term: fibre degree of the coefficient
// plus the number of base directions in the index.
inline int fibre_weight(const CoordinateSpace& sp, const Monomial& m, const std::vector<int>& idx) {
    int w = 0;
    for (int i = 0; i < sp.dim(); ++i)
        if (sp.is_fibre(i))
            w += m[i];
    for (int i : idx)
        if (!sp.is_fibre(i))
            ++w;
    return w;
}

// Terms of fibre weight exactly one; tangent lifts are fixed points.
inline PolyMultivector fibre_linear_part(const PolyMultivector& p) {
    if (!p.space.has_fibre())
        throw invalid_input("fibre_linear_part expects a space with a fibre mask");
    PolyMultivector out(p.space, p.degree);
    for (const auto& [idx, poly] : p.terms) {
        Polynomial keep(p.space.dim());
        for (const auto& [m, c] : poly.terms)
            if (fibre_weight(p.space, m, idx) == 1)
                keep.add_term(m, c);
        out.add_term(idx, keep);
    }
    return out;
}

// --- coordinate involutions on labelled 4-tuples (the appendix formulas) ---

// Symbolic atom with a sign, enough to state the involution identities.
struct SignedSymbol {
    std::string name;
    bool negative = false;

    SignedSymbol() = default;
    SignedSymbol(std::string nm, bool neg = false) : name(std::move(nm)), negative(neg) {}
    SignedSymbol operator-() const { return SignedSymbol(name, !negative); }
    friend bool operator==(const SignedSymbol& a, const SignedSymbol& b) {
        return a.name == b.name && a.negative == b.negative;
    }
    std::string str() const { return (negative ? "-" : "") + name; }
};

template <class T>
struct TangentTuple {
    std::vector<T> base, fibre, dbase, dfibre;

    friend bool operator==(const TangentTuple& a, const TangentTuple& b) {
        return a.base == b.base && a.fibre == b.fibre && a.dbase == b.dbase && a.dfibre == b.dfibre;
    }
};

template <class T>
void check_blocks(const TangentTuple<T>& t) {
    if (t.base.size() != t.fibre.size() || t.base.size() != t.dbase.size() ||
        t.base.size() != t.dfibre.size())
        throw invalid_input("tuple blocks of unequal length");
}

// J(x, xdot, dx, dxdot) = (x, dx, xdot, dxdot): the canonical flip.
template <class T>
TangentTuple<T> canonical_flip(const TangentTuple<T>& t) {
    check_blocks(t);
    return {t.base, t.dbase, t.fibre, t.dfibre};
}

// R_A(x, u, dx, du) = (x, du, -dx, u): the reversal isomorphism; applying the
// formula twice returns the original tuple (R_{A*} = R_A^{-1}).
template <class T>
TangentTuple<T> reversal(const TangentTuple<T>& t) {
    check_blocks(t);
    TangentTuple<T> out{t.base, t.dfibre, t.dbase, t.fibre};
    for (auto& x : out.dbase)
        x = -x;
    return out;
}

}  // namespace qchain
