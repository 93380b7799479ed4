#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qchain/complex.hpp"

namespace qchain {

// Finite groupoid: objects and arrows by index, with unit/inverse maps and a
// partial composition table. comp[a][b] = a . b is defined exactly when
// src(a) = tgt(b); src(a.b) = src(b), tgt(a.b) = tgt(a).
struct FiniteGroupoid {
    std::string name;
    std::vector<std::string> objects;
    std::vector<std::string> arrow_names;
    std::vector<int> src, tgt;            // arrow -> object
    std::vector<int> unit;                // object -> arrow
    std::vector<int> inv;                 // arrow -> arrow
    std::vector<std::vector<int>> comp;   // -1 where undefined

    int n_objects() const { return static_cast<int>(objects.size()); }
    int n_arrows() const { return static_cast<int>(arrow_names.size()); }
    bool composable(int a, int b) const { return src[a] == tgt[b]; }
    int compose(int a, int b) const { return comp[a][b]; }
};

inline ValidationReport validate_groupoid(const FiniteGroupoid& g) {
    ValidationReport rep;
    int no = g.n_objects(), na = g.n_arrows();
    auto arrow = [&](int a) { return a >= 0 && a < na ? g.arrow_names[a] : "#" + std::to_string(a); };

    // structural: maps total and in range, composition defined iff composable
    if (static_cast<int>(g.src.size()) != na || static_cast<int>(g.tgt.size()) != na)
        rep.issues.push_back({"structure", "src/tgt tables sized differently from arrows"});
    if (static_cast<int>(g.unit.size()) != no)
        rep.issues.push_back({"structure", "unit table does not cover the objects"});
    if (static_cast<int>(g.inv.size()) != na)
        rep.issues.push_back({"structure", "inv table does not cover the arrows"});
    if (static_cast<int>(g.comp.size()) != na)
        rep.issues.push_back({"structure", "composition table has wrong shape"});
    if (!rep.ok())
        return rep;
    for (int a = 0; a < na; ++a) {
        if (g.src[a] < 0 || g.src[a] >= no || g.tgt[a] < 0 || g.tgt[a] >= no)
            rep.issues.push_back({"structure", "arrow " + arrow(a) + " has out-of-range endpoints"});
        if (g.inv[a] < 0 || g.inv[a] >= na)
            rep.issues.push_back({"structure", "inv(" + arrow(a) + ") out of range"});
        if (static_cast<int>(g.comp[a].size()) != na)
            rep.issues.push_back({"structure", "composition row of " + arrow(a) + " has wrong length"});
    }
    if (!rep.ok())
        return rep;
    for (int x = 0; x < no; ++x) {
        int u = g.unit[x];
        if (u < 0 || u >= na) {
            rep.issues.push_back({"structure", "unit of object " + g.objects[x] + " out of range"});
            continue;
        }
        if (g.src[u] != x || g.tgt[u] != x)
            rep.issues.push_back({"structure", "unit of " + g.objects[x] + " is not an endo-arrow at it"});
    }
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
            int c = g.comp[a][b];
            if (g.composable(a, b)) {
                if (c < 0 || c >= na)
                    rep.issues.push_back({"structure", "composition " + arrow(a) + "." + arrow(b) + " missing"});
                else if (g.src[c] != g.src[b] || g.tgt[c] != g.tgt[a])
                    rep.issues.push_back({"structure", "composition " + arrow(a) + "." + arrow(b) + " has wrong endpoints"});
            } else if (c != -1) {
                rep.issues.push_back({"structure", "composition defined on non-composable pair " + arrow(a) + "," + arrow(b)});
            }
        }
    if (!rep.ok())
        return rep;

    // algebraic: unit laws, inverses, associativity, with witnesses
    for (int a = 0; a < na; ++a) {
        if (g.compose(a, g.unit[g.src[a]]) != a)
            rep.issues.push_back({"axiom", "right unit law fails at " + arrow(a)});
        if (g.compose(g.unit[g.tgt[a]], a) != a)
            rep.issues.push_back({"axiom", "left unit law fails at " + arrow(a)});
        int ia = g.inv[a];
        if (g.src[ia] != g.tgt[a] || g.tgt[ia] != g.src[a])
            rep.issues.push_back({"axiom", "inverse of " + arrow(a) + " has wrong endpoints"});
        else {
            if (g.compose(ia, a) != g.unit[g.src[a]])
                rep.issues.push_back({"axiom", "inv(g).g != unit(src g) at " + arrow(a)});
            if (g.compose(a, ia) != g.unit[g.tgt[a]])
                rep.issues.push_back({"axiom", "g.inv(g) != unit(tgt g) at " + arrow(a)});
        }
    }
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
            if (!g.composable(a, b))
                continue;
            for (int c = 0; c < na; ++c) {
                if (!g.composable(b, c))
                    continue;
                if (g.compose(g.compose(a, b), c) != g.compose(a, g.compose(b, c))) {
                    std::ostringstream os;
                    os << "associativity fails on (" << arrow(a) << "," << arrow(b) << "," << arrow(c) << ")";
                    rep.issues.push_back({"axiom", os.str()});
                }
            }
        }
    return rep;
}

// Level k of the nerve: composable strings (g_1,...,g_k) with
// src(g_i) = tgt(g_{i+1}), enumerated lexicographically in arrow indices.
// Level 0 holds the objects.
struct NerveLevel {
    int k = 0;
    std::vector<std::vector<int>> simplices;
    std::map<std::vector<int>, int> index;

    int size() const { return static_cast<int>(simplices.size()); }
    int find(const std::vector<int>& s) const {
        auto it = index.find(s);
        if (it == index.end())
            throw internal_error("simplex not in nerve level");
        return it->second;
    }
};

inline NerveLevel nerve(const FiniteGroupoid& g, int k) {
    if (k < 0)
        throw invalid_input("nerve level must be >= 0");
    NerveLevel lvl;
    lvl.k = k;
    if (k == 0) {
        for (int x = 0; x < g.n_objects(); ++x)
            lvl.simplices.push_back({x});
    } else {
        std::vector<int> cur;
        // depth-first in arrow order keeps the enumeration lexicographic
        auto rec = [&](auto&& self, int depth) -> void {
            if (depth == k) {
                lvl.simplices.push_back(cur);
                return;
            }
            for (int a = 0; a < g.n_arrows(); ++a) {
                if (depth > 0 && g.src[cur.back()] != g.tgt[a])
                    continue;
                cur.push_back(a);
                self(self, depth + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
    }
    for (int i = 0; i < lvl.size(); ++i)
        lvl.index[lvl.simplices[i]] = i;
    return lvl;
}

// Index tables for the face maps d_0..d_k (level k -> k-1, for k >= 1) and
// the degeneracies s_1..s_{k+1} (level k -> k+1, 1-based insertion
// position). The tables realize
//   d_0 drops g_1, d_i composes g_i g_{i+1}, d_k drops g_k (level 1: src/tgt)
//   s_i inserts the unit that keeps the string composable.
struct SimplicialMaps {
    int k = 0;
    std::vector<std::vector<int>> faces;         // faces[i][s] for d_i
    std::vector<std::vector<int>> degeneracies;  // degeneracies[i-1][s] for s_i
};

inline std::vector<int> face_of(const FiniteGroupoid& g, const std::vector<int>& s, int k, int i) {
    if (k == 1)
        return {i == 0 ? g.src[s[0]] : g.tgt[s[0]]};
    std::vector<int> t;
    if (i == 0) {
        t.assign(s.begin() + 1, s.end());
    } else if (i == k) {
        t.assign(s.begin(), s.end() - 1);
    } else {
        t.assign(s.begin(), s.end());
        t[i - 1] = g.compose(s[i - 1], s[i]);
        t.erase(t.begin() + i);
    }
    return t;
}

inline std::vector<int> degeneracy_of(const FiniteGroupoid& g, const std::vector<int>& s, int k, int i) {
    // i in 1..k+1; on level 0 the string is an object
    if (k == 0)
        return {g.unit[s[0]]};
    int obj = i == 1 ? g.tgt[s[0]] : g.src[s[i - 2]];
    std::vector<int> t(s.begin(), s.end());
    t.insert(t.begin() + (i - 1), g.unit[obj]);
    return t;
}

inline SimplicialMaps simplicial_maps(const FiniteGroupoid& g, int k) {
    ValidationReport v = validate_groupoid(g);
    if (!v.ok())
        throw invalid_input("simplicial_maps of invalid groupoid:\n" + v.summary());
    NerveLevel lvl = nerve(g, k);
    NerveLevel below = k >= 1 ? nerve(g, k - 1) : NerveLevel{};
    NerveLevel above = nerve(g, k + 1);
    SimplicialMaps sm;
    sm.k = k;
    if (k >= 1) {
        sm.faces.assign(k + 1, std::vector<int>(lvl.size(), -1));
        for (int s = 0; s < lvl.size(); ++s)
            for (int i = 0; i <= k; ++i)
                sm.faces[i][s] = below.find(face_of(g, lvl.simplices[s], k, i));
    }
    sm.degeneracies.assign(k + 1, std::vector<int>(lvl.size(), -1));
    for (int s = 0; s < lvl.size(); ++s)
        for (int i = 1; i <= k + 1; ++i)
            sm.degeneracies[i - 1][s] = above.find(degeneracy_of(g, lvl.simplices[s], k, i));
    return sm;
}

// C^k = functions nerve(G,k) -> Q with differential
// delta = sum_{i=0}^{k+1} (-1)^i d_i^*.
inline Complex differentiable_complex(const FiniteGroupoid& g, int k_max) {
    ValidationReport v = validate_groupoid(g);
    if (!v.ok())
        throw invalid_input("differentiable_complex of invalid groupoid:\n" + v.summary());
    if (k_max < 1)
        throw invalid_input("k_max must be >= 1");
    Complex c(0, k_max);
    std::vector<NerveLevel> levels;
    for (int k = 0; k <= k_max; ++k) {
        levels.push_back(nerve(g, k));
        c.set_dim(k, levels[k].size());
        std::vector<std::string> lab;
        for (const auto& s : levels[k].simplices) {
            std::ostringstream os;
            os << "(";
            for (size_t i = 0; i < s.size(); ++i)
                os << (i ? "," : "") << (k == 0 ? g.objects[s[i]] : g.arrow_names[s[i]]);
            os << ")";
            lab.push_back(os.str());
        }
        c.labels[k] = std::move(lab);
    }
    for (int k = 0; k < k_max; ++k) {
        RationalMatrix m(levels[k + 1].size(), levels[k].size());
        for (int s = 0; s < levels[k + 1].size(); ++s)
            for (int i = 0; i <= k + 1; ++i) {
                int t = levels[k].find(face_of(g, levels[k + 1].simplices[s], k + 1, i));
                m.add_to(s, t, Rational(i % 2 == 0 ? 1 : -1));
            }
        c.set_diff(k, std::move(m));
    }
    return c;
}

struct NormalizedComplex {
    Complex complex;
    ChainMap inclusion;                       // normalized -> full
    std::vector<std::vector<int>> basis;      // degree -> non-degenerate simplex indices
};

// The subcomplex of cochains vanishing on all degenerate simplices, with its
// inclusion into the full complex. The inclusion is a quasi-isomorphism.
inline NormalizedComplex normalized_complex(const FiniteGroupoid& g, int k_max) {
    Complex full = differentiable_complex(g, k_max);
    std::vector<NerveLevel> levels;
    for (int k = 0; k <= k_max; ++k)
        levels.push_back(nerve(g, k));

    std::vector<std::vector<bool>> degenerate(k_max + 1);
    degenerate[0].assign(levels[0].size(), false);
    for (int k = 1; k <= k_max; ++k) {
        degenerate[k].assign(levels[k].size(), false);
        for (int s = 0; s < levels[k - 1].size(); ++s)
            for (int i = 1; i <= k; ++i)
                degenerate[k][levels[k].find(degeneracy_of(g, levels[k - 1].simplices[s], k - 1, i))] = true;
    }

    NormalizedComplex out;
    out.complex = Complex(0, k_max);
    out.basis.resize(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        for (int s = 0; s < levels[k].size(); ++s)
            if (!degenerate[k][s])
                out.basis[k].push_back(s);
        out.complex.set_dim(k, static_cast<int>(out.basis[k].size()));
        std::vector<std::string> lab;
        for (int s : out.basis[k])
            lab.push_back(full.labels[k][s]);
        out.complex.labels[k] = std::move(lab);
    }
    for (int k = 0; k < k_max; ++k) {
        RationalMatrix m(out.complex.dim(k + 1), out.complex.dim(k));
        const RationalMatrix& dk = full.diff.at(k);
        for (int sj = 0; sj < out.complex.dim(k); ++sj) {
            int col = out.basis[k][sj];
            for (int si = 0; si < out.complex.dim(k + 1); ++si)
                m.set(si, sj, dk.at(out.basis[k + 1][si], col));
            // the differential of a normalized cochain must vanish on all
            // degenerate simplices; anything else is a simplicial-identity bug
            for (int row = 0; row < levels[k + 1].size(); ++row)
                if (degenerate[k + 1][row] && !dk.at(row, col).is_zero())
                    throw internal_error("normalized subcomplex not closed under the differential");
        }
        out.complex.set_diff(k, std::move(m));
    }
    out.inclusion.source = out.complex;
    out.inclusion.target = full;
    for (int k = 0; k <= k_max; ++k) {
        RationalMatrix inc(full.dim(k), out.complex.dim(k));
        for (int j = 0; j < out.complex.dim(k); ++j)
            inc.set(out.basis[k][j], j, Rational(1));
        out.inclusion.components[k] = std::move(inc);
    }
    ValidationReport v = validate_chain_map(out.inclusion);
    if (!v.ok())
        throw internal_error("normalized inclusion is not a chain map:\n" + v.summary());
    return out;
}

// Disjoint union, relabelled; cohomology must be additive across it.
inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    FiniteGroupoid g;
    g.name = a.name + "+" + b.name;
    for (const auto& o : a.objects)
        g.objects.push_back("L." + o);
    for (const auto& o : b.objects)
        g.objects.push_back("R." + o);
    int oa = a.n_objects(), na = a.n_arrows();
    for (const auto& s : a.arrow_names)
        g.arrow_names.push_back("L." + s);
    for (const auto& s : b.arrow_names)
        g.arrow_names.push_back("R." + s);
    g.src = a.src;
    g.tgt = a.tgt;
    for (int x : b.src)
        g.src.push_back(x + oa);
    for (int x : b.tgt)
        g.tgt.push_back(x + oa);
    g.unit = a.unit;
    for (int u : b.unit)
        g.unit.push_back(u + na);
    g.inv = a.inv;
    for (int i : b.inv)
        g.inv.push_back(i + na);
    int n = g.n_arrows();
    g.comp.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            g.comp[i][j] = a.comp[i][j];
    for (int i = 0; i < b.n_arrows(); ++i)
        for (int j = 0; j < b.n_arrows(); ++j)
            g.comp[na + i][na + j] = b.comp[i][j] < 0 ? -1 : b.comp[i][j] + na;
    return g;
}

// --- catalogue constructions ---

inline FiniteGroupoid unit_groupoid(int n_objects) {
    FiniteGroupoid g;
    g.name = "unit-" + std::to_string(n_objects);
    for (int i = 0; i < n_objects; ++i) {
        g.objects.push_back("x" + std::to_string(i));
        g.arrow_names.push_back("1x" + std::to_string(i));
        g.src.push_back(i);
        g.tgt.push_back(i);
        g.unit.push_back(i);
        g.inv.push_back(i);
    }
    g.comp.assign(n_objects, std::vector<int>(n_objects, -1));
    for (int i = 0; i < n_objects; ++i)
        g.comp[i][i] = i;
    return g;
}

// Z/n as a one-object groupoid.
inline FiniteGroupoid cyclic_group_groupoid(int n) {
    FiniteGroupoid g;
    g.name = "z" + std::to_string(n);
    g.objects = {"*"};
    for (int i = 0; i < n; ++i) {
        g.arrow_names.push_back("g" + std::to_string(i));
        g.src.push_back(0);
        g.tgt.push_back(0);
        g.unit = {0};
        g.inv.push_back((n - i) % n);
    }
    g.comp.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.comp[i][j] = (i + j) % n;
    return g;
}

// Pair groupoid: one arrow (x <- y) for every ordered pair; (x,y).(y,z) = (x,z).
inline FiniteGroupoid pair_groupoid(int n) {
    FiniteGroupoid g;
    g.name = "pair-" + std::to_string(n);
    for (int i = 0; i < n; ++i)
        g.objects.push_back("x" + std::to_string(i));
    auto id_of = [n](int x, int y) { return x * n + y; };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            g.arrow_names.push_back("a" + std::to_string(x) + std::to_string(y));
            g.tgt.push_back(x);
            g.src.push_back(y);
        }
    for (int x = 0; x < n; ++x)
        g.unit.push_back(id_of(x, x));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            g.inv.push_back(0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            g.inv[id_of(x, y)] = id_of(y, x);
    int na = n * n;
    g.comp.assign(na, std::vector<int>(na, -1));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                g.comp[id_of(x, y)][id_of(y, z)] = id_of(x, z);
    return g;
}

// Action groupoid Z/2 acting on a 2-point set by the swap.
inline FiniteGroupoid action_z2_two_points() {
    FiniteGroupoid g;
    g.name = "action-z2-2pt";
    g.objects = {"p", "q"};
    // arrows (h, x): x -> h.x, h in {e, s}
    struct A { int h, x; };
    std::vector<A> arrows = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    auto act = [](int h, int x) { return h == 0 ? x : 1 - x; };
    auto id_of = [&](int h, int x) { return h * 2 + x; };
    for (const auto& a : arrows) {
        g.arrow_names.push_back(std::string(a.h == 0 ? "e" : "s") + (a.x == 0 ? "p" : "q"));
        g.src.push_back(a.x);
        g.tgt.push_back(act(a.h, a.x));
    }
    g.unit = {id_of(0, 0), id_of(0, 1)};
    for (const auto& a : arrows)
        g.inv.push_back(id_of(a.h, act(a.h, a.x)));
    g.comp.assign(4, std::vector<int>(4, -1));
    for (const auto& a : arrows)
        for (const auto& b : arrows)
            if (g.src[id_of(a.h, a.x)] == g.tgt[id_of(b.h, b.x)])
                g.comp[id_of(a.h, a.x)][id_of(b.h, b.x)] = id_of((a.h + b.h) % 2, b.x);
    return g;
}

}  // namespace qchain
