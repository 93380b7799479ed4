// Acceptance suite: one pass/fail line per criterion, all comparisons exact.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "qchain/workbench.hpp"

using namespace qchain;

namespace {

struct Criterion {
    std::string label;
    double limit_seconds;
    std::function<bool(std::ostream&)> run;
};

long long binom(int a, int b) {
    if (b < 0 || b > a)
        return 0;
    long long r = 1;
    for (int i = 0; i < b; ++i)
        r = r * (a - i) / (i + 1);
    return r;
}

std::vector<LieAlgebra> catalogue_algebras() {
    return {abelian_algebra(1), abelian_algebra(2), abelian_algebra(3),
            so3_algebra(),      sl2_algebra(),      heisenberg_algebra(),
            aff1_algebra()};
}

std::vector<FiniteGroupoid> catalogue_groupoids() {
    return {unit_groupoid(3), cyclic_group_groupoid(2), cyclic_group_groupoid(3),
            pair_groupoid(2),  pair_groupoid(3),        action_z2_two_points()};
}

bool criterion_zero_poisson(std::ostream& log) {
    bool ok = true;
    for (int n : {2, 3}) {
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i)
            names.push_back("x" + std::to_string(i));
        PolyMultivector zero(CoordinateSpace(names), 2);
        PoissonCohomology pc = poisson_cohomology(zero, WeightSelector::window(0, 4), n);
        for (int w = 0; w <= 4; ++w)
            for (int k = 0; k <= n; ++k) {
                long long want = binom(n, k) * binom(n + w - 1, w);
                if (pc.dims[{k, w}] != want) {
                    log << "    n=" << n << " k=" << k << " w=" << w << ": got "
                        << pc.dims[{k, w}] << ", want " << want << "\n";
                    ok = false;
                }
            }
    }
    return ok;
}

bool criterion_so3(std::ostream& log) {
    bool ok = true;
    LieAlgebra g = so3_algebra();
    PolyMultivector pi = linear_poisson(g);
    PoissonCohomology pc = poisson_cohomology(pi, WeightSelector::window(0, 4), 3);
    if (pc.dims[{0, 2}] != 1) {
        log << "    H^0 weight 2 = " << pc.dims[{0, 2}] << ", want 1 (Casimir)\n";
        ok = false;
    }
    for (int w = 0; w <= 4; ++w)
        for (int k : {1, 2})
            if (pc.dims[{k, w}] != 0) {
                log << "    H^" << k << " weight " << w << " = " << pc.dims[{k, w}] << ", want 0\n";
                ok = false;
            }
    // independent oracle: CE with symmetric-power coefficients, same dims
    for (int w = 0; w <= 4; ++w) {
        Complex ce = ce_complex_rep(g, oracles::symmetric_adjoint_rep(g, w), 3, "S");
        CohomologyTable h = cohomology(ce);
        for (int k = 0; k <= 3; ++k)
            if (h[k].dim != pc.dims[{k, w}]) {
                log << "    oracle mismatch at k=" << k << " w=" << w << ": CE " << h[k].dim
                    << " vs Poisson " << pc.dims[{k, w}] << "\n";
                ok = false;
            }
    }
    return ok;
}

bool criterion_dgla(std::ostream& log) {
    bool ok = true;
    for (const auto& g : catalogue_algebras()) {
        int k_max = std::min(3, g.n);
        CohomologyTable hd = cohomology(deformation_complex(g, k_max));
        PoissonCohomology pc = poisson_cohomology(linear_poisson(g), WeightSelector::single(1), k_max);
        for (int k = 0; k <= k_max; ++k)
            if (pc.dims[{k, 1}] != hd[k].dim) {
                log << "    " << g.name << " k=" << k << ": weight-1 Poisson " << pc.dims[{k, 1}]
                    << " vs deformation " << hd[k].dim << "\n";
                ok = false;
            }
    }
    return ok;
}

bool criterion_two_routes(std::ostream& log) {
    bool ok = true;
    for (const auto& g : catalogue_algebras()) {
        Complex defm = deformation_complex(g, g.n);
        Complex adj = ce_complex(g, Coefficients::adjoint, g.n);
        if (defm.dims != adj.dims) {
            log << "    " << g.name << ": dimension mismatch\n";
            ok = false;
            continue;
        }
        for (int k = 0; k < g.n; ++k)
            if (!(defm.d(k) == adj.d(k))) {
                log << "    " << g.name << ": differential mismatch at degree " << k << "\n";
                ok = false;
            }
    }
    return ok;
}

bool criterion_cone_les(std::ostream& log) {
    Rng rng(kDefaultSeed);
    for (int t = 0; t < 200; ++t) {
        Complex a = random_complex(rng, 0, 4, 5);
        Complex b = random_complex(rng, 0, 4, 5);
        ChainMap f = random_chain_map(rng, a, b);
        LongExactSequence les = cone_les(f);
        if (!les.all_exact) {
            log << "    instance " << t << ": not exact\n";
            return false;
        }
        std::map<int, RationalMatrix> hf = induced_map(f);
        for (int k = 0; k <= 4; ++k)
            if (!(les.connecting_arrow(k) == hf[k])) {
                log << "    instance " << t << ": connecting map differs from H(f) at k=" << k << "\n";
                return false;
            }
    }
    return true;
}

bool criterion_two_row(std::ostream& log) {
    Rng rng(kDefaultSeed + 1);
    for (int t = 0; t < 100; ++t) {
        DoubleComplex d = random_two_row(rng, 5, 4);
        TwoRowReport rep = two_row_check(d);
        if (!rep.ok || !rep.stabilizes) {
            log << "    instance " << t << ": rows-first E2 check failed\n";
            return false;
        }
        std::vector<SpectralPage> cols = spectral_pages(d, SweepDirection::cols_first, 4);
        if (!pages_equal_dims(cols[2], cols[3]) || !page_differentials_zero(cols[2])) {
            log << "    instance " << t << ": columns-first E3 != E_infty\n";
            return false;
        }
        TotalComplex tot = total(d);
        CohomologyTable h = cohomology(tot.cx);
        for (int n = tot.cx.k_min; n <= tot.cx.k_max; ++n) {
            int sum = 0;
            for (const auto& [pq, dim] : cols[3].dims)
                if (pq.first + pq.second == n)
                    sum += dim;
            if (sum != h[n].dim) {
                log << "    instance " << t << ": columns-first E_infty sum differs at n=" << n << "\n";
                return false;
            }
        }
    }
    return true;
}

bool criterion_seven_term(std::ostream& log) {
    Rng rng(kDefaultSeed + 2);
    for (int t = 0; t < 50; ++t) {
        Complex up = random_acyclic_above(rng, 2, 4, 3);
        Complex down = random_complex(rng, 0, 4, 3);
        ChainMap f = random_chain_map(rng, up, down);
        SevenTermReport rep = seven_term_extract(cone_les(f), 2);
        if (!rep.hypothesis_ok || !rep.exact || rep.term_count != 7) {
            log << "    instance " << t << ": hypothesis/exactness/term-count failure\n";
            return false;
        }
        for (const auto& iso : rep.isos)
            if (!iso.verified) {
                log << "    instance " << t << ": H^" << iso.k << "(cone) != H^" << iso.k - 1
                    << "(target)\n";
                return false;
            }
    }
    return true;
}

bool criterion_groupoids(std::ostream& log) {
    bool ok = true;
    for (const auto& g : catalogue_groupoids()) {
        std::vector<NerveLevel> lvl;
        std::vector<SimplicialMaps> maps;
        for (int k = 0; k <= 5; ++k)
            lvl.push_back(nerve(g, k));
        for (int k = 0; k <= 5; ++k)
            maps.push_back(simplicial_maps(g, k));
        // face-face identities on levels 2..4
        for (int k = 2; k <= 4; ++k)
            for (int j = 1; j <= k; ++j)
                for (int i = 0; i < j; ++i)
                    for (int s = 0; s < lvl[k].size(); ++s)
                        if (maps[k - 1].faces[i][maps[k].faces[j][s]] !=
                            maps[k - 1].faces[j - 1][maps[k].faces[i][s]]) {
                            log << "    " << g.name << ": d_i d_j failure at level " << k << "\n";
                            ok = false;
                        }
        // face-degeneracy identities on levels 1..4
        for (int k = 1; k <= 4; ++k)
            for (int b = 1; b <= k + 1; ++b)
                for (int i = 0; i <= k + 1; ++i)
                    for (int s = 0; s < lvl[k].size(); ++s) {
                        int t = maps[k + 1].faces[i][maps[k].degeneracies[b - 1][s]];
                        int want;
                        if (i == b - 1 || i == b)
                            want = s;
                        else if (i < b - 1)
                            want = maps[k - 1].degeneracies[b - 2][maps[k].faces[i][s]];
                        else
                            want = maps[k - 1].degeneracies[b - 1][maps[k].faces[i - 1][s]];
                        if (t != want) {
                            log << "    " << g.name << ": d_i s_b failure at level " << k << "\n";
                            ok = false;
                        }
                    }
        // degeneracy-degeneracy identities on levels 0..3
        for (int k = 0; k <= 3; ++k)
            for (int a = 1; a <= k + 1; ++a)
                for (int b = a; b <= k + 1; ++b)
                    for (int s = 0; s < lvl[k].size(); ++s)
                        if (maps[k + 1].degeneracies[a - 1][maps[k].degeneracies[b - 1][s]] !=
                            maps[k + 1].degeneracies[b][maps[k].degeneracies[a - 1][s]]) {
                            log << "    " << g.name << ": s_a s_b failure at level " << k << "\n";
                            ok = false;
                        }
        Complex full = differentiable_complex(g, 4);
        if (!validate_complex(full).ok()) {
            log << "    " << g.name << ": delta^2 != 0\n";
            ok = false;
        }
        NormalizedComplex norm = normalized_complex(g, 4);
        CohomologyTable hn = cohomology(norm.complex);
        CohomologyTable hf = cohomology(full);
        for (int k = 0; k < 4; ++k)
            if (hn[k].dim != hf[k].dim) {
                log << "    " << g.name << ": normalized H^" << k << " differs\n";
                ok = false;
            }
        std::map<int, RationalMatrix> ind = induced_map(norm.inclusion);
        for (int k = 1; k < 4; ++k) {
            const RationalMatrix& m = ind[k];
            if (m.rows() != m.cols() || rank(m) != m.rows()) {
                log << "    " << g.name << ": inclusion not invertible on H^" << k << "\n";
                ok = false;
            }
        }
    }
    for (const auto& g :
         {cyclic_group_groupoid(2), cyclic_group_groupoid(3), pair_groupoid(2), pair_groupoid(3)}) {
        CohomologyTable h = cohomology(differentiable_complex(g, 4));
        if (h[0].dim != 1) {
            log << "    " << g.name << ": H^0 = " << h[0].dim << ", want 1\n";
            ok = false;
        }
        for (int k = 1; k <= 3; ++k)
            if (h[k].dim != 0) {
                log << "    " << g.name << ": H^" << k << " = " << h[k].dim << ", want 0\n";
                ok = false;
            }
    }
    return ok;
}

bool criterion_schouten_suite(std::ostream& log) {
    bool ok = true;
    CoordinateSpace sp({"x1", "x2", "x3"});
    Rng rng(kDefaultSeed + 3);
    int checked = 0;
    while (checked < 200) {
        int p = rng.uniform(0, 3), q = rng.uniform(0, 3), r = rng.uniform(0, 2);
        if ((p == 0) + (q == 0) + (r == 0) > 1)
            continue;
        ++checked;
        PolyMultivector P = random_multivector(rng, sp, p, 2);
        PolyMultivector Q = random_multivector(rng, sp, q, 2);
        PolyMultivector R = random_multivector(rng, sp, r, 2);
        Rational anti((p - 1) * (q - 1) % 2 == 0 ? -1 : 1);
        if (schouten(P, Q) != schouten(Q, P).scaled(anti)) {
            log << "    antisymmetry failure\n";
            ok = false;
        }
        Rational leib((p - 1) * q % 2 == 0 ? 1 : -1);
        if (schouten(P, detail::wedge(Q, R)) !=
            detail::wedge(schouten(P, Q), R) + detail::wedge(Q, schouten(P, R)).scaled(leib)) {
            log << "    Leibniz failure\n";
            ok = false;
        }
        Rational jac((p - 1) * (q - 1) % 2 == 0 ? 1 : -1);
        if (schouten(P, schouten(Q, R)) !=
            schouten(schouten(P, Q), R) + schouten(Q, schouten(P, R)).scaled(jac)) {
            log << "    Jacobi failure\n";
            ok = false;
        }
        if (tangent_lift(schouten(P, Q)) != schouten(tangent_lift(P), tangent_lift(Q))) {
            log << "    lift homomorphism failure\n";
            ok = false;
        }
        PolyMultivector TP = tangent_lift(P);
        if (fibre_linear_part(TP) != TP) {
            log << "    lift is not a fibre-weight-1 fixed point\n";
            ok = false;
        }
    }
    // [T pi, T pi] = 0 whenever [pi, pi] = 0, and the chain-map law per algebra
    for (const auto& g : catalogue_algebras()) {
        PolyMultivector pi = linear_poisson(g);
        if (!is_poisson(pi).ok || !is_poisson(tangent_lift(pi)).ok) {
            log << "    " << g.name << ": lifted bivector not Poisson\n";
            ok = false;
        }
        Rng xr(kDefaultSeed + 4);
        for (int t = 0; t < 20; ++t) {
            PolyMultivector x = random_multivector(xr, pi.space, xr.uniform(0, std::min(2, g.n)), 2);
            if (!map_i(x, pi).chain_check) {
                log << "    " << g.name << ": chain-map law failure\n";
                ok = false;
            }
        }
    }
    // coordinate involutions
    TangentTuple<SignedSymbol> sym{{SignedSymbol("x")},
                                   {SignedSymbol("u")},
                                   {SignedSymbol("dx")},
                                   {SignedSymbol("du")}};
    TangentTuple<SignedSymbol> rsym = reversal(sym);
    bool reversal_formula = rsym.fibre == std::vector<SignedSymbol>{SignedSymbol("du")} &&
                            rsym.dbase == std::vector<SignedSymbol>{SignedSymbol("dx", true)} &&
                            rsym.dfibre == std::vector<SignedSymbol>{SignedSymbol("u")};
    if (!reversal_formula || !(reversal(rsym) == sym) || !(canonical_flip(canonical_flip(sym)) == sym)) {
        log << "    involution formula failure on symbolic tuples\n";
        ok = false;
    }
    for (int t = 0; t < 50; ++t) {
        TangentTuple<Rational> tup;
        for (int i = 0; i < 3; ++i) {
            tup.base.push_back(rng.small_rational());
            tup.fibre.push_back(rng.small_rational());
            tup.dbase.push_back(rng.small_rational());
            tup.dfibre.push_back(rng.small_rational());
        }
        if (!(canonical_flip(canonical_flip(tup)) == tup) || !(reversal(reversal(tup)) == tup)) {
            log << "    involution failure on rational tuples\n";
            ok = false;
        }
    }
    return ok;
}

bool criterion_determinism(std::ostream& log) {
    std::ostringstream out1, err1, out2, err2;
    auto start = std::chrono::steady_clock::now();
    int c1 = run_cli({"catalogue", "run", "all"}, out1, err1);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int c2 = run_cli({"catalogue", "run", "all"}, out2, err2);
    if (c1 != kExitOk || c2 != kExitOk) {
        log << "    catalogue run failed (exit " << c1 << ", " << c2 << ")\n" << out1.str();
        return false;
    }
    if (out1.str() != out2.str()) {
        log << "    reruns differ\n";
        return false;
    }
    if (elapsed > 300.0) {
        log << "    catalogue run took " << elapsed << " s (limit 300)\n";
        return false;
    }
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"zero Poisson: dim H^k = C(n,k) C(n+w-1,w) for n in {2,3}, w <= 4", 1.0, criterion_zero_poisson},
        {"so(3): Casimir at weight 2, H^1 = H^2 = 0 in weights 0..4, CE oracle agrees", 30.0,
         criterion_so3},
        {"deformation cohomology = fibre-weight-1 Poisson cohomology on the catalogue", 10.0,
         criterion_dgla},
        {"multiderivation formula and CE-adjoint agree matrix for matrix", 5.0, criterion_two_routes},
        {"cone long exact sequence exact on 200 seeded maps, connecting = H(f)", 20.0,
         criterion_cone_les},
        {"two-row spectral sequences: rows-first E2 splitting, columns-first E3 limit, 100 seeds",
         30.0, criterion_two_row},
        {"synthetic proper pattern: 7-term sequence and isomorphisms above the cut, 50 seeds", 10.0,
         criterion_seven_term},
        {"finite groupoid nerves: simplicial identities, delta^2 = 0, normalized quasi-isomorphism",
         10.0, criterion_groupoids},
        {"Schouten/lift suite: bracket laws, lifted bivectors, chain-map law, involutions", 60.0,
         criterion_schouten_suite},
        {"determinism: catalogue reruns byte-identical within the time budget", 300.0,
         criterion_determinism},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::ostringstream log;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[i].run(log);
        } catch (const std::exception& e) {
            log << "    exception: " << e.what() << "\n";
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > criteria[i].limit_seconds) {
            log << "    time limit exceeded: " << elapsed << " s > " << criteria[i].limit_seconds
                << " s\n";
            ok = false;
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": "
                  << criteria[i].label << " (" << std::fixed << std::setprecision(2) << elapsed
                  << " s)\n";
        std::cout.unsetf(std::ios::fixed);
        if (!ok) {
            std::cout << log.str();
            ++failures;
        }
    }
    std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
