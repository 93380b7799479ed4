#pragma once

// Test-side oracles, independent of the implementation paths they check.

#include "qchain/lie_algebra.hpp"
#include "qchain/poisson.hpp"

namespace qchain::oracles {

// CE coefficients in the w-th symmetric power of the adjoint representation:
// the action extends ad by derivations on monomials. Used to cross-check the
// per-weight Poisson cohomology of a linear bivector through a route that
// never touches the Schouten machinery.
inline std::vector<RationalMatrix> symmetric_adjoint_rep(const LieAlgebra& g, int w) {
    std::vector<Monomial> monos = detail::monomials_of_degree(g.n, w);
    std::map<Monomial, int> pos;
    for (size_t i = 0; i < monos.size(); ++i)
        pos[monos[i]] = static_cast<int>(i);
    int dim = static_cast<int>(monos.size());
    std::vector<RationalMatrix> rho(g.n, RationalMatrix(dim, dim));
    for (int i = 0; i < g.n; ++i)
        for (int col = 0; col < dim; ++col) {
            const Monomial& m = monos[col];
            for (int j = 0; j < g.n; ++j) {
                if (m[j] == 0)
                    continue;
                Vec br = g.bracket_basis(i, j);
                for (int l = 0; l < g.n; ++l) {
                    if (br[l].is_zero())
                        continue;
                    Monomial m2 = m;
                    m2[j] -= 1;
                    m2[l] += 1;
                    rho[i].add_to(pos.at(m2), col, Rational(m[j]) * br[l]);
                }
            }
        }
    return rho;
}

}  // namespace qchain::oracles
