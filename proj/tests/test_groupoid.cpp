#include <catch2/catch_amalgamated.hpp>

#include "qchain/groupoid.hpp"

using namespace qchain;

namespace {

std::vector<FiniteGroupoid> catalogue_groupoids() {
    return {unit_groupoid(3), cyclic_group_groupoid(2), cyclic_group_groupoid(3),
            pair_groupoid(2),  pair_groupoid(3),        action_z2_two_points()};
}

}  // namespace

TEST_CASE("catalogue groupoids satisfy all axioms") {
    for (const auto& g : catalogue_groupoids())
        CHECK(validate_groupoid(g).ok());
}

TEST_CASE("a corrupted composition table is reported with the offending triple") {
    FiniteGroupoid g = cyclic_group_groupoid(3);
    g.comp[1][1] = 0;  // g1.g1 should be g2
    ValidationReport rep = validate_groupoid(g);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& issue : rep.issues)
        found = found || issue.detail.find("associativity") != std::string::npos ||
                issue.detail.find("unit") != std::string::npos;
    CHECK(found);
}

TEST_CASE("nerve sizes: groups count |G|^k, pair groupoids count n^{k+1}") {
    FiniteGroupoid z2 = cyclic_group_groupoid(2);
    CHECK(nerve(z2, 2).size() == 4);
    FiniteGroupoid p2 = pair_groupoid(2);
    CHECK(nerve(p2, 1).size() == 4);
    FiniteGroupoid p3 = pair_groupoid(3);
    for (int k = 0; k <= 4; ++k) {
        long long want = 1;
        for (int i = 0; i <= k; ++i)
            want *= 3;
        CHECK(nerve(p3, k).size() == want);
    }
}

TEST_CASE("face maps realize drop/compose/drop") {
    FiniteGroupoid g = pair_groupoid(3);
    NerveLevel lvl2 = nerve(g, 2);
    SimplicialMaps sm = simplicial_maps(g, 2);
    NerveLevel lvl1 = nerve(g, 1);
    for (int s = 0; s < lvl2.size(); ++s) {
        const auto& simplex = lvl2.simplices[s];
        CHECK(lvl1.simplices[sm.faces[0][s]] == std::vector<int>{simplex[1]});
        CHECK(lvl1.simplices[sm.faces[1][s]] ==
              std::vector<int>{g.compose(simplex[0], simplex[1])});
        CHECK(lvl1.simplices[sm.faces[2][s]] == std::vector<int>{simplex[0]});
    }
    // level-1 faces are source and target
    SimplicialMaps sm1 = simplicial_maps(g, 1);
    NerveLevel lvl0 = nerve(g, 0);
    for (int s = 0; s < lvl1.size(); ++s) {
        int a = lvl1.simplices[s][0];
        CHECK(lvl0.simplices[sm1.faces[0][s]][0] == g.src[a]);
        CHECK(lvl0.simplices[sm1.faces[1][s]][0] == g.tgt[a]);
    }
}

TEST_CASE("degeneracies insert the unit that keeps the string composable") {
    FiniteGroupoid g = pair_groupoid(2);
    SimplicialMaps sm = simplicial_maps(g, 1);
    NerveLevel lvl1 = nerve(g, 1);
    NerveLevel lvl2 = nerve(g, 2);
    for (int s = 0; s < lvl1.size(); ++s) {
        int a = lvl1.simplices[s][0];
        CHECK(lvl2.simplices[sm.degeneracies[0][s]] ==
              std::vector<int>{g.unit[g.tgt[a]], a});
        CHECK(lvl2.simplices[sm.degeneracies[1][s]] ==
              std::vector<int>{a, g.unit[g.src[a]]});
    }
}

TEST_CASE("simplicial identities hold exhaustively to level 4") {
    for (const auto& g : catalogue_groupoids()) {
        std::vector<NerveLevel> lvl;
        std::vector<SimplicialMaps> maps;
        for (int k = 0; k <= 4; ++k) {
            lvl.push_back(nerve(g, k));
            maps.push_back(simplicial_maps(g, k));
        }
        // d_i d_j = d_{j-1} d_i for i < j, on levels 2..4
        for (int k = 2; k <= 4; ++k)
            for (int j = 1; j <= k; ++j)
                for (int i = 0; i < j; ++i)
                    for (int s = 0; s < lvl[k].size(); ++s)
                        CHECK(maps[k - 1].faces[i][maps[k].faces[j][s]] ==
                              maps[k - 1].faces[j - 1][maps[k].faces[i][s]]);
        // s_a s_b = s_{b+1} s_a for a <= b (1-based), levels 0..3
        for (int k = 0; k <= 3; ++k)
            for (int a = 1; a <= k + 1; ++a)
                for (int b = a; b <= k + 1; ++b)
                    for (int s = 0; s < lvl[k].size(); ++s)
                        CHECK(maps[k + 1].degeneracies[b + 1 - 1][maps[k].degeneracies[a - 1][s]] ==
                              maps[k + 1].degeneracies[a - 1][maps[k].degeneracies[b - 1][s]]);
        // d_i s_b: below, hitting, above (1-based degeneracy index b), levels 1..4
        for (int k = 1; k <= 4; ++k) {
            SimplicialMaps down = simplicial_maps(g, k + 1);  // faces k+1 -> k
            for (int b = 1; b <= k + 1; ++b)
                for (int i = 0; i <= k + 1; ++i)
                    for (int s = 0; s < lvl[k].size(); ++s) {
                        int t = down.faces[i][maps[k].degeneracies[b - 1][s]];
                        if (i == b - 1 || i == b)
                            CHECK(t == s);  // d_{b-1} s_b = d_b s_b = id
                        else if (i < b - 1)
                            CHECK(t == maps[k - 1].degeneracies[b - 2][maps[k].faces[i][s]]);
                        else
                            CHECK(t == maps[k - 1].degeneracies[b - 1][maps[k].faces[i - 1][s]]);
                    }
        }
    }
}

TEST_CASE("differentiable cohomology of the catalogue groupoids") {
    // unit groupoid: disjoint points
    CohomologyTable hu = cohomology(differentiable_complex(unit_groupoid(3), 4));
    CHECK(hu[0].dim == 3);
    for (int k = 1; k <= 3; ++k)
        CHECK(hu[k].dim == 0);
    // finite groups and pair groupoids over a field of characteristic zero
    for (const auto& g : {cyclic_group_groupoid(2), cyclic_group_groupoid(3), pair_groupoid(2)}) {
        CohomologyTable h = cohomology(differentiable_complex(g, 4));
        CHECK(h[0].dim == 1);
        for (int k = 1; k <= 3; ++k)
            CHECK(h[k].dim == 0);
    }
}

TEST_CASE("delta squared vanishes for every catalogue groupoid") {
    for (const auto& g : catalogue_groupoids())
        CHECK(validate_complex(differentiable_complex(g, 4)).ok());
}

TEST_CASE("normalized subcomplex: unit groupoid collapses to degree zero") {
    NormalizedComplex n = normalized_complex(unit_groupoid(3), 4);
    CHECK(n.complex.dim(0) == 3);
    for (int k = 1; k <= 4; ++k)
        CHECK(n.complex.dim(k) == 0);
    CHECK(validate_chain_map(n.inclusion).ok());
}

TEST_CASE("normalized inclusion is a quasi-isomorphism on the catalogue") {
    for (const auto& g : catalogue_groupoids()) {
        NormalizedComplex n = normalized_complex(g, 3);
        Complex full = differentiable_complex(g, 3);
        CohomologyTable hn = cohomology(n.complex);
        CohomologyTable hf = cohomology(full);
        // the window top carries no outgoing differential, so only degrees
        // below it compute the true cohomology
        for (int k = 0; k < 3; ++k)
            CHECK(hn[k].dim == hf[k].dim);
        std::map<int, RationalMatrix> ind = induced_map(n.inclusion);
        for (int k = 1; k < 3; ++k) {
            CHECK(ind[k].rows() == ind[k].cols());
            CHECK(rank(ind[k]) == ind[k].rows());
        }
    }
}

TEST_CASE("cohomology is additive over disjoint unions") {
    FiniteGroupoid a = cyclic_group_groupoid(2);
    FiniteGroupoid b = pair_groupoid(2);
    FiniteGroupoid u = disjoint_union(a, b);
    REQUIRE(validate_groupoid(u).ok());
    CohomologyTable ha = cohomology(differentiable_complex(a, 3));
    CohomologyTable hb = cohomology(differentiable_complex(b, 3));
    CohomologyTable hu = cohomology(differentiable_complex(u, 3));
    for (int k = 0; k <= 3; ++k)
        CHECK(hu[k].dim == ha[k].dim + hb[k].dim);
}
