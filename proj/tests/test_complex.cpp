#include <catch2/catch_amalgamated.hpp>

#include "qchain/complex.hpp"
#include "qchain/rand.hpp"

using namespace qchain;

namespace {

RationalMatrix scalar(long v) {
    RationalMatrix m(1, 1);
    m.set(0, 0, Rational(v));
    return m;
}

// Q --(x)--> Q --(y)--> Q in degrees 0..2
Complex three_term(long x, long y) {
    Complex c(0, 2);
    c.set_dim(0, 1);
    c.set_dim(1, 1);
    c.set_dim(2, 1);
    c.set_diff(0, scalar(x));
    c.set_diff(1, scalar(y));
    return c;
}

ChainMap identity_map(const Complex& c) {
    ChainMap f;
    f.source = c;
    f.target = c;
    for (int k = c.k_min; k <= c.k_max; ++k)
        f.components[k] = RationalMatrix::identity(c.dim(k));
    return f;
}

}  // namespace

TEST_CASE("validate_complex separates shape errors from d^2 failures") {
    Complex ok(0, 2);
    ok.set_dim(0, 2);
    ok.set_dim(1, 2);
    ok.set_dim(2, 2);
    CHECK(validate_complex(ok).ok());  // zero differentials

    Complex bad = three_term(1, 1);
    ValidationReport rep = validate_complex(bad);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.issues[0].kind == "d2");

    Complex shape = three_term(1, 0);
    shape.diff[0] = RationalMatrix(2, 2);
    ValidationReport rep2 = validate_complex(shape);
    REQUIRE_FALSE(rep2.ok());
    CHECK(rep2.issues[0].kind == "shape");

    Complex koszul = three_term(0, 1);
    CHECK(validate_complex(koszul).ok());
}

TEST_CASE("cohomology dims and window flags") {
    Complex zero(0, 3);
    for (int k = 0; k <= 3; ++k)
        zero.set_dim(k, k + 1);
    CohomologyTable h = cohomology(zero);
    for (int k = 0; k <= 3; ++k)
        CHECK(h[k].dim == k + 1);
    CHECK(h[0].window_truncated);
    CHECK_FALSE(h[1].window_truncated);
    CHECK(h[3].window_truncated);

    Complex idc(0, 1);
    idc.set_dim(0, 1);
    idc.set_dim(1, 1);
    idc.set_diff(0, scalar(1));
    CohomologyTable hi = cohomology(idc);
    CHECK(hi[0].dim == 0);
    CHECK(hi[1].dim == 0);

    // 0 -> Q --(2)--> Q -> 0: multiplication by 2 is invertible over Q
    Complex twoc(0, 1);
    twoc.set_dim(0, 1);
    twoc.set_dim(1, 1);
    twoc.set_diff(0, scalar(2));
    CohomologyTable h2 = cohomology(twoc);
    CHECK(h2[0].dim == 0);
    CHECK(h2[1].dim == 0);

    CHECK_THROWS_AS(cohomology(three_term(1, 1)), invalid_input);
}

TEST_CASE("cone of the zero map sums cohomologies with a shift") {
    Rng rng(5);
    Complex a = random_complex(rng, 0, 3, 4);
    Complex b = random_complex(rng, 0, 3, 4);
    ChainMap zero;
    zero.source = a;
    zero.target = b;
    ConeResult cr = cone(zero);
    CHECK(validate_complex(cr.complex).ok());
    CohomologyTable hc = cohomology(cr.complex);
    CohomologyTable ha = cohomology(a);
    CohomologyTable hb = cohomology(b);
    for (int n = 0; n <= 4; ++n) {
        int want = (n <= 3 ? ha[n].dim : 0) + (n - 1 >= 0 && n - 1 <= 3 ? hb[n - 1].dim : 0);
        CHECK(hc[n].dim == want);
    }
}

TEST_CASE("cone of an isomorphism is acyclic") {
    Rng rng(6);
    Complex a = random_complex(rng, 0, 3, 4);
    ConeResult cr = cone(identity_map(a));
    CohomologyTable hc = cohomology(cr.complex);
    for (int n = 0; n <= 4; ++n)
        CHECK(hc[n].dim == 0);

    // times two on a point complex
    Complex pt(0, 0);
    pt.set_dim(0, 1);
    ChainMap two;
    two.source = pt;
    two.target = pt;
    two.components[0] = scalar(2);
    CohomologyTable h2 = cohomology(cone(two).complex);
    CHECK(h2[0].dim == 0);
    CHECK(h2[1].dim == 0);
}

TEST_CASE("cone rejects maps that violate the chain-map law") {
    Complex a = three_term(0, 1);
    ChainMap f;
    f.source = a;
    f.target = three_term(1, 0);
    f.components[0] = scalar(1);
    f.components[1] = scalar(1);
    f.components[2] = scalar(1);
    CHECK_FALSE(validate_chain_map(f).ok());
    CHECK_THROWS_AS(cone(f), invalid_input);
}

TEST_CASE("euler characteristic of the cone") {
    Rng rng(8);
    for (int t = 0; t < 10; ++t) {
        Complex a = random_complex(rng, 0, 4, 5);
        Complex b = random_complex(rng, 0, 4, 5);
        ChainMap f = random_chain_map(rng, a, b);
        ConeResult cr = cone(f);
        // Cone^n = source^n + target^{n-1}: alternating sums give chi(src) - chi(tgt)
        CHECK(cr.complex.euler_characteristic() ==
              a.euler_characteristic() - b.euler_characteristic());
    }
}

TEST_CASE("cone long exact sequence is exact for seeded random maps") {
    Rng rng(9);
    for (int t = 0; t < 15; ++t) {
        Complex a = random_complex(rng, 0, 4, 5);
        Complex b = random_complex(rng, 0, 4, 5);
        ChainMap f = random_chain_map(rng, a, b);
        LongExactSequence les = cone_les(f);
        CHECK(les.all_exact);
        // connecting homomorphism is H(f)
        std::map<int, RationalMatrix> hf = induced_map(f);
        for (int k = 0; k <= 4; ++k)
            CHECK(les.connecting_arrow(k) == hf[k]);
    }
}

TEST_CASE("zero map splits the sequence; identity makes the cone vanish") {
    Rng rng(10);
    Complex a = random_complex(rng, 0, 3, 4);
    ChainMap zero;
    zero.source = a;
    zero.target = a;
    LongExactSequence lz = cone_les(zero);
    CHECK(lz.all_exact);
    for (int k = 0; k <= 3; ++k)
        CHECK(lz.connecting_arrow(k).is_zero());

    LongExactSequence li = cone_les(identity_map(a));
    CHECK(li.all_exact);
    for (int k = 0; k <= 4; ++k)
        CHECK(li.cone_h[k] == 0);
}

TEST_CASE("induced maps compose functorially") {
    Rng rng(12);
    for (int t = 0; t < 8; ++t) {
        Complex a = random_complex(rng, 0, 3, 4);
        Complex b = random_complex(rng, 0, 3, 4);
        Complex c = random_complex(rng, 0, 3, 4);
        ChainMap f = random_chain_map(rng, a, b);
        ChainMap g = random_chain_map(rng, b, c);
        std::map<int, RationalMatrix> hf = induced_map(f);
        std::map<int, RationalMatrix> hg = induced_map(g);
        std::map<int, RationalMatrix> hgf = induced_map(compose(g, f));
        for (int k = 0; k <= 3; ++k)
            CHECK(hgf[k] == hg[k] * hf[k]);
    }
    // identity and zero maps
    Complex a = random_complex(rng, 0, 3, 4);
    std::map<int, RationalMatrix> hid = induced_map(identity_map(a));
    CohomologyTable h = cohomology(a);
    for (int k = 0; k <= 3; ++k)
        CHECK(hid[k] == RationalMatrix::identity(h[k].dim));
}

TEST_CASE("symplectic model is the cone of the negated vertical map") {
    Rng rng(13);
    Complex lower = random_complex(rng, 0, 3, 4);
    Complex upper = random_complex(rng, 0, 3, 4);
    ChainMap v = random_chain_map(rng, lower, upper);
    ConeResult model = symplectic_model(v);
    ConeResult negcone = cone(negate(v));
    CHECK(model.complex.dims == negcone.complex.dims);
    for (int n = 0; n <= 3; ++n)
        CHECK(model.complex.d(n) == negcone.complex.d(n));
    CHECK(model.layout.unshifted_tag == "zeta");
    CHECK(model.layout.shifted_tag == "omega");
}
