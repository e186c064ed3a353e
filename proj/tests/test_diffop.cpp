#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "metaward/generators.hpp"

using namespace metaward;

namespace {

GaussianRational gr(long long n, long long d = 1) { return GaussianRational(n, d); }

Poly var(const RingPtr& ring, const std::string& name, int k = 1) {
    return Poly::variable(ring, name, k);
}

DiffOp deriv(const RingPtr& ring, const std::string& name, int order = 1) {
    return DiffOp::derivative(ring, name, order);
}

DiffOp meta(GenKind kind, int n) {
    return make_generator({Family::Meta, kind, n, {}});
}

} // namespace

TEST_CASE("composition follows the Leibniz rule") {
    const RingPtr& ring = Ring::one_body();
    DiffOp dt = deriv(ring, "t");
    DiffOp t_dt = dt.left_multiply(var(ring, "t"));

    // dt o (t dt) = dt + t dt^2
    CHECK(compose(dt, t_dt) == dt + deriv(ring, "t", 2).left_multiply(var(ring, "t")));

    // dr o (t dt) = t dt dr (coefficient independent of r)
    DiffOp dr = deriv(ring, "r");
    DiffOp cross = compose(dr, t_dt);
    DiffOp expect = compose(dt, dr).left_multiply(var(ring, "t"));
    CHECK(cross == expect);

    // (t dt) o (t dt) = t dt + t^2 dt^2
    DiffOp sq = compose(t_dt, t_dt);
    CHECK(sq == dt.left_multiply(var(ring, "t")) +
                    deriv(ring, "t", 2).left_multiply(var(ring, "t").pow(2)));

    // Cross-check by acting on monomials: (t dt)^2 t^k = k^2 t^k.
    for (int k = 0; k <= 6; ++k) {
        Poly f = var(ring, "t").pow(k);
        CHECK(sq.apply(f) == gr(k * k) * f);
    }
}

TEST_CASE("composition is associative") {
    std::mt19937 rng(99u);
    const RingPtr& ring = Ring::one_body();
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<long long> cnum(-4, 4);
    const char* coords[] = {"t", "r", "zeta", "mu"};

    auto random_op = [&]() {
        DiffOp op(ring);
        for (int term = 0; term < 3; ++term) {
            Poly coef = Poly::constant(ring, gr(cnum(rng)));
            coef = coef * var(ring, coords[pick(rng)]).pow(pick(rng));
            DiffOp piece = DiffOp::multiplication(coef);
            int order = pick(rng) % 3;
            if (order > 0) piece = compose(piece, deriv(ring, coords[pick(rng)], order));
            op += piece;
        }
        return op;
    };

    for (int trial = 0; trial < 25; ++trial) {
        DiffOp a = random_op(), b = random_op(), c = random_op();
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("commutator basics") {
    const RingPtr& ring = Ring::one_body();
    DiffOp x0 = meta(GenKind::X, 0);
    DiffOp y0 = meta(GenKind::Y, 0);
    DiffOp ym1 = meta(GenKind::Y, -1);

    CHECK(commutator(x0, ym1) == ym1);                                   // (0-(-1)) Y_{-1}
    CHECK(commutator(y0, ym1) == ym1.left_multiply(var(ring, "mu")));    // mu (0-(-1)) Y_{-1}
    CHECK(commutator(x0, x0).is_zero());
    CHECK(commutator(y0, y0).is_zero());
}

TEST_CASE("commutators of first-order operators stay first order") {
    std::mt19937 rng(1234u);
    std::uniform_int_distribution<int> idx(-1, 3);
    std::uniform_int_distribution<int> kind(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
        DiffOp a = meta(kind(rng) ? GenKind::X : GenKind::Y, idx(rng));
        DiffOp b = meta(kind(rng) ? GenKind::X : GenKind::Y, idx(rng));
        REQUIRE(a.order() <= 1);
        REQUIRE(b.order() <= 1);
        CHECK(commutator(a, b).order() <= 1);
    }
}

TEST_CASE("jacobi identity on generator triples") {
    std::mt19937 rng(555u);
    std::uniform_int_distribution<int> idx(-1, 3);
    std::uniform_int_distribution<int> kind(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        DiffOp a = meta(kind(rng) ? GenKind::X : GenKind::Y, idx(rng));
        DiffOp b = meta(kind(rng) ? GenKind::X : GenKind::Y, idx(rng));
        DiffOp c = meta(kind(rng) ? GenKind::X : GenKind::Y, idx(rng));
        DiffOp jac = commutator(commutator(a, b), c);
        jac += commutator(commutator(b, c), a);
        jac += commutator(commutator(c, a), b);
        CHECK(jac.is_zero());
    }
}

TEST_CASE("operator equality is exact") {
    DiffOp x0 = meta(GenKind::X, 0);
    DiffOp y0 = meta(GenKind::Y, 0);
    CHECK(x0 == meta(GenKind::X, 0));
    CHECK(x0 != y0);
    CHECK(commutator(meta(GenKind::X, 1), meta(GenKind::X, -1)) == x0 * gr(2));
}

TEST_CASE("ring mismatch is rejected") {
    DiffOp one_body = meta(GenKind::X, 0);
    DiffOp two_body = lift_two_body(one_body, 1);
    CHECK_THROWS_AS(commutator(one_body, two_body), RingMismatchError);
    CHECK_THROWS_AS(compose(one_body, two_body), RingMismatchError);
    CHECK_THROWS_AS(one_body + two_body, RingMismatchError);
}

TEST_CASE("two-body lifting relabels everything but the shared scale") {
    const RingPtr& two = Ring::two_body();

    CHECK(lift_two_body(meta(GenKind::Y, -1), 1) == deriv(two, "r1") * gr(-1));
    CHECK(lift_two_body(meta(GenKind::Y, -1), 2) == deriv(two, "r2") * gr(-1));

    DiffOp x0_sum = two_body_sum(meta(GenKind::X, 0));
    DiffOp expect(two);
    expect -= deriv(two, "t1").left_multiply(var(two, "t1"));
    expect -= deriv(two, "r1").left_multiply(var(two, "r1"));
    expect -= DiffOp::multiplication(var(two, "x1"));
    expect -= deriv(two, "t2").left_multiply(var(two, "t2"));
    expect -= deriv(two, "r2").left_multiply(var(two, "r2"));
    expect -= DiffOp::multiplication(var(two, "x2"));
    CHECK(x0_sum == expect);

    // Lifting body 1 and body 2 commute when neither side touches mu.
    std::mt19937 rng(31u);
    std::uniform_int_distribution<int> idx(-1, 2);
    for (int trial = 0; trial < 12; ++trial) {
        DiffOp a = lift_two_body(meta(GenKind::X, idx(rng)), 1);
        DiffOp b = lift_two_body(meta(GenKind::Y, idx(rng)), 2);
        CHECK(commutator(a, b).is_zero());
    }
}

TEST_CASE("the shared scale is dilated once in the two-body N") {
    const RingPtr& two = Ring::two_body();
    DiffOp n_one = make_generator({Family::MetaDual, GenKind::N, 0, {}});
    DiffOp plain_sum = two_body_sum(n_one);

    // The naive sum dilates mu twice; the corrected operator once.
    DiffOp mu_dmu = deriv(two, "mu").left_multiply(var(two, "mu"));
    DiffOp corrected = two_body_N();
    CHECK(plain_sum == corrected + mu_dmu);

    // Both mu-carrying lifts interact only through the shared scale.
    DiffOp n1 = lift_two_body(n_one, 1);
    DiffOp n2 = lift_two_body(n_one, 2);
    CHECK(commutator(n1, n2).is_zero()); // [mu dmu, mu dmu] = 0 and bodies decouple
}

TEST_CASE("already-lifted operators cannot be lifted again") {
    DiffOp lifted = lift_two_body(meta(GenKind::X, 0), 1);
    CHECK_THROWS_AS(lift_two_body(lifted, 2), Error);
}

TEST_CASE("parameter substitution and contraction") {
    const RingPtr& ring = Ring::one_body();

    // Y_1 = -(t+mu r)^2 dr - 2 gamma (t+mu r); at mu=0: -t^2 dr - 2 gamma t.
    DiffOp y1_c = meta(GenKind::Y, 1).substitute("mu", gr(0));
    DiffOp y1_expect(ring);
    y1_expect -= deriv(ring, "r").left_multiply(var(ring, "t").pow(2));
    y1_expect -= DiffOp::multiplication(gr(2) * var(ring, "gamma") * var(ring, "t"));
    CHECK(y1_c == y1_expect);

    // X_1 at mu=0: -t^2 dt - 2 t r dr - 2 x t - 2 gamma r.
    DiffOp x1_c = meta(GenKind::X, 1).substitute("mu", gr(0));
    DiffOp x1_expect(ring);
    x1_expect -= deriv(ring, "t").left_multiply(var(ring, "t").pow(2));
    x1_expect -= deriv(ring, "r").left_multiply(gr(2) * var(ring, "t") * var(ring, "r"));
    x1_expect -= DiffOp::multiplication(gr(2) * var(ring, "x") * var(ring, "t"));
    x1_expect -= DiffOp::multiplication(gr(2) * var(ring, "gamma") * var(ring, "r"));
    CHECK(x1_c == x1_expect);

    // mu^-1 Y_0 has a pole at mu=0.
    DiffOp lbar0 = meta(GenKind::Y, 0).left_multiply(var(ring, "mu", -1));
    CHECK_THROWS_AS(lbar0.substitute("mu", gr(0)), PoleAtContractionError);

    // Substituting a coordinate the operator still differentiates is rejected.
    CHECK_THROWS_AS(meta(GenKind::X, 0).substitute("t", gr(1)), Error);
}

TEST_CASE("contraction agrees with the small-scale numeric limit") {
    // Apply X_1 at mu = 1e-6 and at mu = 0 to a test function and compare.
    const RingPtr& ring = Ring::one_body();
    Poly f = var(ring, "t") * var(ring, "r"); // smooth polynomial probe
    Poly g_small = meta(GenKind::X, 1).substitute("mu", gr(1, 1000000)).apply(f);
    Poly g_limit = meta(GenKind::X, 1).substitute("mu", gr(0)).apply(f);

    Assignment point{{"t", 1.3}, {"r", -0.7}, {"zeta", 0.2},
                     {"x", 0.8},  {"gamma", 0.4}, {"nu", 0.6}, {"c", 0.1}};
    std::complex<double> a = g_small.eval(point);
    std::complex<double> b = g_limit.eval(point);
    CHECK(std::abs(a - b) / std::max(1.0, std::abs(b)) <= 1e-4);
}

TEST_CASE("apply reproduces generator action on test polynomials") {
    const RingPtr& ring = Ring::one_body();
    Poly t = var(ring, "t");

    // X_0 = -t dt - r dr - x acting on t: -t - x t.
    Poly got = meta(GenKind::X, 0).apply(t);
    Poly expect = gr(-1) * t - var(ring, "x") * t;
    CHECK(got == expect);

    // Y_{-1} = -dr annihilates anything r-free.
    CHECK(meta(GenKind::Y, -1).apply(t.pow(4)).is_zero());
}

TEST_CASE("order bookkeeping") {
    const RingPtr& ring = Ring::one_body();
    CHECK(DiffOp::zero(ring).order() == 0);
    CHECK(DiffOp::multiplication(var(ring, "t")).order() == 0);
    CHECK(meta(GenKind::X, 2).order() == 1);
    CHECK(compose(meta(GenKind::X, 1), meta(GenKind::Y, 1)).order() <= 2);
    CHECK(deriv(ring, "t", 2).order() == 2);
    CHECK(compose(deriv(ring, "t"), deriv(ring, "r")).order() == 2);
}
