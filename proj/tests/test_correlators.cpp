#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "metaward/serialize.hpp"
#include "metaward/ward.hpp"
#include "support/gradient_probe.hpp"

using namespace metaward;
using cplx = std::complex<double>;

namespace {

CorrelatorSpec spec_for(CorrelatorFamily family) { return probe::family_spec(family); }

double rel_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace

TEST_CASE("principal-branch powers") {
    CHECK(pow_principal(2.0, 3.0) == cplx(8.0, 0.0));
    CHECK(pow_principal(-2.0, 3.0) == cplx(-8.0, 0.0));          // integer snap
    CHECK(pow_principal(-2.0, 3.0 + 1e-13) == cplx(-8.0, 0.0));  // within snap width
    CHECK_THROWS_AS(pow_principal(-2.0, 0.5), DomainError);
    CHECK_THROWS_AS(pow_principal(0.0, -1.5), DomainError);

    cplx mi = pow_principal(cplx(0.0, 1.0), -1.0);
    CHECK(std::abs(mi - cplx(0.0, -1.0)) <= 1e-15);
    CHECK_THROWS_AS(pow_principal(cplx(-1.0, 0.0), 0.5), DomainError);
}

TEST_CASE("closed-form values at hand-checked points") {
    CorrelatorSpec mf = spec_for(CorrelatorFamily::MetaFinal);
    mf.x1 = mf.x2 = 1.0;
    mf.gamma1 = mf.gamma2 = 1.0;
    mf.mu = 1.0;
    CHECK(rel_gap(eval_correlator(mf, {2.0, 1.0, 0.0, 0.0}), cplx(1.0 / 9.0, 0.0)) <= 1e-14);

    CorrelatorSpec ortho = spec_for(CorrelatorFamily::Ortho);
    ortho.x1 = ortho.x2 = 1.0;
    CHECK(eval_correlator(ortho, {1.0, 0.0, 0.0, 0.0}) == cplx(1.0, 0.0));
    CHECK(rel_gap(eval_correlator(ortho, {1.0, 1.0, 0.0, 0.0}), cplx(0.5, 0.0)) <= 1e-14);

    CorrelatorSpec naive = spec_for(CorrelatorFamily::MetaNaive);
    naive.x1 = naive.x2 = 0.0;
    naive.gamma1 = naive.gamma2 = 1.0;
    naive.mu = 1.0;
    CHECK(rel_gap(eval_correlator(naive, {1.0, -0.99, 0.0, 0.0}), cplx(1.0e4, 0.0)) <= 1e-10);

    CorrelatorSpec cga = spec_for(CorrelatorFamily::Cga);
    cga.x1 = cga.x2 = 0.0;
    cga.gamma1 = cga.gamma2 = 1.0;
    CHECK(rel_gap(eval_correlator(cga, {1.0, 1.0, 0.0, 0.0}), cplx(std::exp(-2.0), 0.0)) <= 1e-14);
    CHECK(rel_gap(eval_correlator(cga, {1.0, 50.0, 0.0, 0.0}), cplx(std::exp(-100.0), 0.0)) <= 1e-12);

    CorrelatorSpec schr = spec_for(CorrelatorFamily::Schr);
    schr.x1 = schr.x2 = 0.5;
    schr.mass = 2.0;
    // t^{-1/2} exp(-r^2/t) at t = 1, r = 1.
    CHECK(rel_gap(eval_correlator(schr, {1.0, 1.0, 0.0, 0.0}), cplx(std::exp(-1.0), 0.0)) <= 1e-14);

    CorrelatorSpec dual = spec_for(CorrelatorFamily::Dual);
    dual.x1 = dual.x2 = 0.3;
    dual.nu1 = dual.nu2 = 0.5;
    dual.c = 0.0;
    // r = 0 makes lambda = 0; zeta_+ = 1 gives base 1.
    CHECK(rel_gap(eval_correlator(dual, {1.0, 0.0, 1.0, 1.0}), cplx(1.0, 0.0)) <= 1e-14);
}

TEST_CASE("label constraints gate every family to zero") {
    for (CorrelatorFamily family :
         {CorrelatorFamily::Ortho, CorrelatorFamily::Schr, CorrelatorFamily::SchrExt,
          CorrelatorFamily::MetaNaive, CorrelatorFamily::MetaFinal, CorrelatorFamily::Cga,
          CorrelatorFamily::Dual}) {
        CorrelatorSpec spec = spec_for(family);
        spec.x2 = spec.x1 + 1e-12; // any exact mismatch counts
        CHECK(eval_correlator(spec, {1.0, 0.5, 1.0, 1.0}) == cplx(0.0, 0.0));
    }
    for (CorrelatorFamily family :
         {CorrelatorFamily::MetaNaive, CorrelatorFamily::MetaFinal, CorrelatorFamily::Cga}) {
        CorrelatorSpec spec = spec_for(family);
        spec.gamma2 = spec.gamma1 * (1.0 + 1e-12);
        CHECK(eval_correlator(spec, {1.0, 0.5, 0.0, 0.0}) == cplx(0.0, 0.0));
    }
}

TEST_CASE("domain violations carry the constraint") {
    CorrelatorSpec naive = spec_for(CorrelatorFamily::MetaNaive);
    naive.mu = 1.0;
    try {
        eval_correlator(naive, {1.0, -2.0, 0.0, 0.0}); // 1 + mu r / t = -1
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(e.constraint == std::string("1 + mu*r/t > 0"));
    }

    CHECK_THROWS_AS(eval_correlator(spec_for(CorrelatorFamily::Schr), {0.0, 1.0, 0.0, 0.0}),
                    DomainError);
    CHECK_THROWS_AS(eval_correlator(spec_for(CorrelatorFamily::SchrExt), {0.0, 1.0, 0.0, 0.0}),
                    DomainError);
    CHECK_THROWS_AS(eval_correlator(spec_for(CorrelatorFamily::Ortho), {0.0, 0.0, 0.0, 0.0}),
                    DomainError);

    CorrelatorSpec bad_mass = spec_for(CorrelatorFamily::SchrExt);
    bad_mass.mass = -1.0;
    CHECK_THROWS_AS(eval_correlator(bad_mass, {1.0, 0.0, 0.0, 0.0}), DomainError);

    // Dual profile on the branch cut: zeta_+ + c < 0 with lambda = 0.
    CorrelatorSpec dual = spec_for(CorrelatorFamily::Dual);
    dual.c = 0.0;
    CHECK_THROWS_AS(eval_correlator(dual, {1.0, 0.0, -2.0, -2.0}), DomainError);

    CorrelatorSpec mf = spec_for(CorrelatorFamily::MetaFinal);
    mf.gamma1 = mf.gamma2 = -0.5; // negative shift weight needs the opt-in flag
    CHECK_THROWS_AS(eval_correlator(mf, {1.0, 1.0, 0.0, 0.0}), DomainError);
    mf.negative_gamma_literal = true;
    CHECK_NOTHROW(eval_correlator(mf, {1.0, -1.0, 0.0, 0.0}));
}

TEST_CASE("causal extension matches the diffusive profile on its support") {
    CorrelatorSpec plain = spec_for(CorrelatorFamily::Schr);
    CorrelatorSpec ext = spec_for(CorrelatorFamily::SchrExt);
    for (double t : {0.4, 1.0, 2.7}) {
        for (double r : {-1.5, 0.0, 0.8}) {
            FieldPoint p{t, r, 0.0, 0.0};
            CHECK(eval_correlator(plain, p) == eval_correlator(ext, p));
        }
    }
    // Exactly zero (not small) against the arrow of time.
    for (double t : {-0.4, -1.0, -2.7})
        CHECK(eval_correlator(ext, {t, 0.5, 0.0, 0.0}) == cplx(0.0, 0.0));

    CausalityReport causality = check_causality(ext, GridSpec::standard());
    CHECK(causality.pass);
    CHECK(causality.acausal_nonzero == 0);
    CHECK(causality.causal_nonzero > 0);
}

TEST_CASE("bounded profile is continuous but not smooth across r = 0") {
    CorrelatorSpec mf = spec_for(CorrelatorFamily::MetaFinal);
    double mid = std::abs(eval_correlator(mf, {1.5, 0.0, 0.0, 0.0}));
    double left = std::abs(eval_correlator(mf, {1.5, -1e-8, 0.0, 0.0}));
    double right = std::abs(eval_correlator(mf, {1.5, 1e-8, 0.0, 0.0}));
    CHECK(std::abs(left - mid) <= 1e-7 * mid);
    CHECK(std::abs(right - mid) <= 1e-7 * mid);

    // One-sided slopes differ (kink from the modulus).
    double h = 1e-6;
    double d_plus = (std::abs(eval_correlator(mf, {1.5, h, 0.0, 0.0})) - mid) / h;
    double d_minus = (mid - std::abs(eval_correlator(mf, {1.5, -h, 0.0, 0.0}))) / h;
    CHECK(std::abs(d_plus - d_minus) > 0.1 * std::abs(d_plus));

    CHECK_THROWS_AS(grad_correlator(mf, {1.5, 0.0, 0.0, 0.0}), NonDifferentiablePointError);
    CHECK_THROWS_AS(grad_correlator(spec_for(CorrelatorFamily::Cga), {1.5, 0.0, 0.0, 0.0}),
                    NonDifferentiablePointError);
}

TEST_CASE("analytic gradients agree with central finite differences") {
    for (CorrelatorFamily family :
         {CorrelatorFamily::Ortho, CorrelatorFamily::Schr, CorrelatorFamily::SchrExt,
          CorrelatorFamily::MetaNaive, CorrelatorFamily::MetaFinal, CorrelatorFamily::Cga,
          CorrelatorFamily::Dual}) {
        probe::FdResult res = probe::gradient_battery(family);
        CAPTURE(family_name(family));
        CHECK(res.points == 100);
        CHECK(res.max_rel_err <= 1e-6);
    }
}

TEST_CASE("standard grid and csv grids") {
    GridSpec grid = GridSpec::standard();
    CHECK(grid.version == "grid-v1");
    CHECK(grid.points.size() == 8 * 6 * 3 * 3);

    std::string path = "grid_roundtrip_test.csv";
    {
        std::ofstream out(path);
        out << "t,r,zeta1,zeta2\n1.5,-0.25,0.5,2\n-2,1,0,0\n";
    }
    GridSpec loaded = GridSpec::from_csv(path);
    REQUIRE(loaded.points.size() == 2);
    CHECK(loaded.points[0].t == 1.5);
    CHECK(loaded.points[0].r == -0.25);
    CHECK(loaded.points[1].t == -2.0);
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "t,r\n1,2\n";
    }
    CHECK_THROWS_AS(GridSpec::from_csv(path), Error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(GridSpec::from_csv("no_such_file.csv"), Error);
}

TEST_CASE("two-body identities annihilate the covariant profiles") {
    GridSpec grid = GridSpec::standard();

    WardReport naive = ward_residual(spec_for(CorrelatorFamily::MetaNaive), grid, 1e-10);
    CHECK(naive.pass);
    CHECK(naive.max_rel <= 1e-10);
    CHECK(naive.generators.size() == 6);
    for (const GeneratorResidual& g : naive.generators) CHECK(g.points_used > 0);

    WardReport final_report = ward_residual(spec_for(CorrelatorFamily::MetaFinal), grid, 1e-10);
    CHECK(final_report.pass);
    CHECK(final_report.max_rel <= 1e-10);

    WardReport dual = ward_residual(spec_for(CorrelatorFamily::Dual), grid, 1e-10);
    CHECK(dual.pass);
    CHECK(dual.generators.size() == 7); // six brackets plus the scale generator

    WardReport cga = ward_residual(spec_for(CorrelatorFamily::Cga), grid, 1e-10);
    CHECK(cga.pass);

    // The identities are genuinely sensitive: a corrupted generator fails.
    auto ops = ward_ops_for(CorrelatorFamily::MetaNaive);
    ops[2].second += DiffOp::multiplication(
        Poly::variable(Ring::two_body(), "gamma1") * GaussianRational(2));
    WardReport broken = ward_residual(spec_for(CorrelatorFamily::MetaNaive), grid, 1e-10, ops);
    CHECK_FALSE(broken.pass);
}

TEST_CASE("ward reports are deterministic under any worker count") {
    GridSpec grid = GridSpec::standard();
    CorrelatorSpec spec = spec_for(CorrelatorFamily::Dual);

    setenv("METAWARD_THREADS", "1", 1);
    std::string serial = render(ward_residual(spec, grid, 1e-10), ReportFormat::Json);
    setenv("METAWARD_THREADS", "7", 1);
    std::string parallel = render(ward_residual(spec, grid, 1e-10), ReportFormat::Json);
    unsetenv("METAWARD_THREADS");
    CHECK(serial == parallel);
}

TEST_CASE("reduced first-order system") {
    auto ops = build_reduced_system();
    REQUIRE(ops.size() == 5);
    for (const auto& [name, op] : ops) {
        CHECK(op.order() == 1);
        CHECK(op.ring()->same_as(*Ring::reduced()));
    }

    WardReport report = reduced_system_residual(spec_for(CorrelatorFamily::Dual),
                                                GridSpec::standard(), 1e-10);
    CHECK(report.pass);
    CHECK(report.max_rel <= 1e-10);
    CHECK(report.check == "reduced_system");
}

TEST_CASE("the scaling operator annihilates every separable profile") {
    // F = t^(-2x) g(u, s) with u = r/t and s = (zeta1 + zeta2)/2 solves the
    // first reduced equation for arbitrary smooth g.
    auto ops = build_reduced_system();
    const DiffOp* dilation = nullptr;
    for (const auto& [name, op] : ops)
        if (name == "dilation") dilation = &op;
    REQUIRE(dilation != nullptr);

    struct G {
        double (*g)(double, double);
        double (*gu)(double, double);
        double (*gs)(double, double);
    };
    const G gs[] = {
        {[](double u, double s) { return std::exp(-u * u) * std::cos(s); },
         [](double u, double s) { return -2.0 * u * std::exp(-u * u) * std::cos(s); },
         [](double u, double s) { return -std::exp(-u * u) * std::sin(s); }},
        {[](double u, double s) { return u * u * u + s * s; },
         [](double u, double) { return 3.0 * u * u; },
         [](double, double s) { return 2.0 * s; }},
        {[](double u, double s) { return 1.0 / (1.0 + u * u) + std::sin(s); },
         [](double u, double) { return -2.0 * u / ((1.0 + u * u) * (1.0 + u * u)); },
         [](double, double s) { return std::cos(s); }},
    };

    const double x = 0.55;
    const FieldPoint points[] = {{1.2, 0.4, 0.3, -0.8}, {0.7, -1.1, 1.4, 0.2}, {2.5, 2.0, -0.6, 0.9}};
    for (const G& gfun : gs) {
        for (const FieldPoint& p : points) {
            double u = p.r / p.t;
            double s = 0.5 * (p.zeta1 + p.zeta2);
            double head = std::pow(p.t, -2.0 * x);
            double g = gfun.g(u, s), gu = gfun.gu(u, s), gss = gfun.gs(u, s);

            PointEval pe;
            pe.symbol_values = {{"t", p.t},   {"r", p.r},   {"zeta1", p.zeta1},
                                {"zeta2", p.zeta2}, {"mu", 0.7}, {"x1", x},
                                {"x2", x},    {"nu1", 0.6}, {"nu2", 0.7},
                                {"c", 0.2}};
            pe.value = head * g;
            pe.partials["t"] = -2.0 * x / p.t * head * g + head * gu * (-p.r / (p.t * p.t));
            pe.partials["r"] = head * gu / p.t;
            pe.partials["zeta1"] = head * gss * 0.5;
            pe.partials["zeta2"] = head * gss * 0.5;
            pe.partials["mu"] = 0.0;

            auto [residual, scale] = apply_first_order(*dilation, pe);
            CHECK(residual / std::max(1.0, scale) <= 1e-12);
        }
    }
}

TEST_CASE("profiles collapse onto a single curve in the folded coordinate") {
    WCollapseReport report = w_collapse_check(1.0, 0.5, 1e-10);
    CHECK(report.pass);
    CHECK(report.max_rel_gap <= 1e-10);
    CHECK(report.max_norm_dev <= 1e-10);
    REQUIRE_FALSE(report.pairs.empty());

    // Anchor: w = i with unit exponent sum gives exactly -i.
    bool found_anchor = false;
    for (const WCollapsePair& pair : report.pairs) {
        if (pair.w_real == 0.0 && pair.v == 1.0) {
            found_anchor = true;
            CHECK(std::abs(pair.ghat - cplx(0.0, -1.0)) <= 1e-14);
        }
        if (pair.w_real > 0.0) CHECK(pair.u_minus < pair.u_plus); // genuinely distinct branches
    }
    CHECK(found_anchor);

    CHECK(w_collapse_check(1.4, 1.0, 1e-10).pass);
    CHECK_THROWS_AS(w_collapse_check(1.0, -0.5, 1e-10), DomainError);
}

TEST_CASE("exchange symmetry") {
    GridSpec grid = GridSpec::standard();
    CHECK(check_symmetry(spec_for(CorrelatorFamily::MetaFinal), grid, 1e-12).pass);
    CHECK(check_symmetry(spec_for(CorrelatorFamily::Cga), grid, 1e-12).pass);
    CHECK(check_symmetry(spec_for(CorrelatorFamily::Ortho), grid, 1e-12).pass);

    // The unbounded profile with an odd head exponent is antisymmetric, and
    // the checker sees the full violation.
    CorrelatorSpec naive = spec_for(CorrelatorFamily::MetaNaive);
    naive.x1 = naive.x2 = 0.5;
    SymmetryReport broken = check_symmetry(naive, grid, 1e-12);
    CHECK_FALSE(broken.pass);
    CHECK(broken.max_rel_dev > 1.0);
}

TEST_CASE("bounded profiles respect their cap and decay on rays") {
    CorrelatorSpec mf = spec_for(CorrelatorFamily::MetaFinal);
    mf.x1 = mf.x2 = 1.0;
    mf.gamma1 = mf.gamma2 = 1.0;
    mf.mu = 1.0;
    BoundednessReport report = check_boundedness(mf, 1.0, 60);
    CHECK(report.bounded);
    CHECK(report.sup_abs <= report.cap * (1.0 + 1e-9));
    CHECK(report.cap == 1.0);

    // Monotone decay along both rays once |u| >= 1.
    for (std::size_t i = 1; i < report.profile.size(); ++i) {
        const auto& prev = report.profile[i - 1];
        const auto& cur = report.profile[i];
        if (prev.u >= 1.0) CHECK(cur.abs_value <= prev.abs_value + 1e-15);
        if (cur.u <= -1.0) CHECK(cur.abs_value >= prev.abs_value - 1e-15);
    }
    CHECK(report.profile.front().abs_value < 0.01);
    CHECK(report.profile.back().abs_value < 0.01);

    CHECK(check_boundedness(spec_for(CorrelatorFamily::Cga), 1.0, 60).bounded);
    CHECK(check_boundedness(spec_for(CorrelatorFamily::Dual), 1.0, 60).bounded);

    // Fixed-time decay in |t|: compare two points on the same ray.
    double near = std::abs(eval_correlator(mf, {1.0, 1.0, 0.0, 0.0}));
    double far = std::abs(eval_correlator(mf, {8.0, 8.0, 0.0, 0.0}));
    CHECK(far < near);
}

TEST_CASE("the naive profile diverges where the bounded one stays finite") {
    CorrelatorSpec spec = spec_for(CorrelatorFamily::MetaNaive);
    spec.x1 = spec.x2 = 0.0;
    spec.gamma1 = spec.gamma2 = 1.0;
    spec.mu = 1.0;

    auto rows = singularity_profile(spec, 1.0, 12);
    REQUIRE(rows.size() == 12);
    // strictly increasing while finite, never decreasing once it overflows
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::isfinite(rows[i].abs_naive)) CHECK(rows[i].abs_naive > rows[i - 1].abs_naive);
        else CHECK(rows[i].abs_naive >= rows[i - 1].abs_naive);
    }
    CHECK(rows.back().abs_naive > 1e6);

    CorrelatorSpec bounded = spec;
    bounded.family = CorrelatorFamily::MetaFinal;
    double cap = 1.0; // |t|^{-2 x1} with x1 = 0
    for (const SingularityRow& row : rows) {
        if (!std::isnan(row.abs_final)) CHECK(row.abs_final <= cap * (1.0 + 1e-9));
    }

    // Within 1e-3 of the locus the naive value exceeds 1e6.
    CHECK(std::abs(eval_correlator(spec, {1.0, -1.0 + 5e-4, 0.0, 0.0})) > 1e6);
}

TEST_CASE("bounded profile converges to its contraction limit linearly in mu") {
    CorrelatorSpec mf = spec_for(CorrelatorFamily::MetaFinal);
    mf.gamma1 = mf.gamma2 = 1.0;

    GridSpec single;
    single.points.push_back({1.0, 1.0, 0.0, 0.0}); // r / t = 1

    ContractionLimitReport report =
        contraction_limit_check(mf, single, {1e-1, 1e-2, 1e-3, 1e-4}, 1e-3);
    CHECK(report.pass);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows.back().max_rel_gap <= 1e-3);
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        double ratio = report.rows[i - 1].max_rel_gap / report.rows[i].max_rel_gap;
        CHECK(ratio > 5.0);   // gap shrinks like mu
        CHECK(ratio < 20.0);
    }
}

TEST_CASE("correlator table export") {
    GridSpec grid;
    grid.points = {{1.0, 0.5, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}}; // second point is out of domain
    CorrelatorSpec spec = spec_for(CorrelatorFamily::Ortho);
    std::string csv = render_correlator_table(spec, grid, ReportFormat::Csv);
    CHECK(csv.rfind("family,x1,gamma1,mu,t,r,re,im\n", 0) == 0);
    CHECK(csv.find("ortho") != std::string::npos);
    // Domain-error rows are dropped: header plus exactly one data row.
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 2);
}
