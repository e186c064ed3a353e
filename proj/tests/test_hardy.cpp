#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "metaward/errors.hpp"
#include "metaward/hardy.hpp"

using namespace metaward;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

} // namespace

TEST_CASE("gamma function against high-precision references") {
    struct Ref {
        double x;
        double value;
    };
    // Frozen from a 50-digit arbitrary-precision evaluation.
    const Ref refs[] = {
        {0.1, 9.5135076986687318363},
        {0.25, 3.6256099082219083119},
        {0.5, 1.7724538509055160273},
        {0.75, 1.2254167024651776451},
        {1.0, 1.0},
        {1.5, 0.88622692545275801365},
        {2.5, 1.3293403881791370205},
        {3.75, 4.4229884104602505629},
        {5.0, 24.0},
        {7.5, 1871.2543057977883465},
        {10.0, 362880.0},
        {12.5, 136843365.46556585726},
        {15.0, 87178291200.0},
        {20.25, 256040133328476465.59},
        {25.0, 6.2044840173323943936e23},
        {30.0, 8.8417619937397019545e30},
    };
    for (const Ref& r : refs) CHECK(rel(gamma_fn(r.x), r.value) <= 1e-12);

    // Functional equation on random interior points.
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> xs(0.2, 20.0);
    for (int i = 0; i < 50; ++i) {
        double x = xs(rng);
        CHECK(rel(gamma_fn(x + 1.0), x * gamma_fn(x)) <= 1e-12);
    }

    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-3.0), DomainError);
    // negative non-integer arguments reach the reflection branch
    CHECK(rel(gamma_fn(-2.5), -0.94530872048294188857) <= 1e-12);
}

TEST_CASE("closed-form second moment") {
    CHECK(rel(m2_closed(1.0, 0.0, 1.0), kPi) <= 1e-14);
    CHECK(rel(m2_closed(1.0, 0.0, 2.0), kPi / 2.0) <= 1e-14);
    CHECK(rel(m2_closed(1.0, 1.0, 1.0), kPi / 2.0) <= 1e-14);
    CHECK(rel(m2_closed(1.5, 0.0, 1.0), 2.0) <= 1e-13);
    CHECK(rel(m2_closed(2.0, 0.0, 1.0), kPi / 2.0) <= 1e-13);
    CHECK(rel(m2_closed(0.75, 0.0, 1.0), 5.24411510858423962) <= 1e-13);

    CHECK_THROWS_AS(m2_closed(0.4, 0.0, 1.0), DivergenceError);
    CHECK_THROWS_AS(m2_closed(0.5, 0.0, 1.0), DivergenceError); // boundary diverges too
    CHECK_THROWS_AS(m2_closed(1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(m2_closed(1.0, 0.0, -1.0), DomainError);
}

TEST_CASE("quadrature matches the closed form over the full battery") {
    for (double nu_sum : {0.75, 1.0, 1.5, 2.0, 3.0}) {
        for (double lambda : {0.5, 1.0, 2.0}) {
            for (double v : {0.0, 0.5}) {
                QuadratureResult q = m2_numeric(nu_sum, v, lambda);
                double closed = m2_closed(nu_sum, v, lambda);
                CAPTURE(nu_sum);
                CAPTURE(lambda);
                CAPTURE(v);
                CHECK(q.converged);
                CHECK(q.evaluations > 0);
                CHECK(rel(q.value, closed) <= 1e-6);
            }
        }
    }
    CHECK_THROWS_AS(m2_numeric(0.3, 0.0, 1.0), DivergenceError);
}

TEST_CASE("second moment is monotone in the offset") {
    double prev = m2_numeric(1.5, 0.0, 1.0).value;
    for (double v : {0.25, 0.5, 1.0, 2.0}) {
        double cur = m2_numeric(1.5, v, 1.0).value;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("radix-2 transform against a naive reference") {
    const std::size_t n = 256;
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::vector<cplx> a(n);
    for (cplx& z : a) z = cplx(amp(rng), amp(rng));

    std::vector<cplx> naive(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double angle = -2.0 * kPi * static_cast<double>(j * k % n) / static_cast<double>(n);
            acc += a[j] * cplx(std::cos(angle), std::sin(angle));
        }
        naive[k] = acc;
    }

    std::vector<cplx> fast = a;
    detail::fft_radix2(fast, -1);
    double scale = 0.0;
    for (const cplx& z : naive) scale = std::max(scale, std::abs(z));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(fast[k] - naive[k]) <= 1e-11 * scale);

    // Parseval: sum |F|^2 = n sum |f|^2.
    double ef = 0.0, et = 0.0;
    for (const cplx& z : fast) ef += std::norm(z);
    for (const cplx& z : a) et += std::norm(z);
    CHECK(rel(ef, static_cast<double>(n) * et) <= 1e-12);

    // Unnormalized inverse round-trips.
    std::vector<cplx> back = fast;
    detail::fft_radix2(back, +1);
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(back[k] / static_cast<double>(n) - a[k]) <= 1e-12);

    std::vector<cplx> bad(100);
    CHECK_THROWS_AS(detail::fft_radix2(bad, -1), Error);
}

TEST_CASE("spectral energy is one-sided") {
    SpectrumReport report = spectral_onesidedness(2.0, 1.0);
    CHECK(report.status == "pass");
    CHECK(report.offside_fraction <= 1e-6);
    CHECK(report.n == std::size_t{1} << 16);
    CHECK(report.window_len == 200.0);

    // Mirrored for decay in the other half-plane.
    SpectrumReport mirrored = spectral_onesidedness(2.0, -1.0);
    CHECK(mirrored.status == "pass");
    CHECK(std::abs(mirrored.offside_fraction - report.offside_fraction) <= 1e-8);

    // Slow decay leaves the verdict open rather than wrong.
    SpectrumReport slow = spectral_onesidedness(1.5, 1.0);
    CHECK(slow.status == "inconclusive");
    CHECK(slow.offside_fraction > 1e-6);
    CHECK(slow.offside_fraction <= 1e-3);

    CHECK_THROWS_AS(spectral_onesidedness(2.0, 0.0), DomainError);
    CHECK_THROWS_AS(spectral_onesidedness(0.4, 1.0), DivergenceError);
    CHECK_THROWS_AS(spectral_onesidedness(2.0, 1.0, 1000, 200.0), Error); // not a power of two
}

TEST_CASE("windowed energy matches the closed-form integral") {
    SpectrumReport report = spectral_onesidedness(2.0, 1.0);
    double integral = m2_closed(2.0, 0.0, 1.0);
    CHECK(rel(report.energy_time_domain, integral) <= 1e-4);
}

TEST_CASE("independent small-grid transform confirms one-sidedness") {
    // Self-contained oracle: Hann window, naive discrete transform.
    const std::size_t n = 2048;
    const double span = 100.0;
    const double du = span / static_cast<double>(n);
    const double lambda = 1.0, nu_sum = 2.0;

    std::vector<cplx> f(n);
    for (std::size_t j = 0; j < n; ++j) {
        double u = -span / 2.0 + du * static_cast<double>(j);
        cplx z(u, lambda);
        cplx val = std::pow(z, -nu_sum);
        double w = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(j) / (n - 1)));
        f[j] = val * w;
    }
    double neg = 0.0, total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double angle = -2.0 * kPi * static_cast<double>(j * k % n) / static_cast<double>(n);
            acc += f[j] * cplx(std::cos(angle), std::sin(angle));
        }
        double e = std::norm(acc);
        total += e;
        if (k >= n / 2) neg += e; // aliased negative frequencies
    }
    CHECK(neg / total <= 1e-3);
}

TEST_CASE("dualization roundtrip recovers the one-sided density") {
    RoundtripReport report = dualization_roundtrip(2.0, 1.0);
    CHECK(report.pass);
    CHECK(report.max_shape_dev <= 1e-4);
    CHECK(report.bulk_bins > 100);
    CHECK(rel(report.mode_gamma, 1.0) <= 1e-12); // (nu_sum - 1) / lambda
    CHECK(report.offside_fraction <= 1e-6);

    // Other parameter points hold the same shape bound.
    CHECK(dualization_roundtrip(1.5, 1.0).pass);
    CHECK(dualization_roundtrip(3.0, 1.0).pass);
    CHECK(dualization_roundtrip(2.0, 2.0).pass);

    // Damping concentrates the recovered mass toward the origin.
    RoundtripReport light = dualization_roundtrip(2.0, 1.0);
    RoundtripReport heavy = dualization_roundtrip(2.0, 3.0);
    CHECK(heavy.mass_below_half > light.mass_below_half);

    CHECK_THROWS_AS(dualization_roundtrip(2.0, -1.0), DomainError);
    CHECK_THROWS_AS(dualization_roundtrip(0.9, 1.0), DomainError);
}

TEST_CASE("exact exponent bridge") {
    CHECK(exponent_bridge_gap(1.0, 1.0, 1.0) <= 1e-12); // e^{-2 ln 2} = 1/4
    for (double g : {0.3, 1.0, 2.5})
        for (double mu : {0.2, 1.0, 3.0})
            for (double u : {0.5, 2.0}) CHECK(exponent_bridge_gap(g, mu, u) <= 1e-12);
    CHECK_THROWS_AS(exponent_bridge_gap(1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(exponent_bridge_gap(1.0, 1.0, -1.0), DomainError);
}
