#include "metaward/hardy.hpp"

#include <algorithm>
#include <cmath>

#include "metaward/correlator.hpp"
#include "metaward/errors.hpp"

namespace metaward {

using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt2Pi = 2.506628274631000502415765284811;

constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

} // namespace

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::nearbyint(x)) {
        throw DomainError("gamma function pole", "x not a non-positive integer");
    }
    // climb into the Lanczos-stable region with Gamma(z) = Gamma(z+1)/z
    double prefactor = 1.0;
    while (x < 0.5) {
        prefactor /= x;
        x += 1.0;
    }
    double z = x - 1.0;
    double acc = kLanczos[0];
    for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (z + k);
    double t = z + 7.5;
    return prefactor * kSqrt2Pi * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

double m2_closed(double nu_sum, double v, double lambda) {
    double a = v + lambda;
    if (nu_sum <= 0.5) {
        throw DivergenceError("second moment diverges for nu_sum <= 1/2 (got " +
                              std::to_string(nu_sum) + ")");
    }
    if (a <= 0.0) throw DomainError("second moment offset must be positive", "v + lambda > 0");
    return std::sqrt(kPi) * gamma_fn(nu_sum - 0.5) / gamma_fn(nu_sum) *
           std::pow(a, 1.0 - 2.0 * nu_sum);
}

QuadratureResult m2_numeric(double nu_sum, double v, double lambda,
                            double rel_tol, int max_level) {
    const double a = v + lambda;
    if (nu_sum <= 0.5) {
        throw DivergenceError("second moment diverges for nu_sum <= 1/2 (got " +
                              std::to_string(nu_sum) + ")");
    }
    if (a <= 0.0) throw DomainError("second moment offset must be positive", "v + lambda > 0");

    QuadratureResult out;
    const double power = 2.0 * nu_sum - 2.0; // cos(theta)^power after u = a tan(theta)

    // theta(x) = (pi/2) tanh((pi/2) sinh x); the integrand cos(theta)^power
    // is evaluated through d = pi/2 - |theta| = pi / (1 + e^{2t}) so the
    // endpoint singularity (power < 0) never sees catastrophic cancellation.
    auto node = [&](double x) -> double {
        double t = 0.5 * kPi * std::sinh(x);
        double ch = std::cosh(t);
        double weight = 0.25 * kPi * kPi * std::cosh(x) / (ch * ch);
        double d = kPi / (1.0 + std::exp(2.0 * t));
        double c = std::sin(d); // = cos(theta), exact near both endpoints
        ++out.evaluations;
        return weight * std::pow(c, power);
    };

    // truncation point: the summand decays like exp(-(2s-1) (pi/2) sinh x)
    double decay = (2.0 * nu_sum - 1.0) * 0.5 * kPi;
    double big_x = std::clamp(std::asinh(40.0 / decay), 4.0, 7.0);

    double h = 1.0;
    int half_count = static_cast<int>(std::ceil(big_x / h));
    double sum = node(0.0);
    for (int k = 1; k <= half_count; ++k) sum += node(k * h) + node(-k * h);
    double integral = h * sum;

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        int limit = static_cast<int>(std::ceil(big_x / h));
        for (int k = 1; k <= limit; k += 2) sum += node(k * h) + node(-k * h);
        double refined = h * sum;
        out.abs_error_estimate = std::abs(refined - integral) * std::pow(a, 1.0 - 2.0 * nu_sum);
        bool done = std::abs(refined - integral) <= rel_tol * std::abs(refined);
        integral = refined;
        if (done) {
            out.converged = true;
            break;
        }
    }
    out.value = std::pow(a, 1.0 - 2.0 * nu_sum) * integral;
    return out;
}

double exponent_bridge_gap(double g, double mu, double u) {
    if (mu == 0.0) throw DomainError("bridge needs a nonzero scale", "mu != 0");
    double base = 1.0 + mu * u;
    if (base <= 0.0) throw DomainError("bridge argument outside domain", "1 + mu*u > 0");
    double lambda = std::log(base) / mu;
    double lhs = std::exp(-2.0 * g * lambda);
    double rhs = std::pow(base, -2.0 * g / mu);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

namespace detail {

void fft_radix2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw Error("fft size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * kPi / static_cast<double>(len);
        cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx even = a[i + k];
                cplx odd = a[i + k + len / 2] * w;
                a[i + k] = even + odd;
                a[i + k + len / 2] = even - odd;
                w *= wlen;
            }
        }
    }
}

} // namespace detail

namespace {

double tukey_window(std::size_t j, std::size_t n, double alpha) {
    double edge = alpha * static_cast<double>(n - 1) / 2.0;
    double x = static_cast<double>(j);
    if (x < edge) return 0.5 * (1.0 + std::cos(kPi * (x / edge - 1.0)));
    double tail = static_cast<double>(n - 1) - edge;
    if (x > tail) return 0.5 * (1.0 + std::cos(kPi * ((x - tail) / edge)));
    return 1.0;
}

// Windowed samples of u -> (u + i lambda)^(-nu_sum) on [-L/2, L/2).
std::vector<cplx> windowed_profile(double nu_sum, double lambda, std::size_t n, double len,
                                   double alpha, double& energy) {
    std::vector<cplx> f(n);
    const double du = len / static_cast<double>(n);
    energy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double u = -0.5 * len + du * static_cast<double>(j);
        cplx val = pow_principal(cplx(u, lambda), -nu_sum) * tukey_window(j, n, alpha);
        f[j] = val;
        energy += std::norm(val) * du;
    }
    return f;
}

} // namespace

SpectrumReport spectral_onesidedness(double nu_sum, double lambda, std::size_t n,
                                     double window_len) {
    if (lambda == 0.0)
        throw DomainError("one-sidedness is undefined on the boundary", "lambda != 0");
    if (nu_sum <= 0.5) {
        throw DivergenceError("profile is not square integrable for nu_sum <= 1/2 (got " +
                              std::to_string(nu_sum) + ")");
    }
    if (n == 0 || (n & (n - 1)) != 0) throw Error("sample count must be a power of two");

    SpectrumReport report;
    report.nu_sum = nu_sum;
    report.lambda = lambda;
    report.n = n;
    report.window_len = window_len;

    // lambda < 0 mirrors the spectrum (the sample conjugates), so measure at
    // |lambda| and report the same fraction.
    std::vector<cplx> f =
        windowed_profile(nu_sum, std::abs(lambda), n, window_len, 0.25, report.energy_time_domain);
    detail::fft_radix2(f, -1);

    double total = 0.0, offside = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double e = std::norm(f[k]);
        total += e;
        if (k >= n / 2) offside += e; // negative-frequency half, Nyquist included
    }
    report.offside_fraction = total > 0.0 ? offside / total : 0.0;
    if (report.offside_fraction <= 1e-6) report.status = "pass";
    else if (report.offside_fraction <= 1e-3) report.status = "inconclusive";
    else report.status = "fail";
    return report;
}

RoundtripReport dualization_roundtrip(double nu_sum, double lambda, double tol,
                                      std::size_t n, double window_len) {
    if (lambda <= 0.0) throw DomainError("roundtrip needs decay", "lambda > 0");
    if (nu_sum <= 1.0)
        throw DomainError("recovered density has no interior mode for nu_sum <= 1",
                          "nu_sum > 1");
    if (n == 0 || (n & (n - 1)) != 0) throw Error("sample count must be a power of two");

    RoundtripReport report;
    report.nu_sum = nu_sum;
    report.lambda = lambda;
    report.n = n;
    report.window_len = window_len;
    report.tol = tol;
    report.mode_gamma = (nu_sum - 1.0) / lambda;

    double energy = 0.0;
    std::vector<cplx> f = windowed_profile(nu_sum, lambda, n, window_len, 0.5, energy);
    detail::fft_radix2(f, -1);

    const double dgamma = 2.0 * kPi / window_len;
    auto reference = [&](double g) { return std::pow(g, nu_sum - 1.0) * std::exp(-lambda * g); };

    const std::size_t half = n / 2;
    std::size_t mode_bin = static_cast<std::size_t>(std::llround(report.mode_gamma / dgamma));
    mode_bin = std::clamp<std::size_t>(mode_bin, 1, half - 1);
    const double ref_peak = reference(report.mode_gamma);

    double mode_mag = std::abs(f[mode_bin]);
    if (mode_mag == 0.0) throw Error("degenerate spectrum: empty mode bin");
    const double scale = reference(static_cast<double>(mode_bin) * dgamma) / mode_mag;

    double mass_total = 0.0, mass_low = 0.0, total_energy = 0.0, offside_energy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double e = std::norm(f[k]);
        total_energy += e;
        if (k >= half) {
            offside_energy += e;
            continue;
        }
        if (k == 0) continue;
        double mag = std::abs(f[k]);
        mass_total += mag;
        double g = static_cast<double>(k) * dgamma;
        if (g < 0.5) mass_low += mag;
        double ref = reference(g);
        if (ref >= 0.05 * ref_peak && g >= 0.05) {
            double dev = std::abs(scale * mag - ref) / ref;
            report.max_shape_dev = std::max(report.max_shape_dev, dev);
            ++report.bulk_bins;
        }
    }
    report.mass_below_half = mass_total > 0.0 ? mass_low / mass_total : 0.0;
    report.offside_fraction = total_energy > 0.0 ? offside_energy / total_energy : 0.0;
    report.pass = report.bulk_bins > 0 && report.max_shape_dev <= tol;
    return report;
}

} // namespace metaward
