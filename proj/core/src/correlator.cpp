#include "metaward/correlator.hpp"

#include <cmath>
#include <cstdlib>

#include "metaward/errors.hpp"

namespace metaward {
namespace {

constexpr double kIntegerSnap = 1e-12;
using cplx = std::complex<double>;

bool near_integer(double expo, long long& k) {
    double rounded = std::nearbyint(expo);
    if (std::abs(expo - rounded) < kIntegerSnap && std::abs(rounded) < 1e15) {
        k = static_cast<long long>(rounded);
        return true;
    }
    return false;
}

double ipow(double base, long long k) {
    if (k < 0) return 1.0 / ipow(base, -k);
    double acc = 1.0, b = base;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

void require(bool ok, const std::string& constraint) {
    if (!ok) throw DomainError("correlator argument outside domain", constraint);
}

} // namespace

std::complex<double> pow_principal(double base, double expo) {
    long long k = 0;
    if (near_integer(expo, k)) {
        require(base != 0.0 || k >= 0, "base != 0 for negative integer power");
        return cplx(ipow(base, k), 0.0);
    }
    require(base > 0.0, "base > 0 for non-integer power");
    return cplx(std::pow(base, expo), 0.0);
}

std::complex<double> pow_principal(std::complex<double> base, double expo) {
    long long k = 0;
    if (base.imag() == 0.0) return pow_principal(base.real(), expo);
    if (near_integer(expo, k)) {
        cplx acc(1.0, 0.0), b = base;
        long long n = k < 0 ? -k : k;
        while (n > 0) {
            if (n & 1) acc *= b;
            b *= b;
            n >>= 1;
        }
        return k < 0 ? cplx(1.0, 0.0) / acc : acc;
    }
    return std::exp(cplx(expo, 0.0) * std::log(base));
}

std::string family_name(CorrelatorFamily f) {
    switch (f) {
        case CorrelatorFamily::Ortho: return "ortho";
        case CorrelatorFamily::Schr: return "schr";
        case CorrelatorFamily::SchrExt: return "schr_ext";
        case CorrelatorFamily::MetaNaive: return "meta_naive";
        case CorrelatorFamily::MetaFinal: return "meta_final";
        case CorrelatorFamily::Cga: return "cga";
        case CorrelatorFamily::Dual: return "dual";
    }
    return "unknown";
}

CorrelatorFamily correlator_family_from_string(const std::string& name) {
    if (name == "ortho") return CorrelatorFamily::Ortho;
    if (name == "schr") return CorrelatorFamily::Schr;
    if (name == "schr_ext") return CorrelatorFamily::SchrExt;
    if (name == "meta_naive") return CorrelatorFamily::MetaNaive;
    if (name == "meta_final") return CorrelatorFamily::MetaFinal;
    if (name == "cga") return CorrelatorFamily::Cga;
    if (name == "dual") return CorrelatorFamily::Dual;
    throw Error("unknown correlator family '" + name + "'");
}

namespace {

bool gates_pass(const CorrelatorSpec& spec) {
    if (spec.x1 != spec.x2) return false;
    switch (spec.family) {
        case CorrelatorFamily::MetaNaive:
        case CorrelatorFamily::MetaFinal:
        case CorrelatorFamily::Cga:
            return spec.gamma1 == spec.gamma2;
        default:
            return true;
    }
}

// Bounded-profile base 1 + (mu/gamma1)|gamma1 u| with u = r/t. Collapses to
// 1 + sign(gamma1) mu |u|; gamma1 == 0 degenerates to a flat profile.
double final_base(const CorrelatorSpec& spec, double u) {
    if (spec.gamma1 == 0.0) return 1.0;
    double sgn = spec.gamma1 > 0.0 ? 1.0 : -1.0;
    return 1.0 + sgn * spec.mu * std::abs(u);
}

CorrelatorGradient eval_impl(const CorrelatorSpec& spec, const FieldPoint& p, bool want_grad) {
    CorrelatorGradient g;
    if (!gates_pass(spec)) return g; // exact zero, flat gradient

    const double t = p.t, r = p.r;
    const double norm = spec.normalization;

    switch (spec.family) {
        case CorrelatorFamily::Ortho: {
            double rho2 = t * t + r * r;
            require(rho2 > 0.0, "t^2 + r^2 > 0");
            cplx val = norm * pow_principal(rho2, -spec.x1);
            g.value = val;
            if (want_grad) {
                g.dt = val * (-spec.x1 * 2.0 * t / rho2);
                g.dr = val * (-spec.x1 * 2.0 * r / rho2);
            }
            return g;
        }
        case CorrelatorFamily::Schr:
        case CorrelatorFamily::SchrExt: {
            if (spec.family == CorrelatorFamily::SchrExt) {
                require(spec.mass > 0.0, "mass > 0");
                require(t != 0.0, "t != 0");
                if (spec.mass * t < 0.0) return g; // causal gate: exact zero
            }
            require(t != 0.0, "t != 0");
            cplx head = pow_principal(t, -spec.x1);
            double arg = -0.5 * spec.mass * r * r / t;
            cplx val = norm * head * std::exp(arg);
            g.value = val;
            if (want_grad) {
                g.dt = val * (-spec.x1 / t + 0.5 * spec.mass * r * r / (t * t));
                g.dr = val * (-spec.mass * r / t);
            }
            return g;
        }
        case CorrelatorFamily::MetaNaive: {
            require(t != 0.0, "t != 0");
            require(spec.mu != 0.0, "mu != 0");
            double u = r / t;
            double base = 1.0 + spec.mu * u;
            require(base > 0.0, "1 + mu*r/t > 0");
            double expo = -2.0 * spec.gamma1 / spec.mu;
            cplx head = pow_principal(t, -2.0 * spec.x1);
            cplx prof = pow_principal(base, expo);
            cplx val = norm * head * prof;
            g.value = val;
            if (want_grad) {
                require(base > 0.0, "1 + mu*r/t > 0 for differentiation");
                double dlogb_dt = -spec.mu * r / (t * t) / base;
                double dlogb_dr = spec.mu / t / base;
                g.dt = val * (-2.0 * spec.x1 / t + expo * dlogb_dt);
                g.dr = val * (expo * dlogb_dr);
                // d/dmu acts on both the exponent and the base
                double dmu_expo = 2.0 * spec.gamma1 / (spec.mu * spec.mu);
                double dmu_base = u / base;
                g.dmu = val * (dmu_expo * std::log(base) + expo * dmu_base);
            }
            return g;
        }
        case CorrelatorFamily::MetaFinal: {
            require(t != 0.0, "t != 0");
            require(spec.mu != 0.0, "mu != 0");
            if (spec.gamma1 < 0.0 && !spec.negative_gamma_literal) {
                throw DomainError("negative gamma1 in bounded profile requires the literal opt-in",
                                  "gamma1 >= 0 or negative_gamma_literal");
            }
            double u = r / t;
            double base = final_base(spec, u);
            require(base > 0.0, "1 + (mu/gamma1)|gamma1*r/t| > 0");
            double expo = spec.gamma1 == 0.0 ? 0.0 : -2.0 * spec.gamma1 / spec.mu;
            double head = std::pow(std::abs(t), -2.0 * spec.x1);
            double prof = std::pow(base, expo);
            cplx val = norm * head * prof;
            g.value = val;
            if (want_grad) {
                if (r == 0.0) {
                    throw NonDifferentiablePointError(
                        "bounded profile has a |r| kink: no derivative at r = 0");
                }
                double bm1 = base - 1.0; // = sign(gamma1) mu |u|
                g.dt = val * (-2.0 * spec.x1 / t - expo * bm1 / (t * base));
                g.dr = val * (expo * bm1 / (r * base));
                if (spec.gamma1 != 0.0) {
                    double dmu_expo = 2.0 * spec.gamma1 / (spec.mu * spec.mu);
                    g.dmu = val * (dmu_expo * std::log(base) + expo * bm1 / (spec.mu * base));
                }
            }
            return g;
        }
        case CorrelatorFamily::Cga: {
            require(t != 0.0, "t != 0");
            double a = std::abs(2.0 * spec.gamma1 * r / t);
            double head = std::pow(std::abs(t), -2.0 * spec.x1);
            cplx val = norm * head * std::exp(-a);
            g.value = val;
            if (want_grad) {
                if (r == 0.0 && spec.gamma1 != 0.0) {
                    throw NonDifferentiablePointError(
                        "contracted profile has a |r| kink: no derivative at r = 0");
                }
                g.dt = val * (-2.0 * spec.x1 / t + a / t);
                g.dr = (r == 0.0) ? cplx(0.0, 0.0) : val * (-a / r);
            }
            return g;
        }
        case CorrelatorFamily::Dual: {
            require(t != 0.0, "t != 0");
            require(spec.mu != 0.0, "mu != 0");
            double base = 1.0 + spec.mu * r / t;
            require(base > 0.0, "1 + mu*r/t > 0");
            double lambda = std::log(base) / spec.mu;
            double zplus = 0.5 * (p.zeta1 + p.zeta2) + spec.c;
            cplx z(zplus, lambda);
            double s = spec.nu1 + spec.nu2;
            require(z != cplx(0.0, 0.0), "dual argument != 0");
            double head = std::pow(std::abs(t), -2.0 * spec.x1);
            cplx prof = pow_principal(z, -s);
            cplx val = norm * head * prof;
            g.value = val;
            if (want_grad) {
                double u = r / t;
                double dl_dt = -r / (t * t * base);
                double dl_dr = 1.0 / (t * base);
                double dl_dmu = u / (spec.mu * base) - lambda / spec.mu;
                cplx fac = -s / z;
                g.dt = val * (-2.0 * spec.x1 / t) + val * fac * cplx(0.0, dl_dt);
                g.dr = val * fac * cplx(0.0, dl_dr);
                g.dzeta1 = val * fac * 0.5;
                g.dzeta2 = val * fac * 0.5;
                g.dmu = val * fac * cplx(0.0, dl_dmu);
            }
            return g;
        }
    }
    return g;
}

} // namespace

std::complex<double> eval_correlator(const CorrelatorSpec& spec, const FieldPoint& p) {
    return eval_impl(spec, p, false).value;
}

CorrelatorGradient grad_correlator(const CorrelatorSpec& spec, const FieldPoint& p) {
    return eval_impl(spec, p, true);
}

} // namespace metaward
