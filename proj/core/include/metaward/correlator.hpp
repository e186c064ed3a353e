#pragma once

#include <complex>
#include <string>

namespace metaward {

// Two-point function families, all expressed in relative coordinates
// t = t1 - t2, r = r1 - r2 (and the two rapidity-like duals zeta1, zeta2):
//   Ortho:     (t^2 + r^2)^(-x1)
//   Schr:      t^(-x1) exp(-(mass/2) r^2 / t)
//   SchrExt:   Theta(mass t) * Schr                        (mass > 0)
//   MetaNaive: t^(-2 x1) (1 + mu r/t)^(-2 gamma1/mu)
//   MetaFinal: |t|^(-2 x1) (1 + (mu/gamma1)|gamma1 r/t|)^(-2 gamma1/mu)
//   Cga:       |t|^(-2 x1) exp(-|2 gamma1 r/t|)
//   Dual:      |t|^(-2 x1) ((zeta1+zeta2)/2 + c + i*lambda)^(-nu1-nu2),
//              lambda = ln(1 + mu r/t) / mu
// Every family requires x1 == x2 exactly (value is 0 otherwise); the gamma
// families additionally require gamma1 == gamma2.
enum class CorrelatorFamily { Ortho, Schr, SchrExt, MetaNaive, MetaFinal, Cga, Dual };

std::string family_name(CorrelatorFamily f);
CorrelatorFamily correlator_family_from_string(const std::string& name);

struct CorrelatorSpec {
    CorrelatorFamily family = CorrelatorFamily::MetaFinal;
    double x1 = 0.5;
    double x2 = 0.5;
    double gamma1 = 0.25;
    double gamma2 = 0.25;
    double nu1 = 0.5;
    double nu2 = 0.5;
    double mu = 0.5;
    double mass = 1.0;
    double c = 0.0;
    double normalization = 1.0;
    // Opt-in for gamma1 < 0 in MetaFinal (mirrors the bounded profile into the
    // other wedge); without it a negative gamma1 is a domain error there.
    bool negative_gamma_literal = false;
};

struct FieldPoint {
    double t = 0.0;
    double r = 0.0;
    double zeta1 = 0.0;
    double zeta2 = 0.0;
};

// Principal-branch power helpers shared across the numeric layer. Exponents
// within 1e-12 of an integer take the exact integer path (valid for negative
// bases); otherwise a base on (-inf, 0] raises DomainError.
std::complex<double> pow_principal(double base, double expo);
std::complex<double> pow_principal(std::complex<double> base, double expo);

std::complex<double> eval_correlator(const CorrelatorSpec& spec, const FieldPoint& p);

struct CorrelatorGradient {
    std::complex<double> value{};
    std::complex<double> dt{};
    std::complex<double> dr{};
    std::complex<double> dzeta1{};
    std::complex<double> dzeta2{};
    std::complex<double> dmu{};
};

// Analytic first derivatives in (t, r, zeta1, zeta2, mu). MetaFinal and Cga
// profiles are not differentiable across r = 0 (NonDifferentiablePointError).
CorrelatorGradient grad_correlator(const CorrelatorSpec& spec, const FieldPoint& p);

} // namespace metaward
