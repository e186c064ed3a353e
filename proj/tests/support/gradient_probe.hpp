#pragma once

// Shared by the unit suite and the acceptance gate: draws random points in the
// interior of a family's domain (margins keep finite differences well away
// from singular loci) and measures the worst relative disagreement between
// analytic partials and central finite differences.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "metaward/correlator.hpp"

namespace probe {

struct FdResult {
    double max_rel_err = 0.0;
    int points = 0;
};

inline double rel_err(std::complex<double> analytic, std::complex<double> fd) {
    return std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
}

// Central difference of eval_correlator along one point coordinate.
template <typename Mutate>
std::complex<double> central(const metaward::CorrelatorSpec& spec, const metaward::FieldPoint& p,
                             double h, Mutate&& mutate) {
    metaward::FieldPoint hi = p, lo = p;
    metaward::CorrelatorSpec shi = spec, slo = spec;
    mutate(hi, shi, +h);
    mutate(lo, slo, -h);
    return (eval_correlator(shi, hi) - eval_correlator(slo, lo)) / std::complex<double>(2.0 * h);
}

inline metaward::CorrelatorSpec family_spec(metaward::CorrelatorFamily family) {
    metaward::CorrelatorSpec spec;
    spec.family = family;
    spec.x1 = spec.x2 = 0.8;
    spec.gamma1 = spec.gamma2 = 0.45;
    spec.nu1 = 0.6;
    spec.nu2 = 0.7;
    spec.mu = 0.7;
    spec.mass = 1.2;
    spec.c = 0.2;
    return spec;
}

// Rejection-samples an interior point for the family, margins >= 0.1.
inline metaward::FieldPoint draw_point(metaward::CorrelatorFamily family,
                                       const metaward::CorrelatorSpec& spec, std::mt19937& rng) {
    using metaward::CorrelatorFamily;
    std::uniform_real_distribution<double> mag(0.3, 3.0);
    std::uniform_real_distribution<double> zdist(-2.0, 2.0);
    std::uniform_int_distribution<int> coin(0, 1);

    for (;;) {
        metaward::FieldPoint p;
        double sign_t = coin(rng) ? 1.0 : -1.0;
        p.t = sign_t * mag(rng);
        p.r = (coin(rng) ? 1.0 : -1.0) * mag(rng);
        p.zeta1 = zdist(rng);
        p.zeta2 = zdist(rng);
        switch (family) {
            case CorrelatorFamily::Ortho:
                return p;
            case CorrelatorFamily::Schr:
            case CorrelatorFamily::SchrExt:
                p.t = std::abs(p.t); // stay inside the causal branch
                if (spec.mass * p.t < 0.2) continue;
                return p;
            case CorrelatorFamily::MetaNaive:
                p.t = std::abs(p.t); // fractional power of t needs t > 0
                if (1.0 + spec.mu * p.r / p.t < 0.2) continue;
                return p;
            case CorrelatorFamily::MetaFinal:
            case CorrelatorFamily::Cga:
                if (std::abs(p.r) < 0.15) continue; // non-smooth across r = 0
                return p;
            case CorrelatorFamily::Dual: {
                if (1.0 + spec.mu * p.r / p.t < 0.2) continue;
                double lambda = std::log(1.0 + spec.mu * p.r / p.t) / spec.mu;
                if (std::abs(lambda) < 0.1) continue; // keep off the branch cut
                double re = 0.5 * (p.zeta1 + p.zeta2) + spec.c;
                if (std::abs(std::complex<double>(re, lambda)) < 0.2) continue;
                return p;
            }
        }
    }
}

// 100-point battery for one family; h scales with the coordinate magnitude.
inline FdResult gradient_battery(metaward::CorrelatorFamily family, unsigned seed = 20260815u,
                                 int n_points = 100) {
    std::mt19937 rng(seed);
    metaward::CorrelatorSpec spec = family_spec(family);
    FdResult out;
    for (int i = 0; i < n_points; ++i) {
        metaward::FieldPoint p = draw_point(family, spec, rng);
        metaward::CorrelatorGradient g = grad_correlator(spec, p);

        auto step = [](double coord) { return 1e-6 * std::max(1.0, std::abs(coord)); };
        double worst = 0.0;
        worst = std::max(worst, rel_err(g.dt, central(spec, p, step(p.t),
            [](metaward::FieldPoint& q, metaward::CorrelatorSpec&, double h) { q.t += h; })));
        worst = std::max(worst, rel_err(g.dr, central(spec, p, step(p.r),
            [](metaward::FieldPoint& q, metaward::CorrelatorSpec&, double h) { q.r += h; })));
        worst = std::max(worst, rel_err(g.dzeta1, central(spec, p, step(p.zeta1),
            [](metaward::FieldPoint& q, metaward::CorrelatorSpec&, double h) { q.zeta1 += h; })));
        worst = std::max(worst, rel_err(g.dzeta2, central(spec, p, step(p.zeta2),
            [](metaward::FieldPoint& q, metaward::CorrelatorSpec&, double h) { q.zeta2 += h; })));
        worst = std::max(worst, rel_err(g.dmu, central(spec, p, step(spec.mu),
            [](metaward::FieldPoint&, metaward::CorrelatorSpec& s, double h) { s.mu += h; })));

        out.max_rel_err = std::max(out.max_rel_err, worst);
        ++out.points;
    }
    return out;
}

} // namespace probe
