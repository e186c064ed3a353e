#include "metaward/ward.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "metaward/errors.hpp"

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

namespace metaward {

using cplx = std::complex<double>;

GridSpec GridSpec::standard() {
    GridSpec grid;
    const double ts[] = {-4.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 4.0};
    const double rs[] = {-3.0, -1.0, -0.25, 0.25, 1.0, 3.0};
    const double zs[] = {-1.0, 0.5, 2.0};
    for (double t : ts)
        for (double r : rs)
            for (double z1 : zs)
                for (double z2 : zs) grid.points.push_back({t, r, z1, z2});
    return grid;
}

GridSpec GridSpec::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open grid file '" + path + "'");
    GridSpec grid;
    grid.version = "csv";
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw Error("grid file '" + path + "' line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        // strip whitespace and trailing CR
        std::string s;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
        if (s.empty()) continue;
        if (lineno == 1) {
            if (s != "t,r,zeta1,zeta2") fail("expected header 't,r,zeta1,zeta2'");
            continue;
        }
        std::array<double, 4> vals{};
        std::size_t pos = 0;
        for (int k = 0; k < 4; ++k) {
            std::size_t next = s.find(',', pos);
            std::string cell = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            if (cell.empty()) fail("empty field");
            try {
                std::size_t used = 0;
                vals[k] = std::stod(cell, &used);
                if (used != cell.size()) fail("trailing characters in '" + cell + "'");
            } catch (const std::exception&) {
                fail("cannot parse number '" + cell + "'");
            }
            if (k < 3) {
                if (next == std::string::npos) fail("expected 4 comma-separated fields");
                pos = next + 1;
            } else if (next != std::string::npos) {
                fail("expected exactly 4 fields");
            }
        }
        grid.points.push_back({vals[0], vals[1], vals[2], vals[3]});
    }
    if (grid.points.empty()) throw Error("grid file '" + path + "' has no data rows");
    return grid;
}

namespace detail {

int thread_count() {
    if (const char* env = std::getenv("METAWARD_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 64) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<int>(std::min(hw, 8u));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = static_cast<std::size_t>(w); i < n;
                     i += static_cast<std::size_t>(workers))
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace detail

std::pair<double, double> apply_first_order(const DiffOp& op, const PointEval& pe) {
    const RingPtr& ring = op.ring();
    const auto& dpos = ring->diff_positions();
    cplx sum(0.0, 0.0);
    double scale = 0.0;
    for (const auto& [index, coef] : op.terms()) {
        int total = 0;
        int slot = -1;
        for (std::size_t j = 0; j < index.size(); ++j) {
            total += index[j];
            if (index[j] > 0) slot = static_cast<int>(j);
        }
        if (total > 1) throw Error("apply_first_order: operator has differential order > 1");
        cplx factor = pe.value;
        if (total == 1) {
            const std::string& name = ring->symbol(static_cast<std::size_t>(dpos[slot])).name;
            auto it = pe.partials.find(name);
            if (it == pe.partials.end())
                throw Error("apply_first_order: no partial supplied for '" + name + "'");
            factor = it->second;
        }
        cplx term = coef.eval(pe.symbol_values) * factor;
        sum += term;
        scale += std::abs(term);
    }
    return {std::abs(sum), scale};
}

namespace {

// Relative residual with the per-point contribution scale; exact-zero stacks
// count as exact-zero residuals.
double rel_residual(const DiffOp& op, const PointEval& pe) {
    auto [res, scale] = apply_first_order(op, pe);
    if (scale <= 0.0) return 0.0;
    return res / scale;
}

Assignment base_params(const CorrelatorSpec& spec) {
    return {
        {"x1", spec.x1},     {"x2", spec.x2},     {"gamma1", spec.gamma1},
        {"gamma2", spec.gamma2}, {"nu1", spec.nu1}, {"nu2", spec.nu2},
        {"c", spec.c},       {"mu", spec.mu},
    };
}

bool near_int(double v) { return std::abs(v - std::nearbyint(v)) < 1e-12; }

// Grid filter with the kDomainMargin guard band around every singular locus
// of the family. Points failing it are skipped (and counted).
bool usable_point(const CorrelatorSpec& spec, const FieldPoint& p) {
    const double eps = kDomainMargin;
    const double t = p.t, r = p.r;
    if (std::abs(t) < eps) return false;
    switch (spec.family) {
        case CorrelatorFamily::Ortho:
            return t * t + r * r >= eps;
        case CorrelatorFamily::Schr:
            return near_int(spec.x1) ? true : t >= eps;
        case CorrelatorFamily::SchrExt:
            return t >= eps;
        case CorrelatorFamily::MetaNaive: {
            if (!near_int(2.0 * spec.x1) && t < eps) return false;
            return 1.0 + spec.mu * r / t >= eps;
        }
        case CorrelatorFamily::MetaFinal: {
            if (r / t < eps || std::abs(r) < eps) return false;
            double sgn = spec.gamma1 >= 0.0 ? 1.0 : -1.0;
            return 1.0 + sgn * spec.mu * std::abs(r / t) >= eps;
        }
        case CorrelatorFamily::Cga:
            return r / t >= eps && std::abs(r) >= eps;
        case CorrelatorFamily::Dual: {
            double base = 1.0 + spec.mu * r / t;
            if (base < eps) return false;
            double lambda = std::log(base) / spec.mu;
            double zplus = 0.5 * (p.zeta1 + p.zeta2) + spec.c;
            if (std::hypot(zplus, lambda) < eps) return false;
            if (std::abs(lambda) < eps && zplus < eps && !near_int(spec.nu1 + spec.nu2)) return false;
            return true;
        }
    }
    return false;
}

struct PerPoint {
    bool used = false;
    std::vector<double> rels;
};

WardReport run_residuals(const CorrelatorSpec& spec, const GridSpec& grid, double tol,
                         const std::vector<std::pair<std::string, DiffOp>>& ops,
                         const std::function<PointEval(const FieldPoint&, const CorrelatorGradient&)>& lift) {
    WardReport report;
    report.check = "two_body_ward";
    report.family = family_name(spec.family);
    report.grid_version = grid.version;
    report.tol = tol;

    std::vector<PerPoint> slots(grid.points.size());
    detail::parallel_for(grid.points.size(), [&](std::size_t i) {
        const FieldPoint& p = grid.points[i];
        if (!usable_point(spec, p)) return;
        CorrelatorGradient g;
        try {
            g = grad_correlator(spec, p);
        } catch (const DomainError&) {
            return;
        } catch (const NonDifferentiablePointError&) {
            return;
        }
        PointEval pe = lift(p, g);
        PerPoint& out = slots[i];
        out.rels.reserve(ops.size());
        for (const auto& [name, op] : ops) out.rels.push_back(rel_residual(op, pe));
        out.used = true;
    });

    report.generators.resize(ops.size());
    for (std::size_t k = 0; k < ops.size(); ++k) report.generators[k].generator = ops[k].first;
    for (const PerPoint& pp : slots) {
        for (std::size_t k = 0; k < ops.size(); ++k) {
            GeneratorResidual& gr = report.generators[k];
            if (!pp.used) {
                ++gr.points_skipped;
                continue;
            }
            ++gr.points_used;
            gr.max_rel = std::max(gr.max_rel, pp.rels[k]);
            gr.mean_rel += pp.rels[k];
        }
    }
    for (GeneratorResidual& gr : report.generators) {
        if (gr.points_used > 0) gr.mean_rel /= gr.points_used;
        report.max_rel = std::max(report.max_rel, gr.max_rel);
    }
    report.pass = report.max_rel <= tol;
    return report;
}

} // namespace

std::vector<std::pair<std::string, DiffOp>> ward_ops_for(CorrelatorFamily family) {
    switch (family) {
        case CorrelatorFamily::Dual:
            return two_body_dual_set();
        case CorrelatorFamily::Cga: {
            std::vector<std::pair<std::string, DiffOp>> out;
            for (GenKind kind : {GenKind::X, GenKind::Y}) {
                for (int n = -1; n <= 1; ++n) {
                    GeneratorSpec gs;
                    gs.family = Family::Cga;
                    gs.kind = kind;
                    gs.index = n;
                    out.emplace_back(generator_label(kind, n), two_body_sum(make_generator(gs)));
                }
            }
            return out;
        }
        default:
            return two_body_meta_set();
    }
}

WardReport ward_residual(const CorrelatorSpec& spec, const GridSpec& grid, double tol) {
    return ward_residual(spec, grid, tol, ward_ops_for(spec.family));
}

WardReport ward_residual(const CorrelatorSpec& spec, const GridSpec& grid, double tol,
                         const std::vector<std::pair<std::string, DiffOp>>& ops) {
    Assignment params = base_params(spec);
    auto lift = [&params](const FieldPoint& p, const CorrelatorGradient& g) {
        PointEval pe;
        pe.symbol_values = params;
        pe.symbol_values["t1"] = p.t + kTwoBodyTimeOffset;
        pe.symbol_values["r1"] = p.r + kTwoBodySpaceOffset;
        pe.symbol_values["zeta1"] = p.zeta1;
        pe.symbol_values["t2"] = kTwoBodyTimeOffset;
        pe.symbol_values["r2"] = kTwoBodySpaceOffset;
        pe.symbol_values["zeta2"] = p.zeta2;
        pe.value = g.value;
        pe.partials["t1"] = g.dt;
        pe.partials["t2"] = -g.dt;
        pe.partials["r1"] = g.dr;
        pe.partials["r2"] = -g.dr;
        pe.partials["zeta1"] = g.dzeta1;
        pe.partials["zeta2"] = g.dzeta2;
        pe.partials["mu"] = g.dmu;
        return pe;
    };
    return run_residuals(spec, grid, tol, ops, lift);
}

std::vector<std::pair<std::string, DiffOp>> build_reduced_system() {
    const RingPtr& ring = Ring::reduced();
    auto var = [&](const char* name) { return Poly::variable(ring, name); };
    auto d = [&](const char* name) { return DiffOp::derivative(ring, name); };
    const GaussianRational i = GaussianRational::i();
    const GaussianRational half(1, 2);

    std::vector<std::pair<std::string, DiffOp>> ops;

    DiffOp dil = d("t").left_multiply(var("t")) + d("r").left_multiply(var("r")) +
                 DiffOp::multiplication(var("x1") + var("x2"));
    ops.emplace_back("dilation", dil);

    DiffOp trans = d("r").left_multiply(var("t") + var("mu") * var("r")) -
                   (d("zeta1") + d("zeta2")) * i;
    ops.emplace_back("shift", trans);

    DiffOp specx = (d("zeta1") - d("zeta2")).left_multiply(var("r")) * i -
                   DiffOp::multiplication((var("x1") - var("x2")) * var("t"));
    ops.emplace_back("label_split", specx);

    DiffOp specy = (d("zeta1") - d("zeta2")).left_multiply(var("t") + var("mu") * var("r"));
    ops.emplace_back("label_shift", specy);

    Poly zsum = (var("zeta1") + var("zeta2")) * half + var("c");
    DiffOp scale = d("r").left_multiply(var("r")) + (d("zeta1") + d("zeta2")).left_multiply(zsum) -
                   d("mu").left_multiply(var("mu")) + DiffOp::multiplication(var("nu1") + var("nu2"));
    ops.emplace_back("scale", scale);

    return ops;
}

WardReport reduced_system_residual(const CorrelatorSpec& spec, const GridSpec& grid, double tol) {
    if (spec.family != CorrelatorFamily::Dual)
        throw Error("the reduced system applies to the dual family only");
    Assignment params = {{"x1", spec.x1},   {"x2", spec.x2}, {"nu1", spec.nu1},
                         {"nu2", spec.nu2}, {"c", spec.c},   {"mu", spec.mu}};
    auto lift = [&params](const FieldPoint& p, const CorrelatorGradient& g) {
        PointEval pe;
        pe.symbol_values = params;
        pe.symbol_values["t"] = p.t;
        pe.symbol_values["r"] = p.r;
        pe.symbol_values["zeta1"] = p.zeta1;
        pe.symbol_values["zeta2"] = p.zeta2;
        pe.value = g.value;
        pe.partials["t"] = g.dt;
        pe.partials["r"] = g.dr;
        pe.partials["zeta1"] = g.dzeta1;
        pe.partials["zeta2"] = g.dzeta2;
        pe.partials["mu"] = g.dmu;
        return pe;
    };
    WardReport report = run_residuals(spec, grid, tol, build_reduced_system(), lift);
    report.check = "reduced_system";
    return report;
}

namespace {

double lambda_of(double u, double mu) { return std::log(1.0 + mu * u) / mu; }
double collapse_h(double u, double mu) { return u - lambda_of(u, mu); }

// Solve h(u) = target on a monotone bracket [lo, hi].
double bisect_h(double lo, double hi, double target, double mu, bool increasing) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double val = collapse_h(mid, mu);
        bool go_right = increasing ? (val < target) : (val > target);
        if (go_right) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

WCollapseReport w_collapse_check(double nu_sum, double mu, double tol) {
    if (mu <= 0.0) throw DomainError("collapse coordinate needs a positive scale", "mu > 0");
    WCollapseReport report;
    report.nu_sum = nu_sum;
    report.mu = mu;
    report.tol = tol;

    // direct evaluation of the profile with the offset continued to v - i u
    auto direct = [&](double u, double v) {
        cplx z(v, lambda_of(u, mu) - u);
        return pow_principal(z, -nu_sum);
    };
    const cplx phase = std::exp(cplx(0.0, 0.5 * kPi * nu_sum)); // (-i)^(-nu_sum)

    const double h_targets[] = {0.0, 0.05, 0.2, 0.5, 1.0};
    const double vs[] = {0.3, 1.0, 2.5};
    for (double h0 : h_targets) {
        double u_minus = 0.0, u_plus = 0.0;
        if (h0 > 0.0) {
            double hi = 1.0;
            while (collapse_h(hi, mu) < h0) hi *= 2.0;
            u_plus = bisect_h(0.0, hi, h0, mu, true);
            u_minus = bisect_h(-(1.0 - 1e-14) / mu, 0.0, h0, mu, false);
        }
        for (double v : vs) {
            WCollapsePair pair;
            pair.u_minus = u_minus;
            pair.u_plus = u_plus;
            pair.v = v;
            pair.w_real = h0;
            cplx w(h0, v);
            pair.ghat = pow_principal(w, -nu_sum);
            cplx a = direct(u_minus, v);
            cplx b = direct(u_plus, v);
            pair.rel_gap = std::abs(a - b) / std::abs(b);
            pair.norm_dev = std::abs(b / phase - pair.ghat) / std::abs(pair.ghat);
            report.max_rel_gap = std::max(report.max_rel_gap, pair.rel_gap);
            report.max_norm_dev = std::max(report.max_norm_dev, pair.norm_dev);
            report.pairs.push_back(pair);
        }
    }
    report.pass = report.max_rel_gap <= tol && report.max_norm_dev <= tol;
    return report;
}

SymmetryReport check_symmetry(const CorrelatorSpec& spec, const GridSpec& grid, double tol) {
    SymmetryReport report;
    report.family = family_name(spec.family);
    report.tol = tol;

    CorrelatorSpec swapped = spec;
    std::swap(swapped.x1, swapped.x2);
    std::swap(swapped.gamma1, swapped.gamma2);
    std::swap(swapped.nu1, swapped.nu2);

    for (const FieldPoint& p : grid.points) {
        FieldPoint q{-p.t, -p.r, p.zeta2, p.zeta1};
        cplx a, b;
        try {
            a = eval_correlator(spec, p);
            b = eval_correlator(swapped, q);
        } catch (const DomainError&) {
            ++report.points_skipped;
            continue;
        }
        double scale = std::max(std::abs(a), std::abs(b));
        double dev = scale > 0.0 ? std::abs(a - b) / scale : 0.0;
        report.max_rel_dev = std::max(report.max_rel_dev, dev);
        ++report.points_used;
    }
    report.pass = report.points_used > 0 && report.max_rel_dev <= tol;
    return report;
}

BoundednessReport check_boundedness(const CorrelatorSpec& spec, double t, int n_samples) {
    if (n_samples < 2) throw Error("check_boundedness needs at least 2 samples");
    BoundednessReport report;
    report.family = family_name(spec.family);
    report.t = t;

    const double head = std::pow(std::abs(t), -2.0 * spec.x1) * spec.normalization;
    FieldPoint p;
    p.t = t;
    p.zeta1 = 1.0;
    p.zeta2 = 1.0;

    std::vector<double> us;
    const bool has_pole_edge = spec.family == CorrelatorFamily::MetaNaive ||
                               spec.family == CorrelatorFamily::Dual ||
                               (spec.family == CorrelatorFamily::MetaFinal && spec.gamma1 < 0.0);
    if (has_pole_edge && spec.mu != 0.0) {
        double edge = -1.0 / spec.mu;
        for (int k = 1; k <= 24; ++k) us.push_back(edge + std::abs(edge) * std::pow(10.0, -k / 4.0));
        double lo = edge * (1.0 - 1e-6);
        double hi = 10.0;
        for (int k = 0; k < n_samples; ++k)
            us.push_back(lo + (hi - lo) * (k + 0.5) / n_samples);
    } else {
        for (int k = 0; k < n_samples; ++k) us.push_back(-10.0 + 20.0 * (k + 0.5) / n_samples);
    }

    switch (spec.family) {
        case CorrelatorFamily::Dual: {
            double v = 0.5 * (p.zeta1 + p.zeta2) + spec.c;
            if (v <= 0.0)
                throw DomainError("dual boundedness scan needs a positive offset", "zeta_plus + c > 0");
            report.cap = head * std::pow(v, -(spec.nu1 + spec.nu2));
            break;
        }
        default:
            report.cap = head;
            break;
    }

    for (double u : us) {
        p.r = u * t;
        double a;
        try {
            a = std::abs(eval_correlator(spec, p));
        } catch (const DomainError&) {
            continue;
        }
        report.sup_abs = std::max(report.sup_abs, a);
        if (report.profile.size() < 64) report.profile.push_back({u, a});
    }
    report.bounded = report.sup_abs <= report.cap * (1.0 + 1e-9);
    return report;
}

CausalityReport check_causality(const CorrelatorSpec& spec, const GridSpec& grid) {
    CausalityReport report;
    report.family = family_name(spec.family);
    for (const FieldPoint& p : grid.points) {
        if (p.t == 0.0) continue;
        cplx v;
        try {
            v = eval_correlator(spec, p);
        } catch (const DomainError&) {
            continue;
        }
        if (p.t < 0.0) {
            if (std::abs(v) > 0.0) {
                ++report.acausal_nonzero;
                report.max_abs_acausal = std::max(report.max_abs_acausal, std::abs(v));
            }
        } else if (std::abs(v) > 0.0) {
            ++report.causal_nonzero;
        }
    }
    report.pass = report.acausal_nonzero == 0 && report.causal_nonzero > 0;
    return report;
}

ContractionLimitReport contraction_limit_check(const CorrelatorSpec& final_spec,
                                               const GridSpec& grid,
                                               std::vector<double> mus, double tol) {
    if (final_spec.family != CorrelatorFamily::MetaFinal)
        throw Error("contraction gap is measured from the bounded profile");
    ContractionLimitReport report;
    report.tol = tol;

    CorrelatorSpec limit = final_spec;
    limit.family = CorrelatorFamily::Cga;

    std::sort(mus.begin(), mus.end(), std::greater<double>());
    for (double mu : mus) {
        CorrelatorSpec at_mu = final_spec;
        at_mu.mu = mu;
        double gap = 0.0;
        for (const FieldPoint& p : grid.points) {
            if (std::abs(p.t) < kDomainMargin) continue;
            cplx a, b;
            try {
                a = eval_correlator(at_mu, p);
                b = eval_correlator(limit, p);
            } catch (const DomainError&) {
                continue;
            }
            if (std::abs(b) == 0.0) continue;
            gap = std::max(gap, std::abs(a - b) / std::abs(b));
        }
        report.rows.push_back({mu, gap});
    }
    report.pass = !report.rows.empty() && report.rows.back().max_rel_gap <= tol;
    return report;
}

std::vector<SingularityRow> singularity_profile(const CorrelatorSpec& spec, double t, int n_steps) {
    if (spec.mu == 0.0) throw DomainError("pole approach needs a nonzero scale", "mu != 0");
    if (n_steps < 2) throw Error("singularity_profile needs at least 2 steps");

    CorrelatorSpec naive = spec;
    naive.family = CorrelatorFamily::MetaNaive;
    CorrelatorSpec bounded = spec;
    bounded.family = CorrelatorFamily::MetaFinal;

    const double edge = -1.0 / spec.mu;
    std::vector<SingularityRow> rows;
    for (int k = 0; k < n_steps; ++k) {
        // distance decays from 1e-1 to 1e-6 of |edge|, log-spaced
        double expo = -1.0 - 5.0 * k / (n_steps - 1);
        double u = edge + std::abs(edge) * std::pow(10.0, expo);
        FieldPoint p{t, u * t, 0.0, 0.0};
        SingularityRow row;
        row.u = u;
        row.abs_naive = std::abs(eval_correlator(naive, p));
        try {
            row.abs_final = std::abs(eval_correlator(bounded, p));
        } catch (const DomainError&) {
            row.abs_final = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace metaward
