#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "metaward/correlator.hpp"
#include "metaward/diffop.hpp"
#include "metaward/generators.hpp"

namespace metaward {

struct GridSpec {
    std::string version = "grid-v1";
    std::vector<FieldPoint> points;

    // t in +-{0.5,1,2,4}, r in +-{0.25,1,3}, zeta1/zeta2 in {-1,0.5,2}.
    static GridSpec standard();
    // CSV with header "t,r,zeta1,zeta2".
    static GridSpec from_csv(const std::string& path);
};

// Point data needed to apply a first-order operator numerically: a value for
// every ring symbol (to evaluate polynomial coefficients) plus the partial
// derivatives of the target function keyed by differentiable symbol name.
struct PointEval {
    Assignment symbol_values;
    std::map<std::string, std::complex<double>> partials;
    std::complex<double> value{};
};

// Returns (|sum of term contributions|, sum of |contribution|). The second
// entry is the natural scale for a relative residual. Throws on operators of
// differential order above one.
std::pair<double, double> apply_first_order(const DiffOp& op, const PointEval& pe);

// Fixed base-point offsets that turn relative grid coordinates into two-body
// coordinates: t2 = 0.7, r2 = -0.3, t1 = t + t2, r1 = r + r2.
inline constexpr double kTwoBodyTimeOffset = 0.7;
inline constexpr double kTwoBodySpaceOffset = -0.3;

// Margin below which a point counts as sitting on a singular locus.
inline constexpr double kDomainMargin = 1e-3;

struct GeneratorResidual {
    std::string generator;
    double max_rel = 0.0;
    double mean_rel = 0.0;
    int points_used = 0;
    int points_skipped = 0;
};

struct WardReport {
    std::string check;           // "two_body_ward" or "reduced_system"
    std::string family;
    std::string grid_version;
    double tol = 0.0;
    std::vector<GeneratorResidual> generators;
    double max_rel = 0.0;
    bool pass = false;
};

// Natural lifted generator set for a correlator family: the dual set
// (including the shared-scale N) for Dual, the contracted set for Cga,
// otherwise the six lifted meta generators.
std::vector<std::pair<std::string, DiffOp>> ward_ops_for(CorrelatorFamily family);

WardReport ward_residual(const CorrelatorSpec& spec, const GridSpec& grid, double tol);
WardReport ward_residual(const CorrelatorSpec& spec, const GridSpec& grid, double tol,
                         const std::vector<std::pair<std::string, DiffOp>>& ops);

// Five-operator first-order system over the reduced ring (t, r, zeta1,
// zeta2, mu) annihilating the dual correlator.
std::vector<std::pair<std::string, DiffOp>> build_reduced_system();
WardReport reduced_system_residual(const CorrelatorSpec& spec, const GridSpec& grid, double tol);

// Collapse coordinate w = (u - lambda(u)) + i v with lambda(u) =
// ln(1 + mu u)/mu: points with equal w have equal normalized profile
// ghat(w) = w^(-nu_sum). Pairs are built from the two monotone branches of
// u - lambda(u) by bisection.
struct WCollapsePair {
    double u_minus = 0.0;
    double u_plus = 0.0;
    double v = 0.0;
    double w_real = 0.0;
    std::complex<double> ghat{};
    double rel_gap = 0.0;       // |direct(u-) - direct(u+)| / |direct(u+)|
    double norm_dev = 0.0;      // deviation of direct / phase from w^(-nu_sum)
};

struct WCollapseReport {
    double nu_sum = 0.0;
    double mu = 0.0;
    double tol = 0.0;
    std::vector<WCollapsePair> pairs;
    double max_rel_gap = 0.0;
    double max_norm_dev = 0.0;
    bool pass = false;
};

WCollapseReport w_collapse_check(double nu_sum, double mu, double tol);

struct SymmetryReport {
    std::string family;
    double tol = 0.0;
    double max_rel_dev = 0.0;
    int points_used = 0;
    int points_skipped = 0;
    bool pass = false;
};

// C(t, r, zeta1, zeta2; 1<->2) == C(-t, -r, zeta2, zeta1; 2<->1) with the
// field labels (x, gamma, nu) swapped alongside.
SymmetryReport check_symmetry(const CorrelatorSpec& spec, const GridSpec& grid, double tol);

struct BoundednessRow {
    double u = 0.0;
    double abs_value = 0.0;
};

struct BoundednessReport {
    std::string family;
    double t = 1.0;
    double cap = 0.0;       // claimed supremum for the bounded families
    double sup_abs = 0.0;
    bool bounded = false;
    std::vector<BoundednessRow> profile;
};

// Scans |C| along u = r/t at fixed t (dual families also fix
// zeta1 = zeta2 = 1).
BoundednessReport check_boundedness(const CorrelatorSpec& spec, double t, int n_samples);

struct CausalityReport {
    std::string family;
    int acausal_nonzero = 0;    // points with t < 0 and a nonzero value
    int causal_nonzero = 0;     // points with t > 0 and a nonzero value
    double max_abs_acausal = 0.0;
    bool pass = false;          // no support at t < 0
};

CausalityReport check_causality(const CorrelatorSpec& spec, const GridSpec& grid);

struct ContractionRow {
    double mu = 0.0;
    double max_rel_gap = 0.0;
};

struct ContractionLimitReport {
    std::vector<ContractionRow> rows;
    double tol = 0.0;           // applies to the smallest mu
    bool pass = false;
};

// Gap between the bounded profile at small mu and its contracted limit,
// measured over the grid; expected to shrink linearly in mu.
ContractionLimitReport contraction_limit_check(const CorrelatorSpec& final_spec,
                                               const GridSpec& grid,
                                               std::vector<double> mus, double tol);

struct SingularityRow {
    double u = 0.0;
    double abs_naive = 0.0;
    double abs_final = 0.0;
};

// |C| along u -> -1/mu from above: the naive profile diverges, the bounded
// profile stays below its cap.
std::vector<SingularityRow> singularity_profile(const CorrelatorSpec& spec, double t, int n_steps);

namespace detail {
// Worker count from METAWARD_THREADS (default: hardware, clamped to [1, 8]).
int thread_count();
// Static stride scheduling; results must go to disjoint slots so that the
// outcome is independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
} // namespace detail

} // namespace metaward
