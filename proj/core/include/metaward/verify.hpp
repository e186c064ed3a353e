#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "metaward/generators.hpp"

namespace metaward {

struct AlgebraPair {
    std::string lhs;            // identity left side, e.g. "[X_1, Y_0]"
    std::string rhs;            // expected right side, e.g. "Y_1"
    std::string residual_text;  // canonical text of (lhs - rhs), "0" when exact
    bool zero = false;
};

struct AlgebraReport {
    std::string family;
    std::string check;
    int n_max = 1;
    std::vector<AlgebraPair> pairs;
    bool all_zero = false;
};

// Optional rewrite applied to each generator after construction; used to
// demonstrate that a corrupted generator is caught (see the CLI mutation flag).
using GeneratorHook = std::function<DiffOp(GenKind, int, const DiffOp&)>;

// Bracket table for X/Y with indices in [-1, n_max]:
//   [X_n, X_m] = (n-m) X_{n+m}
//   [X_n, Y_m] = (n-m) Y_{n+m}
//   [Y_n, Y_m] = mu (n-m) Y_{n+m}   (meta, dual)
//   [Y_n, Y_m] = 0                  (cga)
AlgebraReport verify_structure_constants(Family family, int n_max,
                                         const ParamValues& params = {},
                                         const GeneratorHook& hook = {});

// Dual-family checks of N: [X_n, N] = 0, [Y_n, N] = -Y_n, [S, N] = -S.
AlgebraReport verify_N_extension(int n_max, const ParamValues& params = {});

// S = -mu dt + dr against the meta family:
//   [S, Y_n] = 0
//   [S, X_n] = -(n+1) t^n S + n(n+1)(mu x - gamma) t^(n-1)
//   [S, N]   = -S
AlgebraReport verify_dynamical_symmetry(int n_max);

// l_n = X_n - mu^-1 Y_n and lbar_n = mu^-1 Y_n form two commuting copies of
// the same bracket table, and reassemble the original generators.
AlgebraReport verify_chiral_isomorphism(int n_max);

struct ContractionResult {
    std::vector<std::pair<std::string, DiffOp>> generators;
    AlgebraReport report;
};

// mu := 0 specialization of the meta generators; checks that the result is
// pole-free, matches the cga factory, and satisfies the cga bracket table.
ContractionResult contract_cga(int n_max);

} // namespace metaward
