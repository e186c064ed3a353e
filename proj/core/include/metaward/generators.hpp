#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "metaward/diffop.hpp"

namespace metaward {

enum class Family { Meta, MetaDual, Cga, OrthoChiral };
enum class GenKind { X, Y, N, S, Ell, EllBar };

std::string family_name(Family f);
std::string generator_label(GenKind kind, int index);

// Numeric values for the formal parameters x, gamma, nu, c. Anything not
// listed stays a formal symbol.
using ParamValues = std::map<std::string, GaussianRational>;

struct GeneratorSpec {
    Family family = Family::Meta;
    GenKind kind = GenKind::X;
    int index = 0;              // ignored for N and S
    ParamValues params;
};

// One-body generator over Ring::one_body(). Index must be >= -1; terms whose
// integer prefactor vanishes are omitted before any negative power of t could
// arise. Kinds are restricted per family: X/Y (Meta, MetaDual, Cga),
// N (MetaDual), S (Meta), Ell/EllBar (OrthoChiral, Laurent in mu).
DiffOp make_generator(const GeneratorSpec& spec);

// S = -mu dt + dr.
DiffOp advection_op();

// lift(op, 1) + lift(op, 2).
DiffOp two_body_sum(const DiffOp& one_body_op);

// Two-body N with the shared scale mu: the plain lift sum carries mu dmu
// twice, one copy is removed so that a single global mu is dilated once.
DiffOp two_body_N(const ParamValues& params = {});

// X_{-1,0,1} and Y_{-1,0,1}, lifted and summed (six generators).
std::vector<std::pair<std::string, DiffOp>> two_body_meta_set();
// Dual X_{-1,0,1}, Y_{-1,0,1}, and the shared-mu N (seven generators).
std::vector<std::pair<std::string, DiffOp>> two_body_dual_set();

} // namespace metaward
