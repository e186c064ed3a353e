#include "metaward/generators.hpp"

#include <stdexcept>

#include "metaward/errors.hpp"

namespace metaward {
namespace {

Poly var(const RingPtr& ring, const std::string& name, int k = 1) {
    return Poly::variable(ring, name, k);
}

GaussianRational q(long long v) { return GaussianRational(v); }

// (t + mu r)^k for k >= 0.
Poly shifted_time_pow(const RingPtr& ring, int k) {
    return (var(ring, "t") + var(ring, "mu") * var(ring, "r")).pow(k);
}

// ((t + mu r)^k - t^k) / mu: every surviving monomial carries mu^j with
// j >= 1, so the division is exact (no Laurent tail in t).
Poly bracket_over_mu(const RingPtr& ring, int k) {
    Poly diffp = shifted_time_pow(ring, k) - var(ring, "t").pow(k);
    return diffp * var(ring, "mu", -1);
}

DiffOp meta_x(const RingPtr& ring, int n) {
    DiffOp op(ring);
    op += DiffOp::derivative(ring, "t").left_multiply(-var(ring, "t").pow(n + 1));
    op += DiffOp::derivative(ring, "r").left_multiply(-bracket_over_mu(ring, n + 1));
    if (n + 1 != 0) {
        if (n >= 1) {
            Poly coef = var(ring, "gamma") * bracket_over_mu(ring, n);
            op += DiffOp::multiplication(coef * q(-(n + 1)));
        }
        op += DiffOp::multiplication(var(ring, "x") * var(ring, "t").pow(n) * q(-(n + 1)));
    }
    return op;
}

DiffOp meta_y(const RingPtr& ring, int n) {
    DiffOp op(ring);
    op += DiffOp::derivative(ring, "r").left_multiply(-shifted_time_pow(ring, n + 1));
    if (n + 1 != 0) {
        op += DiffOp::multiplication(var(ring, "gamma") * shifted_time_pow(ring, n) * q(-(n + 1)));
    }
    return op;
}

DiffOp dual_x(const RingPtr& ring, int n) {
    DiffOp op(ring);
    if (n >= 1) {
        Poly coef = bracket_over_mu(ring, n) * (GaussianRational::i() * q(n + 1));
        op += DiffOp::derivative(ring, "zeta").left_multiply(coef);
    }
    op += DiffOp::derivative(ring, "t").left_multiply(-var(ring, "t").pow(n + 1));
    op += DiffOp::derivative(ring, "r").left_multiply(-bracket_over_mu(ring, n + 1));
    if (n + 1 != 0) {
        op += DiffOp::multiplication(var(ring, "x") * var(ring, "t").pow(n) * q(-(n + 1)));
    }
    return op;
}

DiffOp dual_y(const RingPtr& ring, int n) {
    DiffOp op(ring);
    if (n + 1 != 0) {
        Poly coef = shifted_time_pow(ring, n) * (GaussianRational::i() * q(n + 1));
        op += DiffOp::derivative(ring, "zeta").left_multiply(coef);
    }
    op += DiffOp::derivative(ring, "r").left_multiply(-shifted_time_pow(ring, n + 1));
    return op;
}

DiffOp dual_n(const RingPtr& ring) {
    DiffOp op(ring);
    op += DiffOp::derivative(ring, "r").left_multiply(-var(ring, "r"));
    op += DiffOp::derivative(ring, "zeta").left_multiply(-(var(ring, "zeta") + var(ring, "c")));
    op += DiffOp::derivative(ring, "mu").left_multiply(var(ring, "mu"));
    op += DiffOp::multiplication(-var(ring, "nu"));
    return op;
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Meta: return "meta";
        case Family::MetaDual: return "dual";
        case Family::Cga: return "cga";
        case Family::OrthoChiral: return "ortho_chiral";
    }
    return "unknown";
}

std::string generator_label(GenKind kind, int index) {
    switch (kind) {
        case GenKind::X: return "X_" + std::to_string(index);
        case GenKind::Y: return "Y_" + std::to_string(index);
        case GenKind::N: return "N";
        case GenKind::S: return "S";
        case GenKind::Ell: return "l_" + std::to_string(index);
        case GenKind::EllBar: return "lbar_" + std::to_string(index);
    }
    return "?";
}

DiffOp make_generator(const GeneratorSpec& spec) {
    const RingPtr& ring = Ring::one_body();
    const int n = spec.index;
    const bool indexed = spec.kind != GenKind::N && spec.kind != GenKind::S;
    if (indexed && n < -1) {
        throw UnsupportedIndexError("generator index " + std::to_string(n) +
                                    " out of range: only n >= -1 is representable");
    }

    DiffOp op(ring);
    switch (spec.family) {
        case Family::Meta:
            if (spec.kind == GenKind::X) op = meta_x(ring, n);
            else if (spec.kind == GenKind::Y) op = meta_y(ring, n);
            else if (spec.kind == GenKind::S) op = advection_op();
            else throw Error("kind not available in family meta");
            break;
        case Family::MetaDual:
            if (spec.kind == GenKind::X) op = dual_x(ring, n);
            else if (spec.kind == GenKind::Y) op = dual_y(ring, n);
            else if (spec.kind == GenKind::N) op = dual_n(ring);
            else throw Error("kind not available in family dual");
            break;
        case Family::Cga:
            if (spec.kind == GenKind::X) op = meta_x(ring, n).substitute("mu", GaussianRational(0));
            else if (spec.kind == GenKind::Y) op = meta_y(ring, n).substitute("mu", GaussianRational(0));
            else throw Error("kind not available in family cga");
            break;
        case Family::OrthoChiral: {
            if (spec.kind != GenKind::Ell && spec.kind != GenKind::EllBar) {
                throw Error("kind not available in family ortho_chiral");
            }
            DiffOp ellbar = meta_y(ring, n).left_multiply(var(ring, "mu", -1));
            if (spec.kind == GenKind::EllBar) op = ellbar;
            else op = meta_x(ring, n) - ellbar;
            break;
        }
    }

    for (const auto& [name, value] : spec.params) {
        if (name != "x" && name != "gamma" && name != "nu" && name != "c") {
            throw Error("unknown generator parameter '" + name + "'");
        }
        if (ring->has(name)) op = op.substitute(name, value);
    }
    return op;
}

DiffOp advection_op() {
    const RingPtr& ring = Ring::one_body();
    DiffOp op(ring);
    op += DiffOp::derivative(ring, "t").left_multiply(-var(ring, "mu"));
    op += DiffOp::derivative(ring, "r");
    return op;
}

DiffOp two_body_sum(const DiffOp& one_body_op) {
    return lift_two_body(one_body_op, 1) + lift_two_body(one_body_op, 2);
}

DiffOp two_body_N(const ParamValues& params) {
    GeneratorSpec spec;
    spec.family = Family::MetaDual;
    spec.kind = GenKind::N;
    spec.params = params;
    DiffOp lifted = two_body_sum(make_generator(spec));
    const RingPtr& ring = Ring::two_body();
    lifted -= DiffOp::derivative(ring, "mu").left_multiply(var(ring, "mu"));
    return lifted;
}

namespace {

std::vector<std::pair<std::string, DiffOp>> lifted_family(Family family, bool with_n) {
    std::vector<std::pair<std::string, DiffOp>> out;
    for (GenKind kind : {GenKind::X, GenKind::Y}) {
        for (int n = -1; n <= 1; ++n) {
            GeneratorSpec spec;
            spec.family = family;
            spec.kind = kind;
            spec.index = n;
            out.emplace_back(generator_label(kind, n), two_body_sum(make_generator(spec)));
        }
    }
    if (with_n) out.emplace_back("N", two_body_N());
    return out;
}

} // namespace

std::vector<std::pair<std::string, DiffOp>> two_body_meta_set() {
    return lifted_family(Family::Meta, false);
}

std::vector<std::pair<std::string, DiffOp>> two_body_dual_set() {
    return lifted_family(Family::MetaDual, true);
}

} // namespace metaward
