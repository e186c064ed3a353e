#include "metaward/verify.hpp"

#include <map>

namespace metaward {
namespace {

std::string coef_label(long long c, const std::string& base) {
    if (c == 0) return "0";
    if (c == 1) return base;
    if (c == -1) return "-" + base;
    return std::to_string(c) + "*" + base;
}

void push_pair(AlgebraReport& report, std::string lhs, std::string rhs, const DiffOp& residual) {
    AlgebraPair p;
    p.lhs = std::move(lhs);
    p.rhs = std::move(rhs);
    p.zero = residual.is_zero();
    p.residual_text = residual.to_string();
    if (!p.zero) report.all_zero = false;
    report.pairs.push_back(std::move(p));
}

struct GenTable {
    Family family;
    ParamValues params;
    GeneratorHook hook;
    std::map<std::pair<int, int>, DiffOp> cache; // (kind as int, index)

    const DiffOp& get(GenKind kind, int n) {
        auto key = std::make_pair(static_cast<int>(kind), n);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        GeneratorSpec spec;
        spec.family = family;
        spec.kind = kind;
        spec.index = n;
        spec.params = params;
        DiffOp op = make_generator(spec);
        if (hook) op = hook(kind, n, op);
        return cache.emplace(key, std::move(op)).first->second;
    }
};

} // namespace

AlgebraReport verify_structure_constants(Family family, int n_max,
                                         const ParamValues& params,
                                         const GeneratorHook& hook) {
    AlgebraReport report;
    report.family = family_name(family);
    report.check = "structure_constants";
    report.n_max = n_max;
    report.all_zero = true;

    GenTable table{family, params, hook, {}};
    const RingPtr& ring = Ring::one_body();
    Poly mu = Poly::variable(ring, "mu");

    auto lhs_text = [](GenKind a, int n, GenKind b, int m) {
        return "[" + generator_label(a, n) + ", " + generator_label(b, m) + "]";
    };

    for (int n = -1; n <= n_max; ++n) {
        for (int m = -1; m <= n_max; ++m) {
            if (m < n) {
                // [X_n, X_m] with n > m (antisymmetric partner is redundant)
                DiffOp res = commutator(table.get(GenKind::X, n), table.get(GenKind::X, m));
                if (n != m) res -= table.get(GenKind::X, n + m) * GaussianRational(n - m);
                push_pair(report, lhs_text(GenKind::X, n, GenKind::X, m),
                          coef_label(n - m, generator_label(GenKind::X, n + m)), res);

                DiffOp resy = commutator(table.get(GenKind::Y, n), table.get(GenKind::Y, m));
                std::string rhs;
                if (family == Family::Cga) {
                    rhs = "0";
                } else {
                    resy -= (table.get(GenKind::Y, n + m) * GaussianRational(n - m)).left_multiply(mu);
                    rhs = (n - m == 0) ? "0" : "mu*" + coef_label(n - m, generator_label(GenKind::Y, n + m));
                }
                push_pair(report, lhs_text(GenKind::Y, n, GenKind::Y, m), rhs, resy);
            }
            DiffOp resxy = commutator(table.get(GenKind::X, n), table.get(GenKind::Y, m));
            if (n != m) resxy -= table.get(GenKind::Y, n + m) * GaussianRational(n - m);
            push_pair(report, lhs_text(GenKind::X, n, GenKind::Y, m),
                      coef_label(n - m, generator_label(GenKind::Y, n + m)), resxy);
        }
    }
    return report;
}

AlgebraReport verify_N_extension(int n_max, const ParamValues& params) {
    AlgebraReport report;
    report.family = family_name(Family::MetaDual);
    report.check = "scale_extension";
    report.n_max = n_max;
    report.all_zero = true;

    GenTable table{Family::MetaDual, params, {}, {}};
    const DiffOp& gen_n = table.get(GenKind::N, 0);

    for (int n = -1; n <= n_max; ++n) {
        DiffOp resx = commutator(table.get(GenKind::X, n), gen_n);
        push_pair(report, "[" + generator_label(GenKind::X, n) + ", N]", "0", resx);
    }
    for (int n = -1; n <= n_max; ++n) {
        DiffOp resy = commutator(table.get(GenKind::Y, n), gen_n);
        resy += table.get(GenKind::Y, n);
        push_pair(report, "[" + generator_label(GenKind::Y, n) + ", N]",
                  "-" + generator_label(GenKind::Y, n), resy);
    }
    DiffOp s = advection_op();
    DiffOp ress = commutator(s, gen_n) + s;
    push_pair(report, "[S, N]", "-S", ress);
    return report;
}

AlgebraReport verify_dynamical_symmetry(int n_max) {
    AlgebraReport report;
    report.family = family_name(Family::Meta);
    report.check = "advection_symmetry";
    report.n_max = n_max;
    report.all_zero = true;

    GenTable table{Family::Meta, {}, {}, {}};
    const RingPtr& ring = Ring::one_body();
    DiffOp s = advection_op();
    Poly t = Poly::variable(ring, "t");
    Poly correction = Poly::variable(ring, "mu") * Poly::variable(ring, "x") - Poly::variable(ring, "gamma");

    for (int n = -1; n <= n_max; ++n) {
        DiffOp res = commutator(s, table.get(GenKind::Y, n));
        push_pair(report, "[S, " + generator_label(GenKind::Y, n) + "]", "0", res);
    }
    for (int n = -1; n <= n_max; ++n) {
        DiffOp rhs(ring);
        if (n + 1 != 0) rhs += s.left_multiply(t.pow(n) * GaussianRational(-(n + 1)));
        if (n * (n + 1) != 0) {
            rhs += DiffOp::multiplication(correction * t.pow(n - 1) * GaussianRational(n * (n + 1)));
        }
        DiffOp res = commutator(s, table.get(GenKind::X, n)) - rhs;
        push_pair(report, "[S, " + generator_label(GenKind::X, n) + "]",
                  rhs.is_zero() ? "0" : rhs.to_string(), res);
    }

    GeneratorSpec nspec;
    nspec.family = Family::MetaDual;
    nspec.kind = GenKind::N;
    DiffOp gen_n = make_generator(nspec);
    DiffOp res = commutator(s, gen_n) + s;
    push_pair(report, "[S, N]", "-S", res);
    return report;
}

AlgebraReport verify_chiral_isomorphism(int n_max) {
    AlgebraReport report;
    report.family = family_name(Family::OrthoChiral);
    report.check = "chiral_split";
    report.n_max = n_max;
    report.all_zero = true;

    GenTable chiral{Family::OrthoChiral, {}, {}, {}};
    GenTable meta{Family::Meta, {}, {}, {}};
    const RingPtr& ring = Ring::one_body();
    Poly mu = Poly::variable(ring, "mu");

    auto lhs_text = [](GenKind a, int n, GenKind b, int m) {
        return "[" + generator_label(a, n) + ", " + generator_label(b, m) + "]";
    };

    for (int n = -1; n <= n_max; ++n) {
        for (int m = -1; m <= n_max; ++m) {
            if (m < n) {
                for (GenKind kind : {GenKind::Ell, GenKind::EllBar}) {
                    DiffOp res = commutator(chiral.get(kind, n), chiral.get(kind, m));
                    res -= chiral.get(kind, n + m) * GaussianRational(n - m);
                    push_pair(report, lhs_text(kind, n, kind, m),
                              coef_label(n - m, generator_label(kind, n + m)), res);
                }
            }
            DiffOp cross = commutator(chiral.get(GenKind::Ell, n), chiral.get(GenKind::EllBar, m));
            push_pair(report, lhs_text(GenKind::Ell, n, GenKind::EllBar, m), "0", cross);
        }
    }
    for (int n = -1; n <= n_max; ++n) {
        DiffOp resx = meta.get(GenKind::X, n) - chiral.get(GenKind::Ell, n) - chiral.get(GenKind::EllBar, n);
        push_pair(report, generator_label(GenKind::X, n),
                  generator_label(GenKind::Ell, n) + " + " + generator_label(GenKind::EllBar, n), resx);
        DiffOp resy = meta.get(GenKind::Y, n) - chiral.get(GenKind::EllBar, n).left_multiply(mu);
        push_pair(report, generator_label(GenKind::Y, n),
                  "mu*" + generator_label(GenKind::EllBar, n), resy);
    }
    return report;
}

ContractionResult contract_cga(int n_max) {
    ContractionResult out;
    out.report.family = family_name(Family::Cga);
    out.report.check = "contraction";
    out.report.n_max = n_max;
    out.report.all_zero = true;

    GenTable meta{Family::Meta, {}, {}, {}};
    GenTable cga{Family::Cga, {}, {}, {}};
    const GaussianRational zero(0);

    for (GenKind kind : {GenKind::X, GenKind::Y}) {
        for (int n = -1; n <= n_max; ++n) {
            DiffOp contracted = meta.get(kind, n).substitute("mu", zero);
            out.generators.emplace_back(generator_label(kind, n), contracted);
            DiffOp res = contracted - cga.get(kind, n);
            push_pair(out.report, generator_label(kind, n) + "|mu=0",
                      generator_label(kind, n), res);
        }
    }

    AlgebraReport brackets = verify_structure_constants(Family::Cga, n_max);
    for (auto& p : brackets.pairs) {
        if (!p.zero) out.report.all_zero = false;
        out.report.pairs.push_back(std::move(p));
    }
    return out;
}

} // namespace metaward
