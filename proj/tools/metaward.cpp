// Command-line front end: symbolic bracket checks, correlator residual
// scans, spectral diagnostics, and an operator calculator.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "metaward/errors.hpp"
#include "metaward/hardy.hpp"
#include "metaward/op_parser.hpp"
#include "metaward/serialize.hpp"
#include "metaward/verify.hpp"
#include "metaward/version.hpp"
#include "metaward/ward.hpp"

namespace mw = metaward;
using ordered_json = nlohmann::ordered_json;

namespace {

// Per-subcommand output settings plus the computed result.
struct Sink {
    std::string format = "text";
    std::string out_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format: text, json, or csv")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
        cmd->add_option("--out", out_path, "Write the report to a file instead of stdout");
    }

    mw::ReportFormat fmt() const { return mw::report_format_from_string(format); }

    void emit(const std::string& text) const {
        if (out_path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw mw::Error("cannot open output file '" + out_path + "'");
        out << text;
        if (!out) throw mw::Error("failed writing output file '" + out_path + "'");
    }
};

struct AlgebraParams {
    int n_max = 2;
    std::vector<double> x, gamma, nu, c;

    void attach(CLI::App* cmd) {
        cmd->add_option("--nmax", n_max, "Largest generator index checked (from -1)")
            ->check(CLI::Range(-1, 8))
            ->capture_default_str();
        cmd->add_option("--x", x, "Numeric value for the scaling weight x")->expected(1);
        cmd->add_option("--gamma", gamma, "Numeric value for the shift weight gamma")->expected(1);
        cmd->add_option("--nu", nu, "Numeric value for the dual weight nu")->expected(1);
        cmd->add_option("--c", c, "Numeric value for the dual offset c")->expected(1);
    }

    mw::ParamValues values() const {
        mw::ParamValues out;
        auto put = [&out](const char* name, const std::vector<double>& v) {
            if (v.empty()) return;
            // exact rational embedding of the CLI decimal (scaled by 1e6)
            long long scaled = static_cast<long long>(std::llround(v.front() * 1e6));
            out.emplace(name, mw::GaussianRational(scaled, 1000000));
        };
        put("x", x);
        put("gamma", gamma);
        put("nu", nu);
        put("c", c);
        return out;
    }
};

struct CorrParams {
    std::string family = "meta_final";
    mw::CorrelatorSpec spec;
    std::string grid_path;
    double tol = 1e-6;

    void attach(CLI::App* cmd, bool with_family = true) {
        if (with_family) {
            cmd->add_option("--family", family,
                            "Correlator family: ortho, schr, schr_ext, meta_naive, meta_final, "
                            "cga, dual")
                ->check(CLI::IsMember({"ortho", "schr", "schr_ext", "meta_naive", "meta_final",
                                       "cga", "dual"}))
                ->capture_default_str();
        }
        cmd->add_option("--x1", spec.x1, "Scaling weight of field 1")->capture_default_str();
        cmd->add_option("--x2", spec.x2, "Scaling weight of field 2")->capture_default_str();
        cmd->add_option("--gamma1", spec.gamma1, "Shift weight of field 1")->capture_default_str();
        cmd->add_option("--gamma2", spec.gamma2, "Shift weight of field 2")->capture_default_str();
        cmd->add_option("--nu1", spec.nu1, "Dual weight of field 1")->capture_default_str();
        cmd->add_option("--nu2", spec.nu2, "Dual weight of field 2")->capture_default_str();
        cmd->add_option("--mu", spec.mu, "Inverse-velocity scale")->capture_default_str();
        cmd->add_option("--mass", spec.mass, "Mass parameter of the diffusive families")
            ->capture_default_str();
        cmd->add_option("--c", spec.c, "Dual offset")->capture_default_str();
        cmd->add_option("--norm", spec.normalization, "Overall normalization")
            ->capture_default_str();
        cmd->add_flag("--negative-gamma-literal", spec.negative_gamma_literal,
                      "Allow a literal negative gamma1 in the bounded profile");
        cmd->add_option("--grid", grid_path, "CSV grid file (header t,r,zeta1,zeta2)");
    }

    mw::CorrelatorSpec resolved() const {
        mw::CorrelatorSpec s = spec;
        s.family = mw::correlator_family_from_string(family);
        return s;
    }

    mw::GridSpec grid() const {
        return grid_path.empty() ? mw::GridSpec::standard() : mw::GridSpec::from_csv(grid_path);
    }
};

int check_exit(bool pass) { return pass ? 0 : 1; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetry-algebra and correlator verification toolkit"};
    app.set_version_flag("--version", std::string(mw::kVersion));
    app.require_subcommand(1);

    int exit_code = 0;

    // ---- algebra-check ----
    auto* algebra = app.add_subcommand("algebra-check", "Verify the bracket table of a family");
    auto algebra_sink = std::make_shared<Sink>();
    auto algebra_params = std::make_shared<AlgebraParams>();
    auto algebra_family = std::make_shared<std::string>("meta");
    auto algebra_corrupt = std::make_shared<bool>(false);
    algebra->add_option("--family", *algebra_family, "Generator family: meta, dual, or cga")
        ->check(CLI::IsMember({"meta", "dual", "cga"}))
        ->capture_default_str();
    algebra_params->attach(algebra);
    algebra_sink->attach(algebra);
    algebra->add_flag("--corrupt-y0", *algebra_corrupt, "Flip a sign inside Y_0 (self-test)")
        ->group(""); // hidden
    algebra->callback([&exit_code, algebra_sink, algebra_params, algebra_family, algebra_corrupt] {
        mw::Family fam = *algebra_family == "meta"  ? mw::Family::Meta
                         : *algebra_family == "dual" ? mw::Family::MetaDual
                                                     : mw::Family::Cga;
        mw::GeneratorHook hook;
        if (*algebra_corrupt) {
            hook = [](mw::GenKind kind, int n, const mw::DiffOp& op) {
                if (kind != mw::GenKind::Y || n != 0) return op;
                const mw::RingPtr& ring = op.ring();
                return op + mw::DiffOp::multiplication(
                                mw::Poly::variable(ring, "gamma") * mw::GaussianRational(2));
            };
        }
        mw::AlgebraReport report =
            mw::verify_structure_constants(fam, algebra_params->n_max, algebra_params->values(), hook);
        algebra_sink->emit(mw::render(report, algebra_sink->fmt()));
        exit_code = check_exit(report.all_zero);
    });

    // ---- n-check ----
    auto* ncheck = app.add_subcommand("n-check", "Verify the scale-extension brackets of N");
    auto ncheck_sink = std::make_shared<Sink>();
    auto ncheck_params = std::make_shared<AlgebraParams>();
    ncheck_params->attach(ncheck);
    ncheck_sink->attach(ncheck);
    ncheck->callback([&exit_code, ncheck_sink, ncheck_params] {
        mw::AlgebraReport report =
            mw::verify_N_extension(ncheck_params->n_max, ncheck_params->values());
        ncheck_sink->emit(mw::render(report, ncheck_sink->fmt()));
        exit_code = check_exit(report.all_zero);
    });

    // ---- dynsym-check ----
    auto* dynsym = app.add_subcommand("dynsym-check",
                                      "Verify the advection operator brackets [S, X_n], [S, Y_n]");
    auto dynsym_sink = std::make_shared<Sink>();
    auto dynsym_nmax = std::make_shared<int>(2);
    dynsym->add_option("--nmax", *dynsym_nmax, "Largest generator index checked (from -1)")
        ->check(CLI::Range(-1, 8))
        ->capture_default_str();
    dynsym_sink->attach(dynsym);
    dynsym->callback([&exit_code, dynsym_sink, dynsym_nmax] {
        mw::AlgebraReport report = mw::verify_dynamical_symmetry(*dynsym_nmax);
        dynsym_sink->emit(mw::render(report, dynsym_sink->fmt()));
        exit_code = check_exit(report.all_zero);
    });

    // ---- chiral-check ----
    auto* chiral = app.add_subcommand("chiral-check",
                                      "Verify the split into two commuting Witt-type halves");
    auto chiral_sink = std::make_shared<Sink>();
    auto chiral_nmax = std::make_shared<int>(2);
    chiral->add_option("--nmax", *chiral_nmax, "Largest generator index checked (from -1)")
        ->check(CLI::Range(-1, 8))
        ->capture_default_str();
    chiral_sink->attach(chiral);
    chiral->callback([&exit_code, chiral_sink, chiral_nmax] {
        mw::AlgebraReport report = mw::verify_chiral_isomorphism(*chiral_nmax);
        chiral_sink->emit(mw::render(report, chiral_sink->fmt()));
        exit_code = check_exit(report.all_zero);
    });

    // ---- contract ----
    auto* contract = app.add_subcommand("contract",
                                        "Specialize mu := 0 and verify the contracted family");
    auto contract_sink = std::make_shared<Sink>();
    auto contract_nmax = std::make_shared<int>(2);
    contract->add_option("--nmax", *contract_nmax, "Largest generator index (from -1)")
        ->check(CLI::Range(-1, 8))
        ->capture_default_str();
    contract_sink->attach(contract);
    contract->callback([&exit_code, contract_sink, contract_nmax] {
        mw::ContractionResult result = mw::contract_cga(*contract_nmax);
        contract_sink->emit(mw::render(result, contract_sink->fmt()));
        exit_code = check_exit(result.report.all_zero);
    });

    // ---- ward-residual ----
    auto* ward = app.add_subcommand("ward-residual",
                                    "Apply the lifted two-body generators to a correlator");
    auto ward_sink = std::make_shared<Sink>();
    auto ward_params = std::make_shared<CorrParams>();
    ward_params->attach(ward);
    ward->add_option("--tol", ward_params->tol, "Residual tolerance")->capture_default_str();
    ward_sink->attach(ward);
    ward->callback([&exit_code, ward_sink, ward_params] {
        mw::WardReport report =
            mw::ward_residual(ward_params->resolved(), ward_params->grid(), ward_params->tol);
        ward_sink->emit(mw::render(report, ward_sink->fmt()));
        exit_code = check_exit(report.pass);
    });

    // ---- reduced-system ----
    auto* reduced = app.add_subcommand("reduced-system",
                                       "Apply the reduced first-order system to the dual profile");
    auto reduced_sink = std::make_shared<Sink>();
    auto reduced_params = std::make_shared<CorrParams>();
    reduced_params->family = "dual";
    reduced_params->attach(reduced, /*with_family=*/false);
    reduced->add_option("--tol", reduced_params->tol, "Residual tolerance")->capture_default_str();
    reduced_sink->attach(reduced);
    reduced->callback([&exit_code, reduced_sink, reduced_params] {
        mw::WardReport report = mw::reduced_system_residual(reduced_params->resolved(),
                                                            reduced_params->grid(),
                                                            reduced_params->tol);
        std::string text = mw::render(report, reduced_sink->fmt());
        if (reduced_sink->fmt() == mw::ReportFormat::Text) {
            std::string ops = "operators:\n";
            for (const auto& [name, op] : mw::build_reduced_system())
                ops += "  " + name + " = " + op.to_string() + "\n";
            text = ops + text;
        }
        reduced_sink->emit(text);
        exit_code = check_exit(report.pass);
    });

    // ---- w-collapse ----
    auto* wcol = app.add_subcommand("w-collapse",
                                    "Check the collapse of the dual profile onto w = u - lambda + iv");
    auto wcol_sink = std::make_shared<Sink>();
    struct WColArgs {
        double nu1 = 0.5, nu2 = 0.5, mu = 0.5, tol = 1e-10;
    };
    auto wcol_args = std::make_shared<WColArgs>();
    wcol->add_option("--nu1", wcol_args->nu1, "Dual weight of field 1")->capture_default_str();
    wcol->add_option("--nu2", wcol_args->nu2, "Dual weight of field 2")->capture_default_str();
    wcol->add_option("--mu", wcol_args->mu, "Inverse-velocity scale")->capture_default_str();
    wcol->add_option("--tol", wcol_args->tol, "Collapse tolerance")->capture_default_str();
    wcol_sink->attach(wcol);
    wcol->callback([&exit_code, wcol_sink, wcol_args] {
        mw::WCollapseReport report =
            mw::w_collapse_check(wcol_args->nu1 + wcol_args->nu2, wcol_args->mu, wcol_args->tol);
        wcol_sink->emit(mw::render(report, wcol_sink->fmt()));
        exit_code = check_exit(report.pass);
    });

    // ---- correlator-table ----
    auto* table = app.add_subcommand("correlator-table", "Evaluate a correlator over a grid");
    auto table_sink = std::make_shared<Sink>();
    auto table_params = std::make_shared<CorrParams>();
    table_params->attach(table);
    table_sink->attach(table);
    table->callback([table_sink, table_params] {
        table_sink->emit(mw::render_correlator_table(table_params->resolved(),
                                                     table_params->grid(), table_sink->fmt()));
    });

    // ---- properties ----
    auto* props = app.add_subcommand(
        "properties", "Exchange symmetry, boundedness, and causal support of a correlator");
    auto props_sink = std::make_shared<Sink>();
    auto props_params = std::make_shared<CorrParams>();
    auto props_symtol = std::make_shared<double>(1e-12);
    props_params->attach(props);
    props->add_option("--tol", *props_symtol, "Symmetry tolerance")->capture_default_str();
    props_sink->attach(props);
    props->callback([&exit_code, props_sink, props_params, props_symtol] {
        mw::CorrelatorSpec spec = props_params->resolved();
        mw::GridSpec grid = props_params->grid();
        mw::SymmetryReport sym = mw::check_symmetry(spec, grid, *props_symtol);
        mw::BoundednessReport bound = mw::check_boundedness(spec, 1.0, 400);
        mw::CausalityReport causal = mw::check_causality(spec, grid);

        // Only gate on the properties each family is built to have.
        bool needs_bound = spec.family == mw::CorrelatorFamily::MetaFinal ||
                           spec.family == mw::CorrelatorFamily::Cga ||
                           spec.family == mw::CorrelatorFamily::Dual;
        bool needs_sym = needs_bound || spec.family == mw::CorrelatorFamily::Ortho;
        bool needs_causal = spec.family == mw::CorrelatorFamily::SchrExt;
        bool pass = (!needs_sym || sym.pass) && (!needs_bound || bound.bounded) &&
                    (!needs_causal || causal.pass);

        mw::ReportFormat fmt = props_sink->fmt();
        if (fmt == mw::ReportFormat::Json) {
            ordered_json j;
            j["version"] = mw::kVersion;
            j["report"] = "properties";
            j["family"] = mw::family_name(spec.family);
            j["exchange_symmetry"] =
                ordered_json::parse(mw::render(sym, mw::ReportFormat::Json));
            j["boundedness"] = ordered_json::parse(mw::render(bound, mw::ReportFormat::Json));
            j["causality"] = ordered_json::parse(mw::render(causal, mw::ReportFormat::Json));
            j["pass"] = pass;
            props_sink->emit(j.dump(2) + "\n");
        } else if (fmt == mw::ReportFormat::Csv) {
            props_sink->emit(mw::render(sym, fmt) + mw::render(bound, fmt) +
                             mw::render(causal, fmt));
        } else {
            props_sink->emit(mw::render(sym, fmt) + mw::render(bound, fmt) +
                             mw::render(causal, fmt) +
                             std::string("properties: ") + (pass ? "pass" : "FAIL") + "\n");
        }
        exit_code = check_exit(pass);
    });

    // ---- hardy-m2 ----
    auto* m2 = app.add_subcommand("hardy-m2",
                                  "Second moment of the dual profile: quadrature vs closed form");
    auto m2_sink = std::make_shared<Sink>();
    struct M2Args {
        double nu1 = 0.5, nu2 = 0.5, v = 1.0, lambda = 0.0, tol = 1e-6;
    };
    auto m2_args = std::make_shared<M2Args>();
    m2->add_option("--nu1", m2_args->nu1, "Dual weight of field 1")->capture_default_str();
    m2->add_option("--nu2", m2_args->nu2, "Dual weight of field 2")->capture_default_str();
    m2->add_option("--v", m2_args->v, "Offset v")->capture_default_str();
    m2->add_option("--lambda", m2_args->lambda, "Logarithmic coordinate lambda")
        ->capture_default_str();
    m2->add_option("--tol", m2_args->tol, "Relative agreement tolerance")->capture_default_str();
    m2_sink->attach(m2);
    m2->callback([&exit_code, m2_sink, m2_args] {
        double s = m2_args->nu1 + m2_args->nu2;
        double closed = mw::m2_closed(s, m2_args->v, m2_args->lambda);
        mw::QuadratureResult q = mw::m2_numeric(s, m2_args->v, m2_args->lambda);
        m2_sink->emit(mw::render_moment(q, closed, m2_sink->fmt()));
        double rel = std::abs(q.value - closed) / std::abs(closed);
        exit_code = check_exit(q.converged && rel <= m2_args->tol);
    });

    // ---- hardy-spectrum ----
    auto* spectrum = app.add_subcommand("hardy-spectrum",
                                        "One-sidedness of the dual profile's spectrum");
    auto spectrum_sink = std::make_shared<Sink>();
    struct SpecArgs {
        double nu1 = 1.0, nu2 = 1.0, lambda = 1.0, window = 200.0;
        std::size_t n = std::size_t{1} << 16;
    };
    auto spectrum_args = std::make_shared<SpecArgs>();
    spectrum->add_option("--nu1", spectrum_args->nu1, "Dual weight of field 1")
        ->capture_default_str();
    spectrum->add_option("--nu2", spectrum_args->nu2, "Dual weight of field 2")
        ->capture_default_str();
    spectrum->add_option("--lambda", spectrum_args->lambda, "Logarithmic coordinate lambda")
        ->capture_default_str();
    spectrum->add_option("--n", spectrum_args->n, "Sample count (power of two)")
        ->capture_default_str();
    spectrum->add_option("--window", spectrum_args->window, "Window length")
        ->capture_default_str();
    spectrum_sink->attach(spectrum);
    spectrum->callback([&exit_code, spectrum_sink, spectrum_args] {
        mw::SpectrumReport report =
            mw::spectral_onesidedness(spectrum_args->nu1 + spectrum_args->nu2,
                                      spectrum_args->lambda, spectrum_args->n,
                                      spectrum_args->window);
        spectrum_sink->emit(mw::render(report, spectrum_sink->fmt()));
        exit_code = report.status == "fail" ? 1 : 0;
    });

    // ---- roundtrip ----
    auto* rtrip = app.add_subcommand("roundtrip",
                                     "Recover the one-sided density behind the dual profile");
    auto rtrip_sink = std::make_shared<Sink>();
    struct RtArgs {
        double nu1 = 1.0, nu2 = 1.0, lambda = 1.0, tol = 1e-4, window = 1600.0;
        std::size_t n = std::size_t{1} << 19;
    };
    auto rtrip_args = std::make_shared<RtArgs>();
    rtrip->add_option("--nu1", rtrip_args->nu1, "Dual weight of field 1")->capture_default_str();
    rtrip->add_option("--nu2", rtrip_args->nu2, "Dual weight of field 2")->capture_default_str();
    rtrip->add_option("--lambda", rtrip_args->lambda, "Logarithmic coordinate lambda")
        ->capture_default_str();
    rtrip->add_option("--tol", rtrip_args->tol, "Bulk shape tolerance")->capture_default_str();
    rtrip->add_option("--n", rtrip_args->n, "Sample count (power of two)")->capture_default_str();
    rtrip->add_option("--window", rtrip_args->window, "Window length")->capture_default_str();
    rtrip_sink->attach(rtrip);
    rtrip->callback([&exit_code, rtrip_sink, rtrip_args] {
        mw::RoundtripReport report =
            mw::dualization_roundtrip(rtrip_args->nu1 + rtrip_args->nu2, rtrip_args->lambda,
                                      rtrip_args->tol, rtrip_args->n, rtrip_args->window);
        rtrip_sink->emit(mw::render(report, rtrip_sink->fmt()));
        exit_code = check_exit(report.pass);
    });

    // ---- singularity-demo ----
    auto* sing = app.add_subcommand(
        "singularity-demo", "Profile the naive pole at u = -1/mu next to the bounded form");
    auto sing_sink = std::make_shared<Sink>();
    struct SingArgs {
        double x1 = 0.5, gamma1 = 0.25, mu = 0.5, t = 1.0;
        int steps = 12;
    };
    auto sing_args = std::make_shared<SingArgs>();
    sing->add_option("--x1", sing_args->x1, "Scaling weight")->capture_default_str();
    sing->add_option("--gamma1", sing_args->gamma1, "Shift weight")->capture_default_str();
    sing->add_option("--mu", sing_args->mu, "Inverse-velocity scale")->capture_default_str();
    sing->add_option("--t", sing_args->t, "Fixed time separation")->capture_default_str();
    sing->add_option("--steps", sing_args->steps, "Number of approach steps")
        ->check(CLI::Range(2, 200))
        ->capture_default_str();
    sing_sink->attach(sing);
    sing->callback([sing_sink, sing_args] {
        mw::CorrelatorSpec spec;
        spec.family = mw::CorrelatorFamily::MetaNaive;
        spec.x1 = spec.x2 = sing_args->x1;
        spec.gamma1 = spec.gamma2 = sing_args->gamma1;
        spec.mu = sing_args->mu;
        sing_sink->emit(mw::render(mw::singularity_profile(spec, sing_args->t, sing_args->steps),
                                   sing_sink->fmt()));
    });

    // ---- commutator ----
    auto* comm = app.add_subcommand(
        "commutator", "Bracket of two operator expressions (options first, then the expressions)");
    auto comm_sink = std::make_shared<Sink>();
    comm_sink->attach(comm);
    // Operator expressions routinely start with '-', so they are taken
    // verbatim from the trailing arguments instead of being parsed as options.
    comm->prefix_command();
    comm->callback([comm, comm_sink] {
        std::vector<std::string> exprs = comm->remaining();
        if (exprs.size() != 2)
            throw mw::Error("commutator needs exactly two operator expressions");
        mw::DiffOp a = mw::parse_operator(exprs[0]);
        mw::DiffOp b = mw::parse_operator(exprs[1], a.ring());
        mw::DiffOp res = mw::commutator(a, b);
        std::string text = res.to_string();
        mw::ReportFormat fmt = comm_sink->fmt();
        if (fmt == mw::ReportFormat::Json) {
            ordered_json j;
            j["version"] = mw::kVersion;
            j["report"] = "commutator";
            j["a"] = exprs[0];
            j["b"] = exprs[1];
            j["result"] = text;
            comm_sink->emit(j.dump(2) + "\n");
        } else if (fmt == mw::ReportFormat::Csv) {
            comm_sink->emit("a,b,result\n" + mw::csv_cell(exprs[0]) + "," + mw::csv_cell(exprs[1]) +
                            "," + mw::csv_cell(text) + "\n");
        } else {
            comm_sink->emit(text + "\n");
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        // CLI11 reports help/version as success; anything else is a usage error
        return code == 0 ? 0 : 2;
    } catch (const mw::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
