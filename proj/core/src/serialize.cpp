#include "metaward/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "metaward/correlator.hpp"
#include "metaward/errors.hpp"
#include "metaward/version.hpp"

namespace metaward {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    // 17 significant digits: enough for exact double round-trips, locale-free.
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ReportFormat report_format_from_string(const std::string& name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    throw Error("unknown format '" + name + "' (expected text, json, or csv)");
}

namespace {

ordered_json report_head(const std::string& name) {
    ordered_json j;
    j["version"] = kVersion;
    j["report"] = name;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

const char* pass_word(bool ok) { return ok ? "pass" : "FAIL"; }

std::string csv_rows(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += csv_cell(row[k]);
        }
        out += '\n';
    }
    return out;
}

std::string fd(double v) { return format_double(v); }

} // namespace

std::string render(const AlgebraReport& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head(r.check);
            j["family"] = r.family;
            j["n_max"] = r.n_max;
            j["all_zero"] = r.all_zero;
            ordered_json pairs = ordered_json::array();
            for (const AlgebraPair& p : r.pairs) {
                pairs.push_back({{"lhs", p.lhs}, {"rhs", p.rhs},
                                 {"residual", p.residual_text}, {"zero", p.zero}});
            }
            j["pairs"] = std::move(pairs);
            return dump(j);
        }
        case ReportFormat::Csv: {
            std::vector<std::vector<std::string>> rows{{"lhs", "rhs", "zero", "residual"}};
            for (const AlgebraPair& p : r.pairs)
                rows.push_back({p.lhs, p.rhs, p.zero ? "true" : "false", p.residual_text});
            return csv_rows(rows);
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "check: " << r.check << "  family: " << r.family << "  n_max: " << r.n_max << "\n";
            for (const AlgebraPair& p : r.pairs) {
                out << "  " << p.lhs << " = " << p.rhs << "  ["
                    << (p.zero ? "ok" : "VIOLATED: " + p.residual_text) << "]\n";
            }
            out << "all_zero: " << (r.all_zero ? "true" : "false") << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render(const ContractionResult& r, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        ordered_json j = report_head("contraction");
        ordered_json gens = ordered_json::array();
        for (const auto& [name, op] : r.generators)
            gens.push_back({{"name", name}, {"operator", op.to_string()}});
        j["generators"] = std::move(gens);
        j["checks"] = ordered_json::parse(render(r.report, ReportFormat::Json));
        return dump(j);
    }
    if (fmt == ReportFormat::Csv) {
        std::vector<std::vector<std::string>> rows{{"name", "operator"}};
        for (const auto& [name, op] : r.generators) rows.push_back({name, op.to_string()});
        return csv_rows(rows) + render(r.report, ReportFormat::Csv);
    }
    std::ostringstream out;
    out << "contracted generators (mu = 0):\n";
    for (const auto& [name, op] : r.generators) out << "  " << name << " = " << op.to_string() << "\n";
    out << render(r.report, ReportFormat::Text);
    return out.str();
}

std::string render(const WardReport& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head(r.check);
            j["family"] = r.family;
            j["grid"] = r.grid_version;
            j["tol"] = r.tol;
            ordered_json gens = ordered_json::array();
            for (const GeneratorResidual& g : r.generators) {
                gens.push_back({{"generator", g.generator},
                                {"max_rel", g.max_rel},
                                {"mean_rel", g.mean_rel},
                                {"points_used", g.points_used},
                                {"points_skipped", g.points_skipped}});
            }
            j["generators"] = std::move(gens);
            j["max_rel"] = r.max_rel;
            j["pass"] = r.pass;
            return dump(j);
        }
        case ReportFormat::Csv: {
            std::vector<std::vector<std::string>> rows{
                {"generator", "max_rel", "mean_rel", "points_used", "points_skipped"}};
            for (const GeneratorResidual& g : r.generators) {
                rows.push_back({g.generator, fd(g.max_rel), fd(g.mean_rel),
                                std::to_string(g.points_used), std::to_string(g.points_skipped)});
            }
            return csv_rows(rows);
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "check: " << r.check << "  family: " << r.family << "  grid: " << r.grid_version
                << "  tol: " << fd(r.tol) << "\n";
            for (const GeneratorResidual& g : r.generators) {
                out << "  " << g.generator << "  max_rel=" << fd(g.max_rel)
                    << "  mean_rel=" << fd(g.mean_rel) << "  used=" << g.points_used
                    << "  skipped=" << g.points_skipped << "\n";
            }
            out << "max_rel: " << fd(r.max_rel) << "  " << pass_word(r.pass) << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render(const WCollapseReport& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("w_collapse");
            j["nu_sum"] = r.nu_sum;
            j["mu"] = r.mu;
            j["tol"] = r.tol;
            ordered_json pairs = ordered_json::array();
            for (const WCollapsePair& p : r.pairs) {
                pairs.push_back({{"u_minus", p.u_minus}, {"u_plus", p.u_plus}, {"v", p.v},
                                 {"w_re", p.w_real}, {"ghat_re", p.ghat.real()},
                                 {"ghat_im", p.ghat.imag()}, {"rel_gap", p.rel_gap},
                                 {"norm_dev", p.norm_dev}});
            }
            j["pairs"] = std::move(pairs);
            j["max_rel_gap"] = r.max_rel_gap;
            j["max_norm_dev"] = r.max_norm_dev;
            j["pass"] = r.pass;
            return dump(j);
        }
        case ReportFormat::Csv: {
            std::vector<std::vector<std::string>> rows{
                {"u_minus", "u_plus", "v", "w_re", "ghat_re", "ghat_im", "rel_gap", "norm_dev"}};
            for (const WCollapsePair& p : r.pairs) {
                rows.push_back({fd(p.u_minus), fd(p.u_plus), fd(p.v), fd(p.w_real),
                                fd(p.ghat.real()), fd(p.ghat.imag()), fd(p.rel_gap),
                                fd(p.norm_dev)});
            }
            return csv_rows(rows);
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "check: w_collapse  nu_sum: " << fd(r.nu_sum) << "  mu: " << fd(r.mu)
                << "  tol: " << fd(r.tol) << "\n";
            for (const WCollapsePair& p : r.pairs) {
                out << "  u-=" << fd(p.u_minus) << "  u+=" << fd(p.u_plus) << "  v=" << fd(p.v)
                    << "  w=(" << fd(p.w_real) << "," << fd(p.v) << ")  ghat=(" << fd(p.ghat.real())
                    << "," << fd(p.ghat.imag()) << ")  gap=" << fd(p.rel_gap) << "\n";
            }
            out << "max_rel_gap: " << fd(r.max_rel_gap) << "  max_norm_dev: " << fd(r.max_norm_dev)
                << "  " << pass_word(r.pass) << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render(const SymmetryReport& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("exchange_symmetry");
            j["family"] = r.family;
            j["tol"] = r.tol;
            j["max_rel_dev"] = r.max_rel_dev;
            j["points_used"] = r.points_used;
            j["points_skipped"] = r.points_skipped;
            j["pass"] = r.pass;
            return dump(j);
        }
        case ReportFormat::Csv: {
            return csv_rows({{"family", "tol", "max_rel_dev", "points_used", "points_skipped", "pass"},
                             {r.family, fd(r.tol), fd(r.max_rel_dev), std::to_string(r.points_used),
                              std::to_string(r.points_skipped), r.pass ? "true" : "false"}});
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "check: exchange_symmetry  family: " << r.family << "  tol: " << fd(r.tol)
                << "\nmax_rel_dev: " << fd(r.max_rel_dev) << "  used=" << r.points_used
                << "  skipped=" << r.points_skipped << "  " << pass_word(r.pass) << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render(const BoundednessReport& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("boundedness");
            j["family"] = r.family;
            j["t"] = r.t;
            j["cap"] = r.cap;
            j["sup_abs"] = r.sup_abs;
            j["bounded"] = r.bounded;
            ordered_json prof = ordered_json::array();
            for (const BoundednessRow& row : r.profile)
                prof.push_back({{"u", row.u}, {"abs_value", row.abs_value}});
            j["profile"] = std::move(prof);
            return dump(j);
        }
        case ReportFormat::Csv: {
            std::vector<std::vector<std::string>> rows{{"u", "abs_value"}};
            for (const BoundednessRow& row : r.profile) rows.push_back({fd(row.u), fd(row.abs_value)});
            return csv_rows(rows);
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "check: boundedness  family: " << r.family << "  t: " << fd(r.t) << "\n"
                << "sup|C| = " << fd(r.sup_abs) << "  cap = " << fd(r.cap) << "  "
                << (r.bounded ? "bounded" : "UNBOUNDED") << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render(const CausalityReport& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("causality");
            j["family"] = r.family;
            j["acausal_nonzero"] = r.acausal_nonzero;
            j["causal_nonzero"] = r.causal_nonzero;
            j["max_abs_acausal"] = r.max_abs_acausal;
            j["pass"] = r.pass;
            return dump(j);
        }
        case ReportFormat::Csv: {
            return csv_rows(
                {{"family", "acausal_nonzero", "causal_nonzero", "max_abs_acausal", "pass"},
                 {r.family, std::to_string(r.acausal_nonzero), std::to_string(r.causal_nonzero),
                  fd(r.max_abs_acausal), r.pass ? "true" : "false"}});
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "check: causality  family: " << r.family
                << "\nnonzero at t<0: " << r.acausal_nonzero << " (max |C| = "
                << fd(r.max_abs_acausal) << ")  nonzero at t>0: " << r.causal_nonzero << "  "
                << pass_word(r.pass) << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render(const ContractionLimitReport& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("contraction_limit");
            ordered_json rows = ordered_json::array();
            for (const ContractionRow& row : r.rows)
                rows.push_back({{"mu", row.mu}, {"max_rel_gap", row.max_rel_gap}});
            j["rows"] = std::move(rows);
            j["tol"] = r.tol;
            j["pass"] = r.pass;
            return dump(j);
        }
        case ReportFormat::Csv: {
            std::vector<std::vector<std::string>> rows{{"mu", "max_rel_gap"}};
            for (const ContractionRow& row : r.rows) rows.push_back({fd(row.mu), fd(row.max_rel_gap)});
            return csv_rows(rows);
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "check: contraction_limit  tol(smallest mu): " << fd(r.tol) << "\n";
            for (const ContractionRow& row : r.rows)
                out << "  mu=" << fd(row.mu) << "  max_rel_gap=" << fd(row.max_rel_gap) << "\n";
            out << pass_word(r.pass) << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render(const std::vector<SingularityRow>& rows, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("singularity_profile");
            ordered_json arr = ordered_json::array();
            for (const SingularityRow& row : rows) {
                ordered_json o;
                o["u"] = row.u;
                o["abs_naive"] = row.abs_naive;
                if (std::isnan(row.abs_final)) o["abs_final"] = nullptr;
                else o["abs_final"] = row.abs_final;
                arr.push_back(std::move(o));
            }
            j["rows"] = std::move(arr);
            return dump(j);
        }
        case ReportFormat::Csv: {
            std::vector<std::vector<std::string>> table{{"u", "abs_naive", "abs_final"}};
            for (const SingularityRow& row : rows) {
                table.push_back({fd(row.u), fd(row.abs_naive),
                                 std::isnan(row.abs_final) ? "" : fd(row.abs_final)});
            }
            return csv_rows(table);
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "pole approach (u -> -1/mu):\n";
            for (const SingularityRow& row : rows) {
                out << "  u=" << fd(row.u) << "  |naive|=" << fd(row.abs_naive) << "  |bounded|=";
                if (std::isnan(row.abs_final)) out << "n/a";
                else out << fd(row.abs_final);
                out << "\n";
            }
            return out.str();
        }
    }
    return {};
}

std::string render(const SpectrumReport& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("spectrum");
            j["nu_sum"] = r.nu_sum;
            j["lambda"] = r.lambda;
            j["n"] = r.n;
            j["window_len"] = r.window_len;
            j["offside_fraction"] = r.offside_fraction;
            j["energy_time_domain"] = r.energy_time_domain;
            j["status"] = r.status;
            return dump(j);
        }
        case ReportFormat::Csv: {
            return csv_rows({{"nu_sum", "lambda", "n", "window_len", "offside_fraction",
                              "energy_time_domain", "status"},
                             {fd(r.nu_sum), fd(r.lambda), std::to_string(r.n), fd(r.window_len),
                              fd(r.offside_fraction), fd(r.energy_time_domain), r.status}});
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "check: spectrum  nu_sum: " << fd(r.nu_sum) << "  lambda: " << fd(r.lambda)
                << "  n: " << r.n << "  L: " << fd(r.window_len) << "\n"
                << "offside_fraction: " << fd(r.offside_fraction) << "  status: " << r.status << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render(const RoundtripReport& r, ReportFormat fmt) {
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("roundtrip");
            j["nu_sum"] = r.nu_sum;
            j["lambda"] = r.lambda;
            j["n"] = r.n;
            j["window_len"] = r.window_len;
            j["tol"] = r.tol;
            j["max_shape_dev"] = r.max_shape_dev;
            j["bulk_bins"] = r.bulk_bins;
            j["mode_gamma"] = r.mode_gamma;
            j["mass_below_half"] = r.mass_below_half;
            j["offside_fraction"] = r.offside_fraction;
            j["pass"] = r.pass;
            return dump(j);
        }
        case ReportFormat::Csv: {
            return csv_rows({{"nu_sum", "lambda", "n", "window_len", "tol", "max_shape_dev",
                              "bulk_bins", "mode_gamma", "mass_below_half", "offside_fraction",
                              "pass"},
                             {fd(r.nu_sum), fd(r.lambda), std::to_string(r.n), fd(r.window_len),
                              fd(r.tol), fd(r.max_shape_dev), std::to_string(r.bulk_bins),
                              fd(r.mode_gamma), fd(r.mass_below_half), fd(r.offside_fraction),
                              r.pass ? "true" : "false"}});
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "check: roundtrip  nu_sum: " << fd(r.nu_sum) << "  lambda: " << fd(r.lambda)
                << "\nmax_shape_dev: " << fd(r.max_shape_dev) << " over " << r.bulk_bins
                << " bulk bins (tol " << fd(r.tol) << ")\nmass(gamma<0.5): "
                << fd(r.mass_below_half) << "  offside_fraction: " << fd(r.offside_fraction)
                << "  " << pass_word(r.pass) << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render_moment(const QuadratureResult& q, double closed, ReportFormat fmt) {
    double rel = closed != 0.0 ? std::abs(q.value - closed) / std::abs(closed) : 0.0;
    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("second_moment");
            j["numeric"] = q.value;
            j["closed_form"] = closed;
            j["rel_gap"] = rel;
            j["abs_error_estimate"] = q.abs_error_estimate;
            j["evaluations"] = q.evaluations;
            j["converged"] = q.converged;
            return dump(j);
        }
        case ReportFormat::Csv: {
            return csv_rows(
                {{"numeric", "closed_form", "rel_gap", "abs_error_estimate", "evaluations",
                  "converged"},
                 {fd(q.value), fd(closed), fd(rel), fd(q.abs_error_estimate),
                  std::to_string(q.evaluations), q.converged ? "true" : "false"}});
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "second moment\n  numeric:     " << fd(q.value) << "\n  closed form: "
                << fd(closed) << "\n  rel_gap: " << fd(rel) << "  evaluations: " << q.evaluations
                << "  converged: " << (q.converged ? "true" : "false") << "\n";
            return out.str();
        }
    }
    return {};
}

std::string render_correlator_table(const CorrelatorSpec& spec, const GridSpec& grid,
                                    ReportFormat fmt) {
    struct Row {
        FieldPoint p;
        std::string status;
        std::complex<double> value{};
    };
    std::vector<Row> rows;
    rows.reserve(grid.points.size());
    for (const FieldPoint& p : grid.points) {
        Row row;
        row.p = p;
        try {
            row.value = eval_correlator(spec, p);
            row.status = row.value == std::complex<double>(0.0, 0.0) ? "zero" : "ok";
        } catch (const DomainError&) {
            row.status = "domain_error";
        }
        rows.push_back(row);
    }

    switch (fmt) {
        case ReportFormat::Json: {
            ordered_json j = report_head("correlator_table");
            j["family"] = family_name(spec.family);
            j["grid"] = grid.version;
            ordered_json arr = ordered_json::array();
            for (const Row& row : rows) {
                ordered_json o;
                o["t"] = row.p.t;
                o["r"] = row.p.r;
                o["zeta1"] = row.p.zeta1;
                o["zeta2"] = row.p.zeta2;
                o["status"] = row.status;
                if (row.status != "domain_error") {
                    o["re"] = row.value.real();
                    o["im"] = row.value.imag();
                }
                arr.push_back(std::move(o));
            }
            j["rows"] = std::move(arr);
            return dump(j);
        }
        case ReportFormat::Csv: {
            // Fixed export schema; points outside the family domain are dropped.
            std::vector<std::vector<std::string>> table{
                {"family", "x1", "gamma1", "mu", "t", "r", "re", "im"}};
            for (const Row& row : rows) {
                if (row.status == "domain_error") continue;
                table.push_back({family_name(spec.family), fd(spec.x1), fd(spec.gamma1),
                                 fd(spec.mu), fd(row.p.t), fd(row.p.r), fd(row.value.real()),
                                 fd(row.value.imag())});
            }
            return csv_rows(table);
        }
        case ReportFormat::Text: {
            std::ostringstream out;
            out << "family: " << family_name(spec.family) << "  grid: " << grid.version << "\n";
            for (const Row& row : rows) {
                out << "  t=" << fd(row.p.t) << " r=" << fd(row.p.r) << " z1=" << fd(row.p.zeta1)
                    << " z2=" << fd(row.p.zeta2) << "  " << row.status;
                if (row.status != "domain_error")
                    out << "  C=(" << fd(row.value.real()) << "," << fd(row.value.imag()) << ")";
                out << "\n";
            }
            return out.str();
        }
    }
    return {};
}

} // namespace metaward
