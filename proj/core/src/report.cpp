#include "qse/report.hpp"

#include <cstdio>
#include <fstream>

namespace qse {

json to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Vector vector_from_json(const json& j) {
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        cdouble(j[i][0].get<double>(), j[i][1].get<double>());
  return v;
}

Matrix matrix_from_json(const json& j) {
  const size_t rows = j.size();
  Matrix m(rows, rows ? j[0].size() : 0);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          cdouble(j[r][c][0].get<double>(), j[r][c][1].get<double>());
  return m;
}

json report_header(const char* command, const JobSpec& spec) {
  json out;
  out["qse_version"] = kVersion;
  out["schema_version"] = kReportSchemaVersion;
  out["command"] = command;
  out["spec"] = spec.raw;
  out["group"] = {{"order", spec.group.order}, {"names", spec.group.names}};
  return out;
}

json gram_section(const AnalysisContext& ctx) {
  json out;
  out["entries"] = to_json(ctx.gram.entries());
  const RealVector& ev = ctx.gram.eigenvalues();
  out["spectrum"] = std::vector<double>(ev.data(), ev.data() + ev.size());
  if (ctx.gram.coefficients())
    out["coefficients"] = to_json(*ctx.gram.coefficients());
  out["multiplier_normalized"] = ctx.multiplier_renormalized;
  return out;
}

json exclusion_section(const GramMatrix& gram) {
  const RealVector& ev = gram.eigenvalues();
  const std::span<const double> lambdas(ev.data(),
                                        static_cast<size_t>(ev.size()));
  json out;
  out["p_min"] = min_error_probability(lambdas, gram.order());
  out["q_min"] = unambiguous_failure_probability(lambdas, gram.order());
  out["perfect"] = perfect_exclusion_possible(lambdas);
  return out;
}

json phase_section(const PhaseSolution& ps) {
  json out;
  out["flat_sqrts"] = ps.flat_sqrts;
  out["phases"] = ps.phases;
  out["residual"] = ps.residual;
  json groups = json::array();
  for (const PhaseGroup& g : ps.groups)
    groups.push_back({{"block", g.block_index},
                      {"flexible", g.flexible},
                      {"max_magnitude", g.max_magnitude},
                      {"magnitude", g.magnitude},
                      {"phase", g.phase},
                      {"ramp", g.ramp}});
  out["groups"] = std::move(groups);
  return out;
}

json povm_section(const ExclusionSolution& sol, const PovmContext& povm) {
  json out;
  out["mode"] = sol.mode == ExclusionMode::min_error ? "min-error"
                                                     : "unambiguous";
  out["space"] = "gram";  // operators act on the group-algebra space
  out["dimension"] = povm.gram_space.dim();
  out["p_min"] = sol.p_min;
  out["q_min"] = sol.q_min;
  out["perfect"] = sol.perfect;
  out["gamma"] = sol.gamma;
  out["seed_omega"] = to_json(sol.seed_omega);
  json elements = json::array();
  for (const Matrix& pi : sol.povm) elements.push_back(to_json(pi));
  out["elements"] = std::move(elements);
  if (sol.inconclusive) out["inconclusive"] = to_json(*sol.inconclusive);
  if (sol.phase_solution) out["phase_solution"] = phase_section(*sol.phase_solution);
  out["achieved_error"] = sol.achieved_error;
  out["achieved_inconclusive"] = sol.achieved_inconclusive;
  out["completeness_deviation"] = sol.completeness_deviation;
  if (!sol.note.empty()) out["note"] = sol.note;
  return out;
}

json catalog_section(const IrrepCatalog& catalog) {
  json irreps = json::array();
  for (const Irrep& ir : catalog.irreps) {
    json mats = json::array();
    for (const Matrix& m : ir.matrices) mats.push_back(to_json(m));
    irreps.push_back(
        {{"label", ir.label}, {"dim", ir.dim}, {"matrices", std::move(mats)}});
  }
  return {{"irreps", std::move(irreps)}};
}

json certificate_section(const DualCertificate& cert) {
  json out;
  out["mode"] = cert.mode == ExclusionMode::min_error ? "min-error"
                                                      : "unambiguous";
  out["self_certified"] = cert.self_certified;
  out["value"] = cert.value;
  out["primal"] = cert.primal;
  if (!cert.self_certified) {
    out["feasibility_min_eigenvalue"] = cert.feasibility_min_eigenvalue;
    if (cert.mode == ExclusionMode::min_error)
      out["hermiticity_deviation"] = cert.hermiticity_deviation;
    else {
      out["epsilon"] = cert.epsilon;
      out["nu_tilde"] = cert.nu_tilde;
    }
    out["dual_operator"] = to_json(cert.dual_operator);
  }
  if (!cert.note.empty()) out["note"] = cert.note;
  return out;
}

Report parse_report(const json& j) {
  Report r;
  r.raw = j;
  if (j.contains("exclusion")) {
    r.p_min = j["exclusion"]["p_min"].get<double>();
    r.q_min = j["exclusion"]["q_min"].get<double>();
    r.perfect = j["exclusion"]["perfect"].get<bool>();
  }
  if (j.contains("gram"))
    r.spectrum = j["gram"]["spectrum"].get<std::vector<double>>();
  return r;
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorClass::internal, "cannot write " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(ErrorClass::internal, "cannot rename " + tmp + " to " + path);
}

}  // namespace qse
