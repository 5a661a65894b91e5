#pragma once

#include "qse/job.hpp"

namespace qse {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

json to_json(cdouble z);
json to_json(const Vector& v);
json to_json(const Matrix& m);
Vector vector_from_json(const json& j);
Matrix matrix_from_json(const json& j);

json report_header(const char* command, const JobSpec& spec);
json gram_section(const AnalysisContext& ctx);
json exclusion_section(const GramMatrix& gram);
json povm_section(const ExclusionSolution& sol, const PovmContext& povm);
json catalog_section(const IrrepCatalog& catalog);
json certificate_section(const DualCertificate& cert);
json phase_section(const PhaseSolution& ps);

/// Probabilities and spectra pulled back out of a serialized report;
/// doubles survive the JSON round trip bit for bit.
struct Report {
  json raw;
  double p_min = 0.0;
  double q_min = 0.0;
  bool perfect = false;
  std::vector<double> spectrum;
};

Report parse_report(const json& j);

/// Writes text to path via a temp file + rename.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace qse
