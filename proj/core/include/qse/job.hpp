#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qse/certificates.hpp"
#include "qse/oracles.hpp"
#include "qse/transfer.hpp"

namespace qse {

using json = nlohmann::json;

/// Parsed job description: a group, a multiplier, and exactly one ensemble
/// source (explicit seed + representation, or Gram coefficients).
struct JobSpec {
  json raw;
  GroupTable group;
  Multiplier multiplier;

  std::optional<Vector> seed;
  bool regular_rep = false;
  std::optional<std::vector<Matrix>> rep_matrices;
  std::optional<Vector> gram_coefficients;
  std::optional<IrrepCatalog> catalog;  // user-supplied irreps
};

JobSpec parse_job_spec(const json& j);
JobSpec load_job_spec(const std::string& path);

/// Group/multiplier validation plus Gram assembly. The multiplier is
/// normalized on the way in when needed.
struct AnalysisContext {
  JobSpec spec;
  Multiplier multiplier;  // normalized
  bool multiplier_renormalized = false;
  std::optional<Ensemble> source;  // original-space ensemble when explicit
  GramMatrix gram;
};

AnalysisContext analyze_spec(const JobSpec& spec, double gram_tolerance = 0.0);

/// Measurement-construction context: the Gram-space ensemble (columns of
/// sqrt(G) under the left-regular representation), its isotypic
/// decomposition, and the Schmidt data of the seed.
struct PovmContext {
  Ensemble gram_space;
  IsotypicDecomposition decomposition;
  EnsembleOperator op;
};

PovmContext prepare_povm(const AnalysisContext& ctx);

}  // namespace qse
