#include "qse/job.hpp"

#include <fstream>

namespace qse {

namespace {

cdouble parse_complex(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorClass::schema,
                std::string(where) + ": complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Vector parse_complex_vector(const json& j, const char* where) {
  if (!j.is_array())
    throw Error(ErrorClass::schema, std::string(where) + ": expected an array");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], where);
  return v;
}

Matrix parse_complex_matrix(const json& j, const char* where) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorClass::schema,
                std::string(where) + ": expected a nonempty matrix");
  const size_t rows = j.size();
  Matrix m;
  for (size_t r = 0; r < rows; ++r) {
    Vector row = parse_complex_vector(j[r], where);
    if (r == 0)
      m.resize(rows, row.size());
    else if (row.size() != m.cols())
      throw Error(ErrorClass::schema,
                  std::string(where) + ": ragged matrix rows");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

GroupTable parse_group(const json& j) {
  if (!j.is_object())
    throw Error(ErrorClass::schema, "\"group\" must be an object");
  if (j.contains("builtin")) {
    const std::string which = j["builtin"].get<std::string>();
    if (which == "klein_four") return build_klein_four();
    if (!j.contains("n") || !j["n"].is_number_integer())
      throw Error(ErrorClass::schema,
                  "builtin group \"" + which + "\" needs an integer \"n\"");
    const int n = j["n"].get<int>();
    if (n < 1)
      throw Error(ErrorClass::schema, "group parameter n must be >= 1");
    if (which == "cyclic") return build_cyclic(n);
    if (which == "dihedral") return build_dihedral(n);
    throw Error(ErrorClass::schema, "unknown builtin group \"" + which + "\"");
  }
  if (j.contains("table")) {
    std::vector<std::vector<int>> table;
    for (const auto& row : j["table"])
      table.push_back(row.get<std::vector<int>>());
    std::vector<std::string> names;
    if (j.contains("names")) names = j["names"].get<std::vector<std::string>>();
    return group_from_table(std::move(table), std::move(names));
  }
  throw Error(ErrorClass::schema,
              "\"group\" needs either \"builtin\" or \"table\"");
}

Multiplier parse_multiplier(const json& j, const GroupTable& g) {
  if (j.is_null()) return trivial_multiplier(g.order);
  if (!j.is_object())
    throw Error(ErrorClass::schema, "\"multiplier\" must be an object");
  if (j.contains("builtin")) {
    const std::string which = j["builtin"].get<std::string>();
    if (which == "trivial") return trivial_multiplier(g.order);
    if (which == "pauli") {
      if (g.order != 4)
        throw Error(ErrorClass::schema,
                    "the pauli multiplier attaches to an order-4 group");
      return pauli_multiplier();
    }
    throw Error(ErrorClass::schema,
                "unknown builtin multiplier \"" + which + "\"");
  }
  if (j.contains("phases")) {
    Matrix phases = parse_complex_matrix(j["phases"], "multiplier.phases");
    if (phases.rows() != g.order)
      throw Error(ErrorClass::schema,
                  "multiplier phase table size must match the group order");
    return multiplier_from_phases(std::move(phases));
  }
  throw Error(ErrorClass::schema,
              "\"multiplier\" needs \"builtin\" or \"phases\"");
}

IrrepCatalog parse_catalog(const json& j, const GroupTable& g,
                           const Multiplier& m) {
  if (!j.is_object() || !j.contains("irreps") || !j["irreps"].is_array())
    throw Error(ErrorClass::schema,
                "\"catalog\" must be {\"irreps\": [ ... ]}");
  IrrepCatalog cat{g, m, {}};
  for (const auto& entry : j["irreps"]) {
    if (!entry.contains("matrices"))
      throw Error(ErrorClass::schema, "catalog irrep needs \"matrices\"");
    std::vector<Matrix> mats;
    for (const auto& mat : entry["matrices"])
      mats.push_back(parse_complex_matrix(mat, "catalog irrep"));
    if (static_cast<int>(mats.size()) != g.order)
      throw Error(ErrorClass::schema,
                  "catalog irrep needs one matrix per group element");
    std::string label = entry.value("label", std::string("irrep"));
    cat.irreps.push_back(make_irrep(std::move(label), std::move(mats)));
  }
  return cat;
}

}  // namespace

JobSpec parse_job_spec(const json& j) {
  if (!j.is_object())
    throw Error(ErrorClass::schema, "job spec must be a JSON object");
  if (!j.contains("group"))
    throw Error(ErrorClass::schema, "job spec needs a \"group\"");

  JobSpec spec;
  spec.raw = j;
  spec.group = parse_group(j["group"]);
  spec.multiplier =
      parse_multiplier(j.contains("multiplier") ? j["multiplier"] : json(),
                       spec.group);
  {
    const MultiplierValidation v =
        validate_multiplier(spec.group, spec.multiplier);
    if (!v.ok())
      throw Error(ErrorClass::schema, "invalid multiplier\n" + v.summary());
  }

  // The ensemble is optional at parse time (the canonical command only needs
  // the group and multiplier); analyze_spec insists on one.
  if (!j.contains("ensemble")) {
    if (j.contains("catalog"))
      spec.catalog = parse_catalog(j["catalog"], spec.group, spec.multiplier);
    return spec;
  }
  if (!j["ensemble"].is_object())
    throw Error(ErrorClass::schema, "\"ensemble\" must be an object");
  const json& ens = j["ensemble"];
  const bool has_seed = ens.contains("seed");
  const bool has_coeffs = ens.contains("gram_coefficients");
  if (has_seed == has_coeffs)
    throw Error(ErrorClass::schema,
                "ensemble needs exactly one of \"seed\"+\"rep\" or "
                "\"gram_coefficients\"");

  if (has_seed) {
    spec.seed = parse_complex_vector(ens["seed"], "ensemble.seed");
    if (!ens.contains("rep"))
      throw Error(ErrorClass::schema, "explicit ensembles need a \"rep\"");
    const json& rep = ens["rep"];
    if (rep.is_string() && rep.get<std::string>() == "regular") {
      spec.regular_rep = true;
    } else if (rep.is_object() && rep.contains("matrices")) {
      std::vector<Matrix> mats;
      for (const auto& mat : rep["matrices"])
        mats.push_back(parse_complex_matrix(mat, "ensemble.rep.matrices"));
      if (static_cast<int>(mats.size()) != spec.group.order)
        throw Error(ErrorClass::schema,
                    "representation needs one matrix per group element");
      spec.rep_matrices = std::move(mats);
    } else {
      throw Error(ErrorClass::schema,
                  "\"rep\" must be \"regular\" or {\"matrices\": [...]}");
    }
  } else {
    const json& coeffs = ens["gram_coefficients"];
    if (!coeffs.is_object())
      throw Error(ErrorClass::schema,
                  "\"gram_coefficients\" maps element names to [re, im]");
    Vector c = Vector::Zero(spec.group.order);
    c(spec.group.identity) = 1.0;
    for (const auto& [name, value] : coeffs.items()) {
      int index = -1;
      for (int g = 0; g < spec.group.order; ++g)
        if (spec.group.names[g] == name) {
          index = g;
          break;
        }
      if (index < 0)
        throw Error(ErrorClass::schema,
                    "unknown group element name \"" + name + "\"");
      c(index) = parse_complex(value, "gram_coefficients");
    }
    if (std::abs(c(spec.group.identity) - 1.0) > tol::unit)
      throw Error(ErrorClass::invalid_gram,
                  "the identity coefficient must equal 1");
    spec.gram_coefficients = std::move(c);
  }

  if (j.contains("catalog"))
    spec.catalog = parse_catalog(j["catalog"], spec.group, spec.multiplier);
  return spec;
}

JobSpec load_job_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorClass::schema, "cannot open spec file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorClass::schema,
                std::string("spec file is not valid JSON: ") + e.what());
  }
  return parse_job_spec(j);
}

AnalysisContext analyze_spec(const JobSpec& spec, double gram_tolerance) {
  if (!spec.gram_coefficients && !spec.seed)
    throw Error(ErrorClass::schema, "job spec needs an \"ensemble\"");
  Multiplier multiplier = spec.multiplier;
  bool renormalized = false;
  if (!is_normalized(spec.group, multiplier)) {
    multiplier = normalize_multiplier(spec.group, multiplier);
    renormalized = true;
  }

  std::optional<Ensemble> source;
  std::optional<GramMatrix> gram;
  if (spec.gram_coefficients) {
    gram = gram_from_coefficients(*spec.gram_coefficients, spec.group,
                                  multiplier);
  } else {
    UnitaryRep rep;
    if (spec.regular_rep) {
      rep = left_regular(spec.group, multiplier);
    } else {
      rep = make_rep(spec.group, multiplier, *spec.rep_matrices);
      const RepValidation v = verify_representation(rep);
      if (!v.ok())
        throw Error(ErrorClass::schema,
                    "supplied matrices do not form a representation with "
                    "this multiplier (worst homomorphism deviation " +
                        std::to_string(v.worst_homomorphism) + ")");
    }
    Vector seed = *spec.seed;
    const double norm = seed.norm();
    if (norm == 0.0)
      throw Error(ErrorClass::schema, "seed state must be nonzero");
    if (std::abs(norm - 1.0) > 1e-6)
      throw Error(ErrorClass::schema, "seed state must be unit norm");
    seed /= norm;
    source = make_ensemble(std::move(rep), std::move(seed));
    gram = gram_from_states(*source);
  }

  if (gram_tolerance > 0.0) {
    const double lambda_min = gram->eigenvalues()(gram->order() - 1);
    if (lambda_min < -gram_tolerance * std::max(1.0, max_abs(gram->entries())))
      throw Error(ErrorClass::invalid_gram,
                  "Gram matrix fails the requested PSD tolerance");
  }

  return AnalysisContext{spec, std::move(multiplier), renormalized,
                         std::move(source), std::move(*gram)};
}

PovmContext prepare_povm(const AnalysisContext& ctx) {
  IrrepCatalog catalog = ctx.spec.catalog
                             ? *ctx.spec.catalog
                             : builtin_irreps(ctx.spec.group, ctx.multiplier);
  // User catalogs must match the normalized multiplier used downstream.
  catalog.multiplier = ctx.multiplier;
  PovmContext out{associated_ensemble(ctx.gram),
                  decompose_regular(ctx.spec.group, ctx.multiplier, catalog),
                  {}};
  out.op = ensemble_operator(out.gram_space, out.decomposition);
  return out;
}

}  // namespace qse
