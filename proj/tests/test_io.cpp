#include <doctest.h>

#include <fstream>

#include "qse/report.hpp"
#include "test_helpers.hpp"

using namespace qse;

#ifndef QSE_FIXTURE_DIR
#define QSE_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

std::string fixture(const char* name) {
  return std::string(QSE_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("fixture specs parse and analyze") {
  {
    const JobSpec spec = load_job_spec(fixture("tetrahedron.json"));
    CHECK(spec.group.order == 4);
    CHECK_FALSE(spec.multiplier.trivial);
    REQUIRE(spec.rep_matrices.has_value());
    const AnalysisContext ctx = analyze_spec(spec);
    CHECK(ctx.gram.eigenvalues()(0) == doctest::Approx(2.0));
  }
  {
    const JobSpec spec = load_job_spec(fixture("z2_c05.json"));
    REQUIRE(spec.gram_coefficients.has_value());
    const AnalysisContext ctx = analyze_spec(spec);
    CHECK(ctx.gram.entries()(0, 1).real() == doctest::Approx(0.5));
  }
  {
    const JobSpec spec = load_job_spec(fixture("z3_c09.json"));
    const AnalysisContext ctx = analyze_spec(spec);
    CHECK(ctx.gram.eigenvalues()(0) == doctest::Approx(2.8));
  }
}

TEST_CASE("schema violations are rejected") {
  CHECK_THROWS_AS(parse_job_spec(json::parse("{}")), Error);
  // Both ensemble sources at once.
  const char* both = R"({
    "group": {"builtin": "cyclic", "n": 2},
    "ensemble": {
      "seed": [[1.0, 0.0], [0.0, 0.0]],
      "rep": "regular",
      "gram_coefficients": {"g": [0.5, 0.0]}
    }
  })";
  CHECK_THROWS_AS(parse_job_spec(json::parse(both)), Error);
  // Unknown element name.
  const char* unknown = R"({
    "group": {"builtin": "cyclic", "n": 2},
    "ensemble": {"gram_coefficients": {"h": [0.5, 0.0]}}
  })";
  CHECK_THROWS_AS(parse_job_spec(json::parse(unknown)), Error);
  // Matrices that do not satisfy the homomorphism law.
  const char* bad_rep = R"({
    "group": {"builtin": "cyclic", "n": 2},
    "ensemble": {
      "seed": [[1.0, 0.0], [0.0, 0.0]],
      "rep": {"matrices": [
        [[[1,0],[0,0]],[[0,0],[1,0]]],
        [[[1,0],[0,0]],[[0,0],[-0.5,0]]]
      ]}
    }
  })";
  CHECK_THROWS_AS(analyze_spec(parse_job_spec(json::parse(bad_rep))), Error);
  try {
    parse_job_spec(json::parse("{\"group\": {\"builtin\": \"cyclic\"}}"));
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.error_class() == ErrorClass::schema);
  }
}

TEST_CASE("user-supplied catalogs parse and drive the decomposition") {
  const GroupTable d3 = build_dihedral(3);
  const IrrepCatalog cat = builtin_irreps(d3, trivial_multiplier(6));
  json spec_json;
  spec_json["group"] = {{"builtin", "dihedral"}, {"n", 3}};
  spec_json["ensemble"] = {
      {"gram_coefficients",
       {{"r", json::array({0.2, 0.05})}, {"r^2", json::array({0.2, -0.05})}}}};
  spec_json["catalog"] = catalog_section(cat);

  const JobSpec spec = parse_job_spec(spec_json);
  REQUIRE(spec.catalog.has_value());
  CHECK(spec.catalog->complete());
  const AnalysisContext ctx = analyze_spec(spec);
  const PovmContext povm = prepare_povm(ctx);
  CHECK(block_diagonal_deviation(povm.decomposition) < 1e-9);
}

TEST_CASE("reports round-trip probabilities bit for bit") {
  const JobSpec spec = load_job_spec(fixture("z2_c05.json"));
  const AnalysisContext ctx = analyze_spec(spec);
  json report = report_header("analyze", spec);
  report["gram"] = gram_section(ctx);
  report["exclusion"] = exclusion_section(ctx.gram);

  const std::string text = report.dump();
  const Report parsed = parse_report(json::parse(text));
  const RealVector& ev = ctx.gram.eigenvalues();
  const double p = min_error_probability(
      std::span<const double>(ev.data(), ev.size()), 2);
  const double q = unambiguous_failure_probability(
      std::span<const double>(ev.data(), ev.size()), 2);
  CHECK(parsed.p_min == p);  // bitwise
  CHECK(parsed.q_min == q);
  REQUIRE(parsed.spectrum.size() == 2);
  CHECK(parsed.spectrum[0] == ev(0));
  CHECK(parsed.spectrum[1] == ev(1));
}

TEST_CASE("complex payloads survive serialization") {
  std::mt19937_64 rng(71);
  const Matrix m = qse::testing::random_complex(3, 3, rng);
  CHECK(max_abs(Matrix(matrix_from_json(to_json(m)) - m)) == 0.0);
  const Vector v = qse::testing::random_unit_vector(4, rng);
  CHECK(max_abs(Vector(vector_from_json(to_json(v)) - v)) == 0.0);
}

TEST_CASE("atomic file writes") {
  const std::string path = "/tmp/qse_test_atomic.json";
  write_file_atomic(path, "{\"ok\": true}\n");
  std::ifstream in(path);
  json j;
  in >> j;
  CHECK(j["ok"].get<bool>());
  std::remove(path.c_str());
}
