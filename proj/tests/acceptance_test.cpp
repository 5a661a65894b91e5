// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, not configurable.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "qse/oracles.hpp"
#include "qse/report.hpp"
#include "test_helpers.hpp"

#ifndef QSE_CLI_PATH
#define QSE_CLI_PATH "build/tools/qse"
#endif
#ifndef QSE_FIXTURE_DIR
#define QSE_FIXTURE_DIR "tests/fixtures"
#endif

using namespace qse;
using namespace qse::testing;

namespace {

int failures = 0;

void criterion(int number, const std::string& label,
               const std::function<void(std::ostringstream&)>& body) {
  std::ostringstream detail;
  bool ok = true;
  try {
    body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail << " exception: " << e.what();
  }
  if (!detail.str().empty() && detail.str().find("FAIL") != std::string::npos)
    ok = false;
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
            << label;
  if (!ok) std::cout << " --" << detail.str();
  std::cout << std::endl;
  if (!ok) ++failures;
}

void require(std::ostringstream& out, bool cond, const std::string& what) {
  if (!cond) out << " FAIL(" << what << ")";
}

std::string fixture(const char* name) {
  return std::string(QSE_FIXTURE_DIR) + "/" + name;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string path = "/tmp/qse_acceptance_out.json";
  const std::string cmd =
      std::string(QSE_CLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::remove(path.c_str());
  return {WEXITSTATUS(status), buf.str()};
}

PovmContext pauli_gram_context(const GramMatrix& g) {
  PovmContext ctx{associated_ensemble(g),
                  decompose_regular(g.group(), g.multiplier(),
                                    builtin_irreps(g.group(), g.multiplier())),
                  {}};
  ctx.op = ensemble_operator(ctx.gram_space, ctx.decomposition);
  return ctx;
}

void criterion_1(std::ostringstream& out) {
  const JobSpec spec = load_job_spec(fixture("tetrahedron.json"));
  const AnalysisContext ctx = analyze_spec(spec);
  const Vector& coef = *ctx.gram.coefficients();
  const double c = 1.0 / std::sqrt(3.0);
  for (int j = 1; j < 4; ++j)
    require(out, std::abs(coef(j) - cdouble(c, 0.0)) <= 1e-10,
            "overlap coefficient " + std::to_string(j));
  const RealVector ev = ctx.gram.eigenvalues();
  require(out, std::abs(ev(0) - 2.0) <= 1e-9, "lambda_1");
  require(out, std::abs(ev(1) - 2.0) <= 1e-9, "lambda_2");
  require(out, std::abs(ev(2)) <= 1e-9, "lambda_3");
  require(out, std::abs(ev(3)) <= 1e-9, "lambda_4");

  const std::span<const double> lambdas(ev.data(), 4);
  require(out, min_error_probability(lambdas, 4) == 0.0, "p_min = 0");
  require(out, unambiguous_failure_probability(lambdas, 4) == 0.0,
          "q_min = 0");

  const PovmContext povm = pauli_gram_context(ctx.gram);
  const ExclusionSolution sol =
      build_min_error_povm(povm.op.schmidt, povm.decomposition);
  require(out, std::abs(sol.achieved_error) <= 1e-10, "achieved error");
}

void criterion_2(std::ostringstream& out) {
  const GroupTable k = build_klein_four();
  const UnitaryRep r = right_regular(k, pauli_multiplier());
  const cdouble i(0.0, 1.0);

  Matrix rx = Matrix::Zero(4, 4), ry = Matrix::Zero(4, 4),
         rz = Matrix::Zero(4, 4);
  rx(0, 1) = 1, rx(1, 0) = 1, rx(2, 3) = -i, rx(3, 2) = i;
  ry(0, 2) = 1, ry(2, 0) = 1, ry(1, 3) = i, ry(3, 1) = -i;
  rz(0, 3) = 1, rz(3, 0) = 1, rz(1, 2) = -i, rz(2, 1) = i;
  require(out, max_abs(Matrix(r.at(1) - rx)) == 0.0, "R_x exact");
  require(out, max_abs(Matrix(r.at(2) - ry)) == 0.0, "R_y exact");
  require(out, max_abs(Matrix(r.at(3) - rz)) == 0.0, "R_z exact");

  Matrix u(4, 4);
  u << 1, -1, i, 1, -1, 1, i, 1, -1, -1, i, -1, -1, -1, -i, 1;
  u *= -i / 2.0;
  for (int j = 1; j <= 3; ++j) {
    Matrix expected = Matrix::Zero(4, 4);
    expected.topLeftCorner(2, 2) = pauli(j);
    expected.bottomRightCorner(2, 2) = pauli(j);
    require(out, max_abs(Matrix(u * r.at(j) * u.adjoint() - expected)) <= 1e-10,
            "U R U^dag block " + std::to_string(j));
  }
}

void criterion_3(std::ostringstream& out) {
  std::mt19937_64 rng(0xacce97);
  for (int trial = 0; trial < 100; ++trial) {
    const int order = 2 + static_cast<int>(rng() % 7);
    const std::vector<double> lambdas = random_spectrum(order, rng);
    const double closed = min_error_probability(lambdas, order);
    const double oracle = oracle_phase_search(lambdas, 32, 500, rng());
    if (std::abs(oracle - closed) > 1e-7) {
      require(out, false, "oracle mismatch at trial " + std::to_string(trial));
      return;
    }
  }
  for (const char* name : {"tetrahedron.json", "z2_c05.json", "z3_c09.json"}) {
    const JobSpec spec = load_job_spec(fixture(name));
    const AnalysisContext ctx = analyze_spec(spec);
    const PovmSampleResult sampled =
        oracle_povm_sampler(associated_ensemble(ctx.gram), 10000, 0xacce97);
    require(out, sampled.all_above_floor,
            std::string("sampler floor on ") + name);
  }
}

void criterion_4(std::ostringstream& out) {
  std::mt19937_64 rng(0xacce98);
  int done = 0, guard = 0;
  while (done < 100 && guard < 4000) {
    ++guard;
    const int which = static_cast<int>(rng() % 5);
    const GroupTable g = which <= 2 ? build_cyclic(2 + which)
                         : which == 3 ? build_klein_four()
                                      : build_dihedral(3);
    const Multiplier m = trivial_multiplier(g.order);
    Vector coef;
    try {
      coef = near_uniform_coefficients(g, m, rng);
    } catch (const std::exception&) {
      continue;
    }
    const Pipeline p = coefficient_pipeline(g, m, coef);
    if (perfect_exclusion_possible(p.povm.op.schmidt.flat_eigenvalues))
      continue;
    const ExclusionSolution me =
        build_min_error_povm(p.povm.op.schmidt, p.povm.decomposition);
    const ExclusionSolution ua =
        build_unambiguous_povm(p.povm.op.schmidt, p.povm.decomposition);
    try {
      const DualCertificate c1 = certify_min_error(me, p.povm.gram_space);
      require(out, std::abs(c1.value - me.p_min) <= 1e-8, "min-error gap");
      require(out, c1.feasibility_min_eigenvalue >= -1e-8,
              "min-error feasibility");
      const DualCertificate c2 =
          certify_unambiguous(ua, p.povm.gram_space, p.povm.op.schmidt,
                              p.povm.decomposition, 1e-6);
      require(out, std::abs(c2.value - (ua.q_min - 1e-6)) <= 1e-8,
              "unambiguous value");
      require(out, c2.feasibility_min_eigenvalue >= -1e-8,
              "unambiguous feasibility");
    } catch (const std::exception& e) {
      require(out, false, std::string("certificate threw: ") + e.what());
      return;
    }
    ++done;
  }
  require(out, done == 100,
          "collected " + std::to_string(done) + " non-perfect samples");
}

void criterion_5(std::ostringstream& out) {
  for (int i = 0; i <= 100; ++i) {
    const double c = i / 100.0;
    const std::vector<double> lambdas{1.0 + c, 1.0 - c};
    const double expected_p =
        std::pow(std::max(0.0, std::sqrt(1.0 + c) - std::sqrt(1.0 - c)) / 2.0,
                 2);
    if (std::abs(min_error_probability(lambdas, 2) - expected_p) > 1e-10) {
      require(out, false, "p_min at c = " + std::to_string(c));
      return;
    }
    if (std::abs(unambiguous_failure_probability(lambdas, 2) - c) > 1e-10) {
      require(out, false, "q_min at c = " + std::to_string(c));
      return;
    }
  }
  // Perfect exclusion only at c = 0; bisect the oracle for the boundary.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 25; ++it) {
    const double mid = 0.5 * (lo + hi);
    const std::vector<double> lambdas{1.0 + mid, 1.0 - mid};
    if (oracle_phase_search(lambdas, 8, 200, 3) < 1e-13)
      lo = mid;
    else
      hi = mid;
  }
  require(out, 0.5 * (lo + hi) <= 1e-6, "oracle boundary at c = 0");
  require(out, perfect_exclusion_possible(std::vector<double>{1.0, 1.0}),
          "perfect at c = 0");
  require(out,
          !perfect_exclusion_possible(std::vector<double>{1.0 + 1e-5,
                                                          1.0 - 1e-5}),
          "not perfect just past 0");
}

void criterion_6(std::ostringstream& out) {
  std::mt19937_64 rng(0xacce99);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int disagreements = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);  // 2..12
    // Random real symmetric coefficients, shrunk until PSD.
    std::vector<double> c(n, 0.0);
    c[0] = 1.0;
    for (int k = 1; k <= n / 2; ++k) {
      c[k] = 0.9 * uni(rng);
      c[n - k] = c[k];
    }
    auto dft_eigenvalues = [&] {
      std::vector<double> ev(n);
      for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k)
          sum += c[k] * std::cos(2.0 * std::numbers::pi * j * k / n);
        ev[j] = sum;
      }
      return ev;
    };
    std::vector<double> ev = dft_eigenvalues();
    for (int shrink = 0;
         *std::min_element(ev.begin(), ev.end()) < 0.0 && shrink < 60;
         ++shrink) {
      for (int k = 1; k < n; ++k) c[k] *= 0.8;
      ev = dft_eigenvalues();
    }

    Vector coef(n);
    for (int k = 0; k < n; ++k) coef(k) = c[k];
    const GramMatrix g =
        gram_from_coefficients(coef, build_cyclic(n), trivial_multiplier(n));
    const bool via_eig = perfect_exclusion_possible(spectrum_span(g));
    const bool via_dft = perfect_exclusion_possible(ev);
    if (via_eig != via_dft) ++disagreements;
  }
  require(out, disagreements == 0,
          std::to_string(disagreements) + " verdict disagreements");
}

void criterion_7(std::ostringstream& out) {
  // Group table invariants for every built-in constructor.
  for (int n = 1; n <= 8; ++n)
    require(out, validate_group_table(build_cyclic(n)).ok(),
            "cyclic " + std::to_string(n));
  for (int n = 1; n <= 4; ++n)
    require(out, validate_group_table(build_dihedral(n)).ok(),
            "dihedral " + std::to_string(n));
  require(out, validate_group_table(build_klein_four()).ok(), "klein");
  require(out,
          validate_group_table(
              build_direct_product(build_cyclic(2), build_cyclic(3)))
              .ok(),
          "z2 x z3");

  // Cocycle checks over all triples.
  require(out,
          validate_multiplier(build_klein_four(), pauli_multiplier()).ok(),
          "pauli cocycle");
  for (int n = 1; n <= 8; ++n)
    require(out,
            validate_multiplier(build_cyclic(n), trivial_multiplier(n)).ok(),
            "trivial cocycle " + std::to_string(n));

  // Orthogonality of every shipped catalog.
  auto check_got = [&](const GroupTable& g, const Multiplier& m,
                       const std::string& label) {
    require(out, great_orthogonality_check(builtin_irreps(g, m)) <= 1e-10,
            "orthogonality " + label);
  };
  for (int n = 1; n <= 8; ++n)
    check_got(build_cyclic(n), trivial_multiplier(n), "Z" + std::to_string(n));
  for (int n = 3; n <= 4; ++n)
    check_got(build_dihedral(n), trivial_multiplier(2 * n),
              "D" + std::to_string(n));
  check_got(build_klein_four(), trivial_multiplier(4), "klein");
  check_got(build_klein_four(), pauli_multiplier(), "klein+pauli");

  // POVM transfer preserves joint probabilities on random instances.
  std::mt19937_64 rng(0xacce9a);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 5);
    const int outcomes = 2 + static_cast<int>(rng() % 3);
    Ensemble e;
    e.rep = make_rep(build_cyclic(outcomes), trivial_multiplier(outcomes),
                     std::vector<Matrix>(outcomes, Matrix::Identity(dim, dim)));
    e.seed = random_unit_vector(dim, rng);
    for (int k = 0; k < outcomes; ++k)
      e.states.push_back(random_unit_vector(dim, rng));
    std::vector<Matrix> povm;
    Matrix total = Matrix::Zero(dim, dim);
    for (int k = 0; k < outcomes; ++k) {
      const Matrix m = random_complex(dim, dim, rng);
      povm.push_back(m * m.adjoint());
      total += povm.back();
    }
    const Matrix norm = pinv(sqrtm_psd(total));
    for (Matrix& p : povm) p = norm * p * norm;
    const Matrix x = state_map(e);
    const auto fwd = transfer_povm(x, povm, TransferDirection::to_gram_space);
    const auto back =
        transfer_povm(x, fwd, TransferDirection::from_gram_space);
    const Eigen::MatrixXd before = joint_probabilities(e, povm);
    const Eigen::MatrixXd after = joint_probabilities(e, back);
    if ((before - after).cwiseAbs().maxCoeff() > 1e-9) {
      require(out, false, "transfer trial " + std::to_string(trial));
      return;
    }
  }

  // Covariance of the Gram-space ensemble.
  std::mt19937_64 rng2(0xacce9b);
  for (const GroupTable& g :
       {build_cyclic(3), build_dihedral(3), build_klein_four()}) {
    const Multiplier m = trivial_multiplier(g.order);
    const Vector coef = random_gram_coefficients(g, m, rng2);
    const Ensemble e =
        associated_ensemble(gram_from_coefficients(coef, g, m));
    for (int a = 0; a < g.order; ++a)
      for (int h = 0; h < g.order; ++h) {
        const Vector lhs = e.rep.at(a) * e.states[h];
        const Vector rhs =
            e.rep.multiplier.omega(a, h) * e.states[g.mul(a, h)];
        if (max_abs(Vector(lhs - rhs)) > 1e-9) {
          require(out, false, "covariance");
          return;
        }
      }
  }
  {
    const GramMatrix g =
        gram_from_states(make_ensemble(pauli_rep(), tetrahedron_seed()));
    const Ensemble e = associated_ensemble(g);
    const GroupTable k = build_klein_four();
    for (int a = 0; a < 4; ++a)
      for (int h = 0; h < 4; ++h) {
        const Vector lhs = e.rep.at(a) * e.states[h];
        const Vector rhs =
            e.rep.multiplier.omega(a, h) * e.states[k.mul(a, h)];
        require(out, max_abs(Vector(lhs - rhs)) <= 1e-9,
                "projective covariance");
      }
  }
}

void criterion_8(std::ostringstream& out) {
  const std::vector<std::string> fixtures = {"tetrahedron.json", "z2_c05.json",
                                             "z3_c09.json"};
  const std::vector<std::string> commands = {
      "analyze", "povm", "certify",
      "oracle --samples 2000 --restarts 16 --seed 11", "canonical"};
  for (const std::string& f : fixtures)
    for (const std::string& cmd : commands) {
      const std::string invocation = cmd + " " + fixture(f.c_str());
      const RunResult a = run_cli(invocation);
      if (a.exit_code != 0) {
        require(out, false, cmd + " on " + f + " exited " +
                                std::to_string(a.exit_code));
        return;
      }
      if (!json::accept(a.output)) {
        require(out, false, cmd + " on " + f + " wrote invalid JSON");
        return;
      }
      const json report = json::parse(a.output);
      require(out, report.contains("qse_version"), "version field");
      require(out, report["command"].is_string(), "command field");
      const RunResult b = run_cli(invocation);
      if (a.output != b.output) {
        require(out, false, cmd + " on " + f + " is not reproducible");
        return;
      }
    }

  // Documented nonzero exit codes.
  const std::string bad = "/tmp/qse_acc_bad.json";
  std::ofstream(bad) << "{";
  require(out, run_cli("analyze " + bad).exit_code == 2, "exit 2");
  std::remove(bad.c_str());
  const std::string notpsd = "/tmp/qse_acc_notpsd.json";
  std::ofstream(notpsd) << R"({"group": {"builtin": "cyclic", "n": 2},
      "ensemble": {"gram_coefficients": {"g": [1.5, 0.0]}}})";
  require(out, run_cli("analyze " + notpsd).exit_code == 3, "exit 3");
  std::remove(notpsd.c_str());
  require(out,
          run_cli("certify --debug-corrupt-seed 0.05 " +
                  fixture("z2_c05.json"))
                  .exit_code == 5,
          "exit 5");
  require(out,
          run_cli("oracle --samples 100 --debug-perturb-oracle 1e-3 " +
                  fixture("z2_c05.json"))
                  .exit_code == 6,
          "exit 6");
}

}  // namespace

int main() {
  criterion(1, "SIC tetrahedron golden case", criterion_1);
  criterion(2, "printed right-regular matrices and block diagonalizer",
            criterion_2);
  criterion(3, "closed form vs. brute-force oracles", criterion_3);
  criterion(4, "dual certificates on 100 sampled non-perfect ensembles",
            criterion_4);
  criterion(5, "two-state analytic family and its boundary", criterion_5);
  criterion(6, "circulant verdicts against independent Fourier eigenvalues",
            criterion_6);
  criterion(7, "structural suites (groups, cocycles, orthogonality, transfer, "
               "covariance)",
            criterion_7);
  criterion(8, "CLI contract: five commands, three fixtures, reproducible",
            criterion_8);
  if (failures == 0)
    std::cout << "all acceptance criteria passed" << std::endl;
  else
    std::cout << failures << " acceptance criteria FAILED" << std::endl;
  return failures == 0 ? 0 : 1;
}
