// qse: optimal quantum state exclusion for group-generated pure-state
// ensembles. One JSON spec in, one JSON report out.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qse/report.hpp"

namespace {

using qse::json;

struct Options {
  std::string spec_path;
  std::string mode = "min-error";
  double epsilon = 1e-6;
  int samples = 10000;
  int restarts = 32;
  std::uint64_t seed = qse::kDefaultOracleSeed;
  std::string out_path;
  double tol = 0.0;
  bool timing = false;  // opt-in: a timing field breaks byte-identical reports
  double corrupt_seed = 0.0;    // debug: perturbation applied to omega
  double perturb_oracle = 0.0;  // debug: bias added to the oracle value
  std::chrono::steady_clock::time_point start;
};

bool log_enabled() {
  const char* v = std::getenv("QSE_LOG");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[qse] " << msg << "\n";
}

void emit(json report, const Options& opt) {
  if (opt.timing) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - opt.start);
    report["timing"] = {{"elapsed_us", elapsed.count()}};
  }
  const std::string text = report.dump(2) + "\n";
  if (opt.out_path.empty())
    std::cout << text;
  else
    qse::write_file_atomic(opt.out_path, text);
}

qse::ExclusionSolution build_solution(const qse::PovmContext& povm,
                                      const std::string& mode) {
  if (mode == "unambiguous")
    return qse::build_unambiguous_povm(povm.op.schmidt, povm.decomposition);
  return qse::build_min_error_povm(povm.op.schmidt, povm.decomposition);
}

int run_analyze(const Options& opt) {
  const qse::JobSpec spec = qse::load_job_spec(opt.spec_path);
  const qse::AnalysisContext ctx = qse::analyze_spec(spec, opt.tol);
  json report = qse::report_header("analyze", spec);
  report["gram"] = qse::gram_section(ctx);
  report["exclusion"] = qse::exclusion_section(ctx.gram);
  emit(report, opt);
  return 0;
}

int run_povm(const Options& opt) {
  const qse::JobSpec spec = qse::load_job_spec(opt.spec_path);
  const qse::AnalysisContext ctx = qse::analyze_spec(spec, opt.tol);
  const qse::PovmContext povm = qse::prepare_povm(ctx);
  const qse::ExclusionSolution sol = build_solution(povm, opt.mode);

  json report = qse::report_header("povm", spec);
  report["gram"] = qse::gram_section(ctx);
  report["exclusion"] = qse::exclusion_section(ctx.gram);
  report["povm"] = qse::povm_section(sol, povm);
  report["catalog"] = qse::catalog_section(povm.decomposition.catalog);
  if (ctx.source) {
    // The measurement also exists on the original states' space.
    const qse::Matrix x = qse::state_map(*ctx.source);
    std::vector<qse::Matrix> ops = sol.povm;
    if (sol.inconclusive) ops.push_back(*sol.inconclusive);
    const auto xi =
        qse::transfer_povm(qse::state_map(povm.gram_space), ops,
                           qse::TransferDirection::to_gram_space);
    const auto original = qse::transfer_povm(
        x, xi, qse::TransferDirection::from_gram_space);
    json elements = json::array();
    for (const qse::Matrix& pi : original) elements.push_back(qse::to_json(pi));
    report["povm"]["elements_original_space"] = std::move(elements);
  }
  emit(report, opt);
  return 0;
}

int run_certify(const Options& opt) {
  const qse::JobSpec spec = qse::load_job_spec(opt.spec_path);
  const qse::AnalysisContext ctx = qse::analyze_spec(spec, opt.tol);
  const qse::PovmContext povm = qse::prepare_povm(ctx);

  qse::ExclusionSolution min_err =
      qse::build_min_error_povm(povm.op.schmidt, povm.decomposition);
  qse::ExclusionSolution unamb =
      qse::build_unambiguous_povm(povm.op.schmidt, povm.decomposition);
  if (opt.corrupt_seed != 0.0) {
    log_line("debug: corrupting solution seeds");
    min_err.seed_omega(0) += opt.corrupt_seed;
    unamb.seed_omega(0) += opt.corrupt_seed;
  }

  const qse::DualCertificate me =
      qse::certify_min_error(min_err, povm.gram_space);
  const qse::DualCertificate ua = qse::certify_unambiguous(
      unamb, povm.gram_space, povm.op.schmidt, povm.decomposition,
      opt.epsilon);

  json report = qse::report_header("certify", spec);
  report["gram"] = qse::gram_section(ctx);
  report["exclusion"] = qse::exclusion_section(ctx.gram);
  report["certificates"] = {{"min_error", qse::certificate_section(me)},
                            {"unambiguous", qse::certificate_section(ua)}};
  emit(report, opt);
  return 0;
}

int run_oracle(const Options& opt) {
  const qse::JobSpec spec = qse::load_job_spec(opt.spec_path);
  const qse::AnalysisContext ctx = qse::analyze_spec(spec, opt.tol);

  const qse::RealVector& ev = ctx.gram.eigenvalues();
  const std::span<const double> lambdas(ev.data(),
                                        static_cast<size_t>(ev.size()));
  const double p_min = qse::min_error_probability(lambdas, ctx.gram.order());
  double oracle =
      qse::oracle_phase_search(lambdas, opt.restarts, 500, opt.seed);
  oracle += opt.perturb_oracle;
  const double delta = std::abs(oracle - p_min);

  json report = qse::report_header("oracle", spec);
  report["gram"] = qse::gram_section(ctx);
  report["exclusion"] = qse::exclusion_section(ctx.gram);
  json section;
  section["phase_search"] = oracle;
  section["phase_search_delta"] = delta;
  section["restarts"] = opt.restarts;
  section["seed"] = opt.seed;

  bool sampler_ok = true;
  if (ctx.gram.order() <= 8) {
    const qse::Ensemble gram_space = qse::associated_ensemble(ctx.gram);
    const qse::PovmSampleResult sampled =
        qse::oracle_povm_sampler(gram_space, opt.samples, opt.seed);
    section["povm_sampler"] = {{"best_error", sampled.best_error},
                               {"samples", sampled.samples},
                               {"floor", sampled.floor},
                               {"all_above_floor", sampled.all_above_floor}};
    sampler_ok = sampled.all_above_floor;
  } else {
    section["povm_sampler"] = {{"skipped", "dimension exceeds 8"}};
  }
  report["oracle"] = std::move(section);
  emit(report, opt);

  if (delta > 1e-6 || !sampler_ok) {
    log_line("oracle disagrees with the closed form");
    return static_cast<int>(qse::ErrorClass::oracle);
  }
  return 0;
}

int run_canonical(const Options& opt) {
  const qse::JobSpec spec = qse::load_job_spec(opt.spec_path);
  qse::Multiplier multiplier = spec.multiplier;
  bool renormalized = false;
  if (!qse::is_normalized(spec.group, multiplier)) {
    multiplier = qse::normalize_multiplier(spec.group, multiplier);
    renormalized = true;
  }
  const qse::CanonicalPattern pattern =
      qse::canonical_pattern(spec.group, multiplier);

  json report = qse::report_header("canonical", spec);
  report["group"]["multiplier_normalized"] = renormalized;
  json rows = json::array();
  for (const auto& row : pattern.pattern) {
    json cells = json::array();
    for (const auto& entry : row)
      cells.push_back(
          {{"label", entry.label}, {"phase", qse::to_json(entry.phase)}});
    rows.push_back(std::move(cells));
  }
  json constraints = json::array();
  for (const auto& con : pattern.constraints) constraints.push_back(con.text);
  report["canonical"] = {{"pattern", std::move(rows)},
                         {"constraints", std::move(constraints)},
                         {"pretty", pattern.pretty()}};
  emit(report, opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal quantum state exclusion for group-generated ensembles"};
  app.require_subcommand(1);

  Options opt;
  int (*runner)(const Options&) = nullptr;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("spec", opt.spec_path, "job spec JSON file")->required();
    cmd->add_option("--out", opt.out_path, "write the report here");
    cmd->add_option("--tol", opt.tol, "Gram PSD acceptance tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--timing", opt.timing, "include wall-clock timing");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "spectrum and failure probabilities");
  add_common(analyze);
  analyze->callback([&] { runner = run_analyze; });

  CLI::App* povm = app.add_subcommand("povm", "construct the optimal measurement");
  add_common(povm);
  povm->add_option("--mode", opt.mode, "min-error | unambiguous")
      ->check(CLI::IsMember({"min-error", "unambiguous"}));
  povm->callback([&] { runner = run_povm; });

  CLI::App* certify = app.add_subcommand("certify", "check the dual optimality certificates");
  add_common(certify);
  certify->add_option("--epsilon", opt.epsilon, "unambiguous dual slack")
      ->check(CLI::PositiveNumber);
  certify->add_option("--debug-corrupt-seed", opt.corrupt_seed,
                      "perturb the POVM seed before certifying")
      ->group("");
  certify->callback([&] { runner = run_certify; });

  CLI::App* oracle = app.add_subcommand("oracle", "cross-check against brute-force oracles");
  add_common(oracle);
  oracle->add_option("--samples", opt.samples, "random POVMs to sample")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--restarts", opt.restarts, "phase-search restarts")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--seed", opt.seed, "oracle RNG seed");
  oracle->add_option("--debug-perturb-oracle", opt.perturb_oracle,
                     "bias the oracle value")
      ->group("");
  oracle->callback([&] { runner = run_oracle; });

  CLI::App* canonical = app.add_subcommand("canonical", "print the symbolic Gram pattern");
  add_common(canonical);
  canonical->callback([&] { runner = run_canonical; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(qse::ErrorClass::schema);
  }

  opt.start = std::chrono::steady_clock::now();
  try {
    return runner(opt);
  } catch (const qse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.error_class());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(qse::ErrorClass::schema);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(qse::ErrorClass::internal);
  }
}
