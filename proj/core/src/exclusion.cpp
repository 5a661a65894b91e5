#include "qse/exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qse {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<double> clamped_descending(std::span<const double> lambdas,
                                       int order) {
  if (lambdas.empty())
    throw std::invalid_argument("eigenvalue multiset must be nonempty");
  double top = 0.0;
  for (double l : lambdas) top = std::max(top, l);
  // Accept the same slightly-negative roundoff band the Gram validation
  // clamps, so every validated spectrum is usable here.
  const double floor = -tol::gram_psd * std::max(1.0, top);
  std::vector<double> out;
  out.reserve(lambdas.size());
  double sum = 0.0;
  for (double l : lambdas) {
    if (l < floor)
      throw std::invalid_argument("eigenvalue multiset has a negative entry");
    out.push_back(std::max(0.0, l));
    sum += out.back();
  }
  if (std::abs(sum - order) > 1e-6)
    throw std::invalid_argument(
        "eigenvalue multiset must sum to the group order (unit-diagonal "
        "Gram)");
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

double sqrt_gap(const std::vector<double>& desc) {
  double rest = 0.0;
  for (size_t a = 1; a < desc.size(); ++a) rest += std::sqrt(desc[a]);
  return std::sqrt(desc[0]) - rest;
}

// Magnitude factor of d phases in arithmetic progression with step xi.
double ramp_factor(int d, double xi) {
  if (xi == 0.0) return 1.0;
  const double s = std::sin(xi / 2.0);
  if (std::abs(s) < 1e-300) return 1.0;
  return std::abs(std::sin(d * xi / 2.0) / (d * s));
}

// Step xi in [0, 2pi/d] whose ramp factor equals the target in [0, 1].
double solve_ramp(int d, double target) {
  if (target >= 1.0) return 0.0;
  double lo = 0.0, hi = two_pi / d;
  if (target <= 0.0) return hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (ramp_factor(d, mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct ClosureGeometry {
  size_t largest = 0;                // index into groups
  std::vector<int> pile;             // -1 for largest, 0/1 pile of the rest
  double largest_magnitude = 0.0;    // possibly shrunk
  double theta_largest = 0.0;
  double theta_pile[2] = {0.0, 0.0};
};

ClosureGeometry close_triangle(const std::vector<PhaseGroup>& groups) {
  ClosureGeometry geo;
  geo.pile.assign(groups.size(), 0);
  for (size_t i = 1; i < groups.size(); ++i)
    if (groups[i].max_magnitude > groups[geo.largest].max_magnitude)
      geo.largest = i;
  geo.pile[geo.largest] = -1;

  std::vector<size_t> rest;
  for (size_t i = 0; i < groups.size(); ++i)
    if (i != geo.largest) rest.push_back(i);
  std::sort(rest.begin(), rest.end(), [&](size_t a, size_t b) {
    return groups[a].max_magnitude > groups[b].max_magnitude;
  });
  double sums[2] = {0.0, 0.0};
  for (size_t i : rest) {
    const int side = sums[0] <= sums[1] ? 0 : 1;
    geo.pile[i] = side;
    sums[side] += groups[i].max_magnitude;
  }

  const double a = groups[geo.largest].max_magnitude;
  const double b = sums[0], c = sums[1];
  geo.theta_largest = 0.0;
  if (a >= b + c) {
    // Shrink the dominant (flexible) group onto the antipode of the rest.
    geo.largest_magnitude = b + c;
    geo.theta_pile[0] = geo.theta_pile[1] = std::numbers::pi;
  } else {
    geo.largest_magnitude = a;
    auto clamp_cos = [](double v) { return std::min(1.0, std::max(-1.0, v)); };
    if (b == 0.0 || c == 0.0) {
      geo.theta_pile[0] = geo.theta_pile[1] = std::numbers::pi;
    } else {
      const double beta = std::acos(clamp_cos((a * a + b * b - c * c) /
                                               (2.0 * a * b)));
      const double delta = std::acos(clamp_cos((a * a + c * c - b * b) /
                                                (2.0 * a * c)));
      geo.theta_pile[0] = std::numbers::pi - beta;
      geo.theta_pile[1] = std::numbers::pi + delta;
    }
  }
  return geo;
}

std::vector<PhaseGroup> collect_groups(const SchmidtData& s) {
  std::vector<PhaseGroup> groups;
  for (size_t b = 0; b < s.blocks.size(); ++b) {
    const SchmidtBlock& block = s.blocks[b];
    if (block.positive_count == 0) continue;
    double weight = 0.0;
    for (int k = 0; k < block.positive_count; ++k)
      weight += std::sqrt(block.alphas(k));
    PhaseGroup g;
    g.block_index = static_cast<int>(b);
    g.flexible = block.dim >= 2;
    g.max_magnitude = block.dim * weight;
    g.magnitude = g.max_magnitude;
    groups.push_back(g);
  }
  if (groups.empty())
    throw Error(ErrorClass::internal, "seed state has no Schmidt weight");
  return groups;
}

PhaseSolution assemble_flat(const SchmidtData& s,
                            std::vector<PhaseGroup> groups) {
  PhaseSolution ps;
  std::vector<const PhaseGroup*> by_block(s.blocks.size(), nullptr);
  for (const PhaseGroup& g : groups) by_block[g.block_index] = &g;

  for (size_t b = 0; b < s.blocks.size(); ++b) {
    const SchmidtBlock& block = s.blocks[b];
    const PhaseGroup* g = by_block[b];
    for (int k = 0; k < block.alphas.size(); ++k)
      for (int copy = 0; copy < block.dim; ++copy) {
        ps.flat_sqrts.push_back(std::sqrt(block.alphas(k)));
        double theta = 0.0;
        if (g != nullptr)
          theta = g->phase + (copy - 0.5 * (block.dim - 1)) * g->ramp;
        ps.phases.push_back(theta);
      }
  }
  cdouble sum = 0.0;
  for (size_t a = 0; a < ps.flat_sqrts.size(); ++a)
    sum += ps.flat_sqrts[a] * std::polar(1.0, ps.phases[a]);
  ps.residual = std::abs(sum);
  ps.groups = std::move(groups);
  return ps;
}

}  // namespace

double PhaseSolution::weight_total() const {
  return std::accumulate(flat_sqrts.begin(), flat_sqrts.end(), 0.0);
}

double min_error_probability(std::span<const double> lambdas, int order) {
  const auto desc = clamped_descending(lambdas, order);
  const double gap = std::max(0.0, sqrt_gap(desc));
  return clamp01((gap / order) * (gap / order));
}

double unambiguous_failure_probability(std::span<const double> lambdas,
                                       int order) {
  const auto desc = clamped_descending(lambdas, order);
  double trace_root = 0.0;
  for (double l : desc) trace_root += std::sqrt(l);
  return clamp01(trace_root / order * std::max(0.0, sqrt_gap(desc)));
}

bool perfect_exclusion_possible(std::span<const double> lambdas) {
  if (lambdas.empty())
    throw std::invalid_argument("eigenvalue multiset must be nonempty");
  std::vector<double> desc(lambdas.begin(), lambdas.end());
  for (double& l : desc) l = std::max(0.0, l);
  std::sort(desc.begin(), desc.end(), std::greater<>());
  if (desc.size() >= 2 &&
      desc[0] - desc[1] <= tol::degenerate * std::max(1.0, desc[0]))
    return true;
  return sqrt_gap(desc) <= 1e-10;
}

PhaseSolution solve_phase_closure(const SchmidtData& schmidt) {
  if (!perfect_exclusion_possible(schmidt.flat_eigenvalues))
    throw std::invalid_argument(
        "solve_phase_closure: outside the perfect-exclusion region");
  std::vector<PhaseGroup> groups = collect_groups(schmidt);

  const ClosureGeometry geo = close_triangle(groups);
  PhaseGroup& lg = groups[geo.largest];
  if (!lg.flexible &&
      geo.largest_magnitude < lg.max_magnitude * (1.0 - 1e-12))
    throw Error(ErrorClass::internal,
                "phase closure wanted to shrink a rigid term");
  lg.magnitude = geo.largest_magnitude;
  lg.phase = geo.theta_largest;
  for (size_t i = 0; i < groups.size(); ++i)
    if (static_cast<int>(i) != static_cast<int>(geo.largest))
      groups[i].phase = geo.theta_pile[geo.pile[i]];

  for (PhaseGroup& g : groups) {
    const SchmidtBlock& block = schmidt.blocks[g.block_index];
    if (g.magnitude < g.max_magnitude * (1.0 - 1e-15))
      g.ramp = solve_ramp(block.dim, g.magnitude / g.max_magnitude);
  }
  return assemble_flat(schmidt, std::move(groups));
}

PhaseSolution antipodal_phase_solution(const SchmidtData& schmidt) {
  std::vector<PhaseGroup> groups = collect_groups(schmidt);
  const auto [top_block, top_k] = dominant_component(schmidt);
  for (PhaseGroup& g : groups)
    g.phase = (g.block_index == top_block) ? 0.0 : std::numbers::pi;
  PhaseSolution ps = assemble_flat(schmidt, std::move(groups));
  // With a one-dimensional dominant block the residual is exactly
  // sqrt(l1) - sum_{a>1} sqrt(la) whenever that gap is nonnegative.
  (void)top_k;
  return ps;
}

namespace {

Vector kron_at_block(const SchmidtBlock& block, const Vector& left,
                     const Vector& right, int dim_full) {
  Vector out = Vector::Zero(dim_full);
  for (int n = 0; n < block.dim; ++n)
    for (int t = 0; t < block.multiplicity; ++t)
      out(block.coord(n, t)) = left(n) * right(t);
  return out;
}

// Deterministic unit vector orthogonal to v (dim >= 2).
Vector orthogonal_unit(const Vector& v) {
  int pick = 0;
  double best = std::abs(v(0));
  for (int i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) < best) {
      best = std::abs(v(i));
      pick = i;
    }
  Vector w = Vector::Zero(v.size());
  w(pick) = 1.0;
  w -= v * v.dot(w);
  return w / w.norm();
}

// Sign-flip seed: gamma on the dominant component, -sqrt(d) on every other
// positive Schmidt component, all over sqrt(|G|).
Vector flip_seed(const SchmidtData& s, int dim_full, double gamma) {
  const auto [top_block, top_k] = dominant_component(s);
  if (s.blocks[top_block].dim != 1)
    throw Error(ErrorClass::internal,
                "outside the perfect region the dominant Schmidt component "
                "must sit in a one-dimensional block");
  Vector omega = Vector::Zero(dim_full);
  const double root_order = std::sqrt(static_cast<double>(s.group_order));
  for (size_t b = 0; b < s.blocks.size(); ++b)
    for (int k = 0; k < s.blocks[b].positive_count; ++k) {
      const bool top = static_cast<int>(b) == top_block && k == top_k;
      const double coeff =
          top ? gamma : -std::sqrt(static_cast<double>(s.blocks[b].dim));
      omega += (coeff / root_order) *
               block_product_vector(s, static_cast<int>(b), k, dim_full);
    }
  return omega;
}

// Realizes a phase-closure solution as a seed built from per-block basis
// pairs: aligned phases for rigid blocks, a tilted vector for rank-1 blocks,
// Fourier pairs with a phase ramp for the rest.
Vector closure_seed(const SchmidtData& s, const PhaseSolution& ps,
                    int dim_full) {
  Vector omega = Vector::Zero(dim_full);
  const double root_order = std::sqrt(static_cast<double>(s.group_order));
  for (const PhaseGroup& g : ps.groups) {
    const SchmidtBlock& block = s.blocks[g.block_index];
    const int n = block.positive_count;
    const double t = g.max_magnitude > 0.0 ? g.magnitude / g.max_magnitude : 0.0;
    const double scale = std::sqrt(static_cast<double>(block.dim)) / root_order;
    if (block.dim == 1) {
      omega += scale * std::polar(1.0, g.phase) *
               kron_at_block(block, block.v_basis.col(0), block.u_basis.col(0),
                             dim_full);
    } else if (n == 1) {
      const Vector v0 = block.v_basis.col(0);
      Vector tilted = t * v0;
      if (t < 1.0 - 1e-15)
        tilted += std::sqrt(std::max(0.0, 1.0 - t * t)) * orthogonal_unit(v0);
      tilted *= std::polar(1.0, g.phase);
      omega += scale * kron_at_block(block, tilted, block.u_basis.col(0),
                                     dim_full);
    } else {
      const double xi = solve_ramp(n, t);
      for (int j = 0; j < n; ++j) {
        Vector e = Vector::Zero(block.dim);
        Vector f = Vector::Zero(block.multiplicity);
        const double bj = g.phase + (j - 0.5 * (n - 1)) * xi;
        for (int k = 0; k < n; ++k) {
          const cdouble fourier =
              std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                         two_pi * j * k / n);
          e += fourier * block.v_basis.col(k);
          f += std::conj(fourier) * Vector(block.u_basis.col(k));
        }
        f *= std::polar(1.0, bj);
        omega += scale * kron_at_block(block, e, f, dim_full);
      }
    }
  }
  return omega;
}

struct Achieved {
  double error;
  double spread;
};

Achieved achieved_error(const IsotypicDecomposition& dec, const Vector& psi,
                        const std::vector<Matrix>& povm) {
  double mean = 0.0;
  std::vector<double> per(povm.size());
  for (size_t g = 0; g < povm.size(); ++g) {
    const Vector state = dec.rep.at(static_cast<int>(g)) * psi;
    per[g] = std::real(state.dot(povm[g] * state));
    mean += per[g];
  }
  mean /= static_cast<double>(povm.size());
  double spread = 0.0;
  for (double e : per) spread = std::max(spread, std::abs(e - mean));
  return {mean, spread};
}

}  // namespace

ExclusionSolution build_min_error_povm(const SchmidtData& schmidt,
                                       const IsotypicDecomposition& dec) {
  const int dim = dec.dim();
  ExclusionSolution sol;
  sol.mode = ExclusionMode::min_error;
  sol.p_min = min_error_probability(schmidt.flat_eigenvalues,
                                    schmidt.group_order);
  sol.q_min = unambiguous_failure_probability(schmidt.flat_eigenvalues,
                                              schmidt.group_order);
  sol.perfect = perfect_exclusion_possible(schmidt.flat_eigenvalues);
  sol.gamma = 1.0;

  Vector omega_rot;
  if (sol.perfect) {
    PhaseSolution ps = solve_phase_closure(schmidt);
    omega_rot = closure_seed(schmidt, ps, dim);
    sol.phase_solution = std::move(ps);
  } else {
    omega_rot = flip_seed(schmidt, dim, 1.0);
    sol.phase_solution = antipodal_phase_solution(schmidt);
  }
  sol.seed_omega = dec.basis.adjoint() * omega_rot;

  sol.povm.reserve(dec.rep.group.order);
  const Matrix seed_op = sol.seed_omega * sol.seed_omega.adjoint();
  for (int g = 0; g < dec.rep.group.order; ++g)
    sol.povm.push_back(dec.rep.at(g) * seed_op * dec.rep.at(g).adjoint());

  const Vector psi = dec.basis.adjoint() * schmidt.seed_rotated;
  const Achieved a = achieved_error(dec, psi, sol.povm);
  sol.achieved_error = a.error;
  sol.covariance_spread = a.spread;

  Matrix total = Matrix::Zero(dim, dim);
  for (const Matrix& p : sol.povm) total += p;
  sol.completeness_deviation =
      max_abs(Matrix(total - span_projector(schmidt, dec)));
  return sol;
}

ExclusionSolution build_unambiguous_povm(const SchmidtData& schmidt,
                                         const IsotypicDecomposition& dec) {
  const int dim = dec.dim();
  if (perfect_exclusion_possible(schmidt.flat_eigenvalues)) {
    ExclusionSolution sol = build_min_error_povm(schmidt, dec);
    sol.mode = ExclusionMode::unambiguous;
    sol.inconclusive = Matrix::Zero(dim, dim);
    sol.achieved_inconclusive = 0.0;
    sol.note =
        "perfect-exclusion region: the minimum-error measurement already has "
        "zero error, so no inconclusive element is needed";
    return sol;
  }

  ExclusionSolution sol;
  sol.mode = ExclusionMode::unambiguous;
  sol.p_min = min_error_probability(schmidt.flat_eigenvalues,
                                    schmidt.group_order);
  sol.q_min = unambiguous_failure_probability(schmidt.flat_eigenvalues,
                                              schmidt.group_order);
  sol.perfect = false;

  const auto [top_block, top_k] = dominant_component(schmidt);
  const double alpha_top = schmidt.blocks[top_block].alphas(top_k);
  double rest = 0.0;
  for (size_t b = 0; b < schmidt.blocks.size(); ++b)
    for (int k = 0; k < schmidt.blocks[b].positive_count; ++k) {
      if (static_cast<int>(b) == top_block && k == top_k) continue;
      rest += schmidt.blocks[b].dim * std::sqrt(schmidt.blocks[b].alphas(k));
    }
  sol.gamma = rest / std::sqrt(alpha_top);

  const Vector omega_rot = flip_seed(schmidt, dim, sol.gamma);
  sol.seed_omega = dec.basis.adjoint() * omega_rot;
  sol.phase_solution = antipodal_phase_solution(schmidt);

  const Matrix seed_op = sol.seed_omega * sol.seed_omega.adjoint();
  sol.povm.reserve(dec.rep.group.order);
  for (int g = 0; g < dec.rep.group.order; ++g)
    sol.povm.push_back(dec.rep.at(g) * seed_op * dec.rep.at(g).adjoint());

  const Vector psi = dec.basis.adjoint() * schmidt.seed_rotated;
  if (std::abs(sol.seed_omega.dot(psi)) > 1e-10)
    throw Error(ErrorClass::internal,
                "unambiguous seed is not orthogonal to the reference state");

  const Achieved a = achieved_error(dec, psi, sol.povm);
  sol.achieved_error = a.error;
  sol.covariance_spread = a.spread;

  Matrix total = Matrix::Zero(dim, dim);
  for (const Matrix& p : sol.povm) total += p;
  const Matrix span = span_projector(schmidt, dec);
  sol.inconclusive = Matrix(span - total);
  sol.achieved_inconclusive = std::real(psi.dot(*sol.inconclusive * psi));

  // Pi_Q should be (1 - gamma^2) times the projector onto the dominant
  // Schmidt component; measure completeness against that prediction.
  const Vector xi_top = dec.basis.adjoint() *
                        block_product_vector(schmidt, top_block, top_k, dim);
  const Matrix predicted =
      (1.0 - sol.gamma * sol.gamma) * (xi_top * xi_top.adjoint());
  sol.completeness_deviation = max_abs(Matrix(total + predicted - span));
  return sol;
}

}  // namespace qse
