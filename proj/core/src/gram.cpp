#include "qse/gram.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

namespace qse {

namespace {

std::string format_phase(cdouble phase) {
  if (std::abs(phase - cdouble(1, 0)) < 1e-9) return "";
  if (std::abs(phase + cdouble(1, 0)) < 1e-9) return "-";
  if (std::abs(phase - cdouble(0, 1)) < 1e-9) return "i*";
  if (std::abs(phase + cdouble(0, 1)) < 1e-9) return "-i*";
  std::ostringstream out;
  out << "exp(" << std::arg(phase) << "i)*";
  return out.str();
}

}  // namespace

Ensemble make_ensemble(UnitaryRep rep, Vector seed) {
  if (seed.size() != rep.dim)
    throw std::invalid_argument("make_ensemble: seed dimension mismatch");
  if (std::abs(seed.norm() - 1.0) > tol::unit)
    throw std::invalid_argument("make_ensemble: seed state must be unit norm");
  Ensemble e;
  e.states.reserve(rep.group.order);
  for (int g = 0; g < rep.group.order; ++g) e.states.push_back(rep.at(g) * seed);
  e.rep = std::move(rep);
  e.seed = std::move(seed);
  return e;
}

struct GramMatrix::Cache {
  std::once_flag once;
  std::optional<HermitianSpectrum> spectrum;
};

GramMatrix::GramMatrix(GroupTable group, Multiplier multiplier, Matrix entries,
                       std::optional<Vector> coefficients)
    : group_(std::move(group)),
      multiplier_(std::move(multiplier)),
      entries_(std::move(entries)),
      coefficients_(std::move(coefficients)),
      cache_(std::make_shared<Cache>()) {
  if (entries_.rows() != group_.order || entries_.cols() != group_.order)
    throw std::invalid_argument("GramMatrix: entry table size mismatch");
}

const HermitianSpectrum& GramMatrix::spectrum() const {
  std::call_once(cache_->once,
                 [this] { cache_->spectrum = hermitian_eig(entries_); });
  return *cache_->spectrum;
}

GramMatrix gram_from_states(const Ensemble& e) {
  const int n = e.order();
  Matrix g(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < a; ++b) {
      g(a, b) = e.states[a].dot(e.states[b]);  // conjugates the left argument
      g(b, a) = std::conj(g(a, b));
    }
    g(a, a) = 1.0;
  }
  Vector coef = g.row(e.rep.group.identity).transpose();
  return GramMatrix(e.rep.group, e.rep.multiplier, std::move(g),
                    std::move(coef));
}

GramMatrix gram_from_coefficients(const Vector& coefficients,
                                  const GroupTable& group,
                                  const Multiplier& multiplier) {
  if (!is_normalized(group, multiplier))
    throw std::invalid_argument(
        "gram_from_coefficients: multiplier must be normalized");
  const int n = group.order;
  if (coefficients.size() != n)
    throw Error(ErrorClass::invalid_gram,
                "coefficient vector length must equal the group order");
  if (std::abs(coefficients(group.identity) - 1.0) > tol::unit)
    throw Error(ErrorClass::invalid_gram,
                "identity coefficient must equal 1");

  Matrix g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int elem = group.mul(group.inv(r), c);
      g(r, c) = multiplier.omega(group.inv(r), c) * coefficients(elem);
    }

  const double scale = std::max(1.0, max_abs(g));
  double worst = 0.0;
  int wr = 0, wc = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double dev = std::abs(g(r, c) - std::conj(g(c, r)));
      if (dev > worst) {
        worst = dev;
        wr = r;
        wc = c;
      }
    }
  if (worst > 1e-10 * scale) {
    const int elem = group.mul(group.inv(wr), wc);
    std::ostringstream msg;
    msg << "coefficients are not Hermiticity-consistent: entry (" << wr << ","
        << wc << ") deviates by " << worst << "; hermiticity forces c_{"
        << group.name(group.inv(elem)) << "} = conj(c_{" << group.name(elem)
        << "}) up to the multiplier phase";
    throw Error(ErrorClass::invalid_gram, msg.str());
  }

  GramMatrix gram(group, multiplier, std::move(g), coefficients);
  const double lambda_min = gram.eigenvalues()(n - 1);
  if (lambda_min < -tol::gram_psd * std::max(1.0, max_abs(gram.entries()))) {
    std::ostringstream msg;
    msg << "coefficients do not define a PSD Gram matrix: lambda_min = "
        << lambda_min;
    throw Error(ErrorClass::invalid_gram, msg.str());
  }
  return gram;
}

std::string CanonicalPattern::pretty() const {
  std::ostringstream out;
  for (int r = 0; r < group.order; ++r) {
    for (int c = 0; c < group.order; ++c) {
      const Entry& e = pattern[r][c];
      std::string cell = e.label == group.identity
                             ? format_phase(e.phase) + "1"
                             : format_phase(e.phase) + "c_" + group.name(e.label);
      out << cell;
      if (c + 1 < group.order) out << "\t";
    }
    out << "\n";
  }
  for (const auto& con : constraints) out << con.text << "\n";
  return out.str();
}

CanonicalPattern canonical_pattern(const GroupTable& group,
                                   const Multiplier& multiplier) {
  if (!is_normalized(group, multiplier))
    throw std::invalid_argument(
        "canonical_pattern: multiplier must be normalized");
  const int n = group.order;
  CanonicalPattern pat;
  pat.group = group;
  pat.multiplier = multiplier;
  pat.pattern.assign(n, std::vector<CanonicalPattern::Entry>(n));

  // kappa[g]: Hermiticity forces c_{g^-1} = kappa * conj(c_g); inconsistent
  // realizations across table positions force the coefficient to zero.
  std::vector<std::optional<cdouble>> kappa(n);
  std::vector<bool> conflict(n, false);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int elem = group.mul(group.inv(r), c);
      const cdouble phase = multiplier.omega(group.inv(r), c);
      pat.pattern[r][c] = {elem, phase};
      const cdouble partner_phase = multiplier.omega(group.inv(c), r);
      const cdouble k = std::conj(phase) / partner_phase;
      if (!kappa[elem])
        kappa[elem] = k;
      else if (std::abs(*kappa[elem] - k) > 1e-10)
        conflict[elem] = true;
    }

  std::vector<bool> seen(n, false);
  seen[group.identity] = true;
  for (int g = 0; g < n; ++g) {
    if (seen[g]) continue;
    const int gi = group.inv(g);
    seen[g] = seen[gi] = true;
    CanonicalPattern::Constraint con;
    con.element = g;
    con.partner = gi;
    con.phase = kappa[g].value_or(1.0);
    std::ostringstream text;
    if (conflict[g] || conflict[gi]) {
      con.kind = CanonicalPattern::Kind::forced_zero;
      text << "c_" << group.name(g) << " = 0 (conflicting phase constraints)";
    } else if (g == gi) {
      if (std::abs(con.phase - 1.0) < 1e-10) {
        con.kind = CanonicalPattern::Kind::self_real;
        text << "c_" << group.name(g) << " real";
      } else {
        con.kind = CanonicalPattern::Kind::self_phase;
        text << "c_" << group.name(g) << " = " << format_phase(con.phase)
             << "conj(c_" << group.name(g) << ")";
      }
    } else {
      con.kind = CanonicalPattern::Kind::conjugate_pair;
      text << "c_" << group.name(gi) << " = " << format_phase(con.phase)
           << "conj(c_" << group.name(g) << ")";
    }
    con.text = text.str();
    pat.constraints.push_back(std::move(con));
  }
  return pat;
}

Ensemble associated_ensemble(const GramMatrix& g) {
  const Matrix root = sqrtm_psd(g.entries());
  UnitaryRep rep = left_regular(g.group(), g.multiplier());
  Vector seed = root.col(g.group().identity);
  seed /= seed.norm();
  return make_ensemble(std::move(rep), std::move(seed));
}

}  // namespace qse
