#include "qse/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qse {

namespace {

bool all_one(const Matrix& phases) {
  for (Eigen::Index r = 0; r < phases.rows(); ++r)
    for (Eigen::Index c = 0; c < phases.cols(); ++c)
      if (std::abs(phases(r, c) - 1.0) > tol::unit) return false;
  return true;
}

// Square root with the branch cut chosen so arg lies in [-pi, pi):
// sqrt(-1) = -i, positive reals keep their positive root.
cdouble branch_sqrt(cdouble z) {
  double phi = std::arg(z);
  if (phi > std::numbers::pi - 1e-12) phi -= 2.0 * std::numbers::pi;
  return std::polar(std::sqrt(std::abs(z)), phi / 2.0);
}

}  // namespace

std::string MultiplierValidation::summary() const {
  std::ostringstream out;
  auto line = [&](const char* label, const GroupCheck& c) {
    out << label << ": " << (c.ok ? "pass" : "FAIL");
    if (!c.ok) out << " (" << c.witness << ")";
    out << "\n";
  };
  line("unit modulus", unit_modulus);
  line("cocycle", cocycle);
  line("identity normalization", identity_normalization);
  line("inverse normalization", inverse_normalization);
  return out.str();
}

Multiplier trivial_multiplier(int order) {
  Multiplier m;
  m.phases = Matrix::Ones(order, order);
  m.trivial = true;
  return m;
}

Multiplier pauli_multiplier() {
  const cdouble i(0.0, 1.0);
  Multiplier m;
  m.phases.resize(4, 4);
  m.phases << 1, 1, 1, 1,  //
      1, 1, i, -i,         //
      1, -i, 1, i,         //
      1, i, -i, 1;
  m.trivial = false;
  return m;
}

Multiplier multiplier_from_phases(Matrix phases) {
  if (phases.rows() != phases.cols() || phases.rows() == 0)
    throw Error(ErrorClass::schema, "multiplier phase table must be square");
  const int n = static_cast<int>(phases.rows());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (std::abs(std::abs(phases(r, c)) - 1.0) > tol::unit)
        throw Error(ErrorClass::schema,
                    "multiplier phases must have unit modulus");
  for (int g = 0; g < n; ++g)
    if (std::abs(phases(g, 0) - 1.0) > tol::unit ||
        std::abs(phases(0, g) - 1.0) > tol::unit)
      throw Error(ErrorClass::schema,
                  "multiplier must satisfy omega(g,e) = omega(e,g) = 1");
  Multiplier m;
  m.phases = std::move(phases);
  // Force exact identity normalization.
  for (int g = 0; g < n; ++g) m.phases(g, 0) = m.phases(0, g) = 1.0;
  m.trivial = all_one(m.phases);
  return m;
}

MultiplierValidation validate_multiplier(const GroupTable& g,
                                         const Multiplier& m) {
  MultiplierValidation v;
  const int n = g.order;
  std::ostringstream w;
  if (m.order() != n) {
    v.unit_modulus = {false, "phase table size does not match group order"};
    return v;
  }

  for (int a = 0; a < n && v.unit_modulus.ok; ++a)
    for (int b = 0; b < n; ++b)
      if (std::abs(std::abs(m.omega(a, b)) - 1.0) > tol::unit) {
        w.str("");
        w << "|omega(" << a << "," << b << ")| deviates by "
          << std::abs(std::abs(m.omega(a, b)) - 1.0);
        v.unit_modulus = {false, w.str()};
        break;
      }

  for (int a = 0; a < n && v.cocycle.ok; ++a)
    for (int b = 0; b < n && v.cocycle.ok; ++b)
      for (int c = 0; c < n; ++c) {
        const cdouble lhs = m.omega(a, b) * m.omega(g.mul(a, b), c);
        const cdouble rhs = m.omega(a, g.mul(b, c)) * m.omega(b, c);
        if (std::abs(lhs - rhs) > tol::unit) {
          w.str("");
          w << "cocycle fails at (g,h,f)=(" << a << "," << b << "," << c
            << ") by " << std::abs(lhs - rhs);
          v.cocycle = {false, w.str()};
          break;
        }
      }

  for (int a = 0; a < n && v.identity_normalization.ok; ++a)
    if (m.omega(a, 0) != 1.0 || m.omega(0, a) != 1.0) {
      w.str("");
      w << "omega(g,e) or omega(e,g) != 1 at g=" << a;
      v.identity_normalization = {false, w.str()};
    }

  for (int a = 0; a < n && v.inverse_normalization.ok; ++a)
    if (std::abs(m.omega(a, g.inv(a)) - 1.0) > tol::unit ||
        std::abs(m.omega(g.inv(a), a) - 1.0) > tol::unit) {
      w.str("");
      w << "omega(g,g^-1) != 1 at g=" << a;
      v.inverse_normalization = {false, w.str()};
    }

  return v;
}

bool is_normalized(const GroupTable& g, const Multiplier& m, double tolerance) {
  for (int a = 0; a < g.order; ++a)
    if (std::abs(m.omega(a, g.inv(a)) - 1.0) > tolerance ||
        std::abs(m.omega(g.inv(a), a) - 1.0) > tolerance)
      return false;
  return true;
}

Multiplier normalize_multiplier(const GroupTable& g, const Multiplier& m) {
  const int n = g.order;
  if (m.order() != n)
    throw std::invalid_argument("normalize_multiplier: size mismatch");
  Vector mu(n);
  for (int a = 0; a < n; ++a) mu(a) = 1.0 / branch_sqrt(m.omega(a, g.inv(a)));
  mu(0) = 1.0;
  Matrix phases(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      phases(a, b) = m.omega(a, b) * mu(a) * mu(b) / mu(g.mul(a, b));
  return multiplier_from_phases(std::move(phases));
}

}  // namespace qse
