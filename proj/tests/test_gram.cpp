#include <doctest.h>

#include "test_helpers.hpp"

using namespace qse;
using namespace qse::testing;

namespace {

const cdouble kI(0.0, 1.0);

// G must lie in the algebra spanned by R_g (linear case) or conj(R_g)
// (projective case): G = sum_g c_g R_g^(*).
double algebra_membership_deviation(const GramMatrix& g) {
  const UnitaryRep r = right_regular(g.group(), g.multiplier());
  Matrix sum = Matrix::Zero(g.order(), g.order());
  const Vector& c = *g.coefficients();
  for (int a = 0; a < g.order(); ++a)
    sum += c(a) * (g.multiplier().trivial ? r.at(a) : r.at(a).conjugate());
  return max_abs(Matrix(sum - g.entries()));
}

}  // namespace

TEST_CASE("tetrahedron ensemble reproduces the canonical SIC Gram") {
  const Ensemble e = make_ensemble(pauli_rep(), tetrahedron_seed());
  const GramMatrix g = gram_from_states(e);

  const double c = 1.0 / std::sqrt(3.0);
  const Vector& coef = *g.coefficients();
  for (int j = 1; j < 4; ++j) {
    CHECK(std::abs(coef(j).real() - c) < 1e-10);
    CHECK(std::abs(coef(j).imag()) < 1e-10);
  }

  Matrix expected(4, 4);
  expected << 1, c, c, c,  //
      c, 1, kI * c, -kI * c,  //
      c, -kI * c, 1, kI * c,  //
      c, kI * c, -kI * c, 1;
  CHECK(max_abs(Matrix(g.entries() - expected)) < 1e-10);

  const RealVector ev = g.eigenvalues();
  CHECK(std::abs(ev(0) - 2.0) < 1e-9);
  CHECK(std::abs(ev(1) - 2.0) < 1e-9);
  CHECK(std::abs(ev(2)) < 1e-9);
  CHECK(std::abs(ev(3)) < 1e-9);

  CHECK(algebra_membership_deviation(g) < 1e-10);
}

TEST_CASE("orthogonal orbit gives the identity Gram") {
  const GroupTable z2 = build_cyclic(2);
  Vector seed(2);
  seed << 1, 0;
  const Ensemble e =
      make_ensemble(make_rep(z2, trivial_multiplier(2), {pauli(0), pauli(1)}),
                    seed);
  CHECK(max_abs(Matrix(gram_from_states(e).entries() -
                       Matrix::Identity(2, 2))) < 1e-12);
}

TEST_CASE("states and coefficients give the same Gram") {
  std::mt19937_64 rng(21);
  for (const GroupTable& g : {build_cyclic(4), build_dihedral(3)}) {
    const Multiplier m = trivial_multiplier(g.order);
    const Ensemble e = make_ensemble(left_regular(g, m),
                                     random_unit_vector(g.order, rng));
    const GramMatrix from_states = gram_from_states(e);
    const GramMatrix from_coeffs =
        gram_from_coefficients(*from_states.coefficients(), g, m);
    CHECK(max_abs(Matrix(from_states.entries() - from_coeffs.entries())) <
          1e-10);
    CHECK(algebra_membership_deviation(from_states) < 1e-10);
  }
  // Projective case via the Pauli orbit of a random qubit state.
  const Ensemble e = make_ensemble(pauli_rep(), random_unit_vector(2, rng));
  const GramMatrix g = gram_from_states(e);
  const GramMatrix g2 = gram_from_coefficients(
      *g.coefficients(), g.group(), g.multiplier());
  CHECK(max_abs(Matrix(g.entries() - g2.entries())) < 1e-10);
  CHECK(algebra_membership_deviation(g) < 1e-10);
}

TEST_CASE("the Gram matrix commutes with every left translation") {
  // Membership in the right-translation algebra is equivalent to commuting
  // with the (projective) left-regular representation.
  std::mt19937_64 rng(23);
  for (const GroupTable& g : {build_dihedral(3), build_cyclic(4)}) {
    const Multiplier m = trivial_multiplier(g.order);
    const GramMatrix gram =
        gram_from_coefficients(random_gram_coefficients(g, m, rng), g, m);
    const UnitaryRep l = left_regular(g, m);
    for (int a = 0; a < g.order; ++a)
      CHECK(max_abs(Matrix(l.at(a) * gram.entries() -
                           gram.entries() * l.at(a))) < 1e-10);
  }
  const GramMatrix gram =
      gram_from_states(make_ensemble(pauli_rep(), tetrahedron_seed()));
  const UnitaryRep l = left_regular(build_klein_four(), pauli_multiplier());
  for (int a = 0; a < 4; ++a)
    CHECK(max_abs(Matrix(l.at(a) * gram.entries() -
                         gram.entries() * l.at(a))) < 1e-10);
}

TEST_CASE("dihedral Gram matches the canonical six-by-six layout") {
  const GroupTable d3 = build_dihedral(3);
  const cdouble c1(0.12, 0.07);
  const double ca = 0.15, cb = 0.08, cc = -0.05;
  Vector coef(6);
  coef << 1.0, c1, std::conj(c1), ca, cb, cc;
  const GramMatrix g =
      gram_from_coefficients(coef, d3, trivial_multiplier(6));

  const cdouble c2 = std::conj(c1);
  Matrix expected(6, 6);
  expected << 1, c1, c2, ca, cb, cc,  //
      c2, 1, c1, cc, ca, cb,          //
      c1, c2, 1, cb, cc, ca,          //
      ca, cc, cb, 1, c2, c1,          //
      cb, ca, cc, c1, 1, c2,          //
      cc, cb, ca, c2, c1, 1;
  CHECK(max_abs(Matrix(g.entries() - expected)) < 1e-12);
}

TEST_CASE("pauli-multiplier Gram carries the +-i phase pattern") {
  const GroupTable k = build_klein_four();
  Vector coef(4);
  coef << 1.0, 0.3, 0.2, -0.1;
  const GramMatrix g = gram_from_coefficients(coef, k, pauli_multiplier());
  Matrix expected(4, 4);
  expected << 1.0, 0.3, 0.2, -0.1,  //
      0.3, 1.0, kI * -0.1, -kI * 0.2,  //
      0.2, -kI * -0.1, 1.0, kI * 0.3,  //
      -0.1, kI * 0.2, -kI * 0.3, 1.0;
  CHECK(max_abs(Matrix(g.entries() - expected)) < 1e-12);
}

TEST_CASE("circulant eigenvalues match the Fourier oracle") {
  const int n = 3;
  const double c = 0.4;
  const GramMatrix g = gram_from_coefficients(circulant_coefficients(n, c),
                                              build_cyclic(n),
                                              trivial_multiplier(n));
  // Independent route: lambda_j = sum_k c_k exp(2 pi i j k / n).
  std::vector<double> dft;
  for (int j = 0; j < n; ++j) {
    cdouble sum = 0.0;
    const Vector coef = circulant_coefficients(n, c);
    for (int k = 0; k < n; ++k)
      sum += coef(k) * std::polar(1.0, 2.0 * std::numbers::pi * j * k / n);
    dft.push_back(sum.real());
  }
  std::sort(dft.begin(), dft.end(), std::greater<>());
  const RealVector ev = g.eigenvalues();
  for (int j = 0; j < n; ++j) CHECK(std::abs(ev(j) - dft[j]) < 1e-12);
  CHECK(ev(0) == doctest::Approx(1.0 + 2.0 * c));
  CHECK(ev(1) == doctest::Approx(1.0 - c));
}

TEST_CASE("invalid coefficient vectors are rejected with context") {
  const GroupTable d3 = build_dihedral(3);
  Vector coef(6);
  coef << 1.0, cdouble(0.12, 0.07), cdouble(0.12, 0.07), 0.1, 0.1, 0.1;
  try {
    gram_from_coefficients(coef, d3, trivial_multiplier(6));
    FAIL("expected a Hermiticity error");
  } catch (const Error& e) {
    CHECK(e.error_class() == ErrorClass::invalid_gram);
    CHECK(std::string(e.what()).find("conj") != std::string::npos);
  }

  // Overlaps beyond the PSD boundary.
  CHECK_THROWS_AS(gram_from_coefficients(circulant_coefficients(2, 1.5),
                                         build_cyclic(2),
                                         trivial_multiplier(2)),
                  Error);
  // Identity coefficient must be one.
  Vector bad = circulant_coefficients(2, 0.3);
  bad(0) = 0.9;
  CHECK_THROWS_AS(gram_from_coefficients(bad, build_cyclic(2),
                                         trivial_multiplier(2)),
                  Error);

  // The assembly formula needs omega(g, g^-1) = 1.
  const GroupTable k = build_klein_four();
  Multiplier unnormalized = pauli_multiplier();
  unnormalized.phases.row(1) *= -1.0;
  unnormalized.phases(1, 0) = 1.0;
  Vector coef4 = Vector::Zero(4);
  coef4(0) = 1.0;
  CHECK_THROWS_AS(gram_from_coefficients(coef4, k, unnormalized),
                  std::invalid_argument);
}

TEST_CASE("canonical patterns") {
  {
    const CanonicalPattern p =
        canonical_pattern(build_dihedral(3), trivial_multiplier(6));
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c)
        CHECK(std::abs(p.pattern[r][c].phase - 1.0) < 1e-12);
    CHECK(p.pattern[1][0].label == 2);   // c_2 sits below the diagonal
    CHECK(p.pattern[3][1].label == 5);   // reflection row picks up s_C
    REQUIRE(p.constraints.size() == 4);
    CHECK(p.constraints[0].kind == CanonicalPattern::Kind::conjugate_pair);
    CHECK(p.constraints[0].element == 1);
    CHECK(p.constraints[0].partner == 2);
    for (int i = 1; i < 4; ++i)
      CHECK(p.constraints[i].kind == CanonicalPattern::Kind::self_real);
  }
  {
    const CanonicalPattern p =
        canonical_pattern(build_cyclic(2), trivial_multiplier(2));
    REQUIRE(p.constraints.size() == 1);
    CHECK(p.constraints[0].kind == CanonicalPattern::Kind::self_real);
  }
  {
    const CanonicalPattern p =
        canonical_pattern(build_klein_four(), pauli_multiplier());
    CHECK(std::abs(p.pattern[1][2].phase - kI) < 1e-12);   // +i c_z
    CHECK(std::abs(p.pattern[2][1].phase + kI) < 1e-12);   // -i c_z
    CHECK(p.pattern[1][2].label == 3);
    for (const auto& con : p.constraints)
      CHECK(con.kind == CanonicalPattern::Kind::self_real);
  }
}

TEST_CASE("canonical pattern labels reproduce the printed reference table") {
  const GroupTable d3 = build_dihedral(3);
  const CanonicalPattern p = canonical_pattern(d3, trivial_multiplier(6));
  const std::vector<std::vector<int>> printed = {
      {0, 1, 2, 3, 4, 5}, {2, 0, 1, 5, 3, 4}, {1, 2, 0, 4, 5, 3},
      {3, 5, 4, 0, 2, 1}, {4, 3, 5, 1, 0, 2}, {5, 4, 3, 2, 1, 0}};
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) CHECK(p.pattern[r][c].label == printed[r][c]);
}

TEST_CASE("associated ensemble") {
  {
    const GramMatrix g = gram_from_coefficients(
        circulant_coefficients(3, 0.0), build_cyclic(3), trivial_multiplier(3));
    const Ensemble e = associated_ensemble(g);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(std::abs(e.states[a](b) - (a == b ? 1.0 : 0.0)) < 1e-10);
  }
  {
    // Tetrahedron Gram: the four-dimensional twin shares the spectrum.
    const Ensemble source = make_ensemble(pauli_rep(), tetrahedron_seed());
    const GramMatrix g = gram_from_states(source);
    const Ensemble twin = associated_ensemble(g);
    const GramMatrix g2 = gram_from_states(twin);
    CHECK(max_abs(Matrix(g.entries() - g2.entries())) < 1e-9);
    Matrix omega = Matrix::Zero(4, 4);
    for (const Vector& s : twin.states) omega += s * s.adjoint();
    const HermitianSpectrum spec = hermitian_eig(omega);
    CHECK(std::abs(spec.eigenvalues(0) - 2.0) < 1e-9);
    CHECK(std::abs(spec.eigenvalues(1) - 2.0) < 1e-9);
    CHECK(std::abs(spec.eigenvalues(2)) < 1e-9);
  }
  {
    // Covariance L_g |phi_h> = omega(g,h) |phi_{gh}> and Gram round trips
    // over random admissible coefficients.
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 10; ++trial) {
      const GroupTable d3 = build_dihedral(3);
      const Multiplier m = trivial_multiplier(6);
      const Vector coef = random_gram_coefficients(d3, m, rng);
      const GramMatrix g = gram_from_coefficients(coef, d3, m);
      const Ensemble e = associated_ensemble(g);
      CHECK(max_abs(Matrix(gram_from_states(e).entries() - g.entries())) <
            1e-9);
      for (int a = 0; a < 6; ++a)
        for (int h = 0; h < 6; ++h) {
          const Vector lhs = e.rep.at(a) * e.states[h];
          const Vector rhs =
              e.rep.multiplier.omega(a, h) * e.states[d3.mul(a, h)];
          CHECK(max_abs(Vector(lhs - rhs)) < 1e-9);
        }
    }
    // Projective covariance on the tetrahedron twin.
    const GramMatrix g =
        gram_from_states(make_ensemble(pauli_rep(), tetrahedron_seed()));
    const Ensemble e = associated_ensemble(g);
    const GroupTable k = build_klein_four();
    for (int a = 0; a < 4; ++a)
      for (int h = 0; h < 4; ++h) {
        const Vector lhs = e.rep.at(a) * e.states[h];
        const Vector rhs =
            e.rep.multiplier.omega(a, h) * e.states[k.mul(a, h)];
        CHECK(max_abs(Vector(lhs - rhs)) < 1e-9);
      }
  }
}
