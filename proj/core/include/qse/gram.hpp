#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qse/linalg.hpp"
#include "qse/representation.hpp"

namespace qse {

/// The orbit of a unit seed state under a unitary representation, with
/// uniform priors 1/|G|.
struct Ensemble {
  UnitaryRep rep;
  Vector seed;
  std::vector<Vector> states;  // U_g * seed

  int order() const { return rep.group.order; }
  int dim() const { return rep.dim; }
};

Ensemble make_ensemble(UnitaryRep rep, Vector seed);

/// Hermitian PSD matrix of pairwise state overlaps with unit diagonal.
/// The spectrum is computed once on first use and shared across copies.
class GramMatrix {
 public:
  GramMatrix(GroupTable group, Multiplier multiplier, Matrix entries,
             std::optional<Vector> coefficients);

  const GroupTable& group() const { return group_; }
  const Multiplier& multiplier() const { return multiplier_; }
  const Matrix& entries() const { return entries_; }
  const std::optional<Vector>& coefficients() const { return coefficients_; }
  int order() const { return group_.order; }

  const HermitianSpectrum& spectrum() const;
  const RealVector& eigenvalues() const { return spectrum().eigenvalues; }

 private:
  GroupTable group_;
  Multiplier multiplier_;
  Matrix entries_;
  std::optional<Vector> coefficients_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

GramMatrix gram_from_states(const Ensemble& e);

/// Assembles G from its expansion in the (conjugated, when projective)
/// right-regular representation: G_{r,c} = omega(r^-1,c) * coef[r^-1 c].
/// Requires coef[e] = 1, Hermiticity-consistent coefficients, and
/// eigenvalues above the -1e-8 * ||G|| rejection threshold.
GramMatrix gram_from_coefficients(const Vector& coefficients,
                                  const GroupTable& group,
                                  const Multiplier& multiplier);

/// Symbolic Gram structure read off the group table: entry (r,c) is
/// phase * c_label with label = r^-1 c, plus the Hermiticity constraints
/// the coefficients must satisfy.
struct CanonicalPattern {
  struct Entry {
    int label = 0;
    cdouble phase = 1.0;
  };
  enum class Kind { self_real, self_phase, conjugate_pair, forced_zero };
  struct Constraint {
    Kind kind;
    int element;
    int partner;    // inverse element (== element for self kinds)
    cdouble phase;  // c_partner = phase * conj(c_element)
    std::string text;
  };

  GroupTable group;
  Multiplier multiplier;
  std::vector<std::vector<Entry>> pattern;
  std::vector<Constraint> constraints;

  std::string pretty() const;
};

CanonicalPattern canonical_pattern(const GroupTable& group,
                                   const Multiplier& multiplier);

/// The ensemble formed by the columns of sqrt(G) in the group algebra;
/// it shares the Gram matrix G and transforms under the (projective)
/// left-regular representation.
Ensemble associated_ensemble(const GramMatrix& g);

}  // namespace qse
