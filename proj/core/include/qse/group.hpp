#pragma once

#include <string>
#include <vector>

#include "qse/types.hpp"

namespace qse {

/// A finite group as a validated multiplication table. Elements are dense
/// indices 0..order-1 with the identity fixed at index 0; names are cosmetic.
struct GroupTable {
  int order = 0;
  std::vector<std::vector<int>> mult;  // mult[r][c] = index of r*c
  std::vector<int> inverse;
  int identity = 0;
  std::vector<std::string> names;

  int mul(int a, int b) const { return mult[a][b]; }
  int inv(int a) const { return inverse[a]; }
  const std::string& name(int g) const { return names[g]; }
};

struct GroupCheck {
  bool ok = true;
  std::string witness;  // first counterexample, empty when ok
};

/// Per-invariant validation outcome with the first counterexample on failure.
struct GroupValidation {
  GroupCheck identity;
  GroupCheck inverses;
  GroupCheck associativity;
  GroupCheck latin_square;

  bool ok() const {
    return identity.ok && inverses.ok && associativity.ok && latin_square.ok;
  }
  std::string summary() const;
};

GroupTable build_cyclic(int n);
GroupTable build_klein_four();

/// Dihedral group of order 2n: rotations r^k at indices 0..n-1, reflections at
/// n..2n-1 ordered so the n=3 table reproduces the textbook e,r,r^2,s_A,s_B,s_C
/// labelling (reflection n+k fixes vertex k).
GroupTable build_dihedral(int n);

GroupTable build_direct_product(const GroupTable& a, const GroupTable& b);

/// Wraps a raw table (identity must sit at index 0), inferring inverses.
/// Throws on tables that fail validation.
GroupTable group_from_table(std::vector<std::vector<int>> mult,
                            std::vector<std::string> names = {});

GroupValidation validate_group_table(const GroupTable& t);

}  // namespace qse
