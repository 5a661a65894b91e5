#include "qse/irreps.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace qse {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

Irrep character_irrep(std::string label, const std::vector<cdouble>& values) {
  std::vector<Matrix> mats;
  mats.reserve(values.size());
  for (cdouble v : values) {
    Matrix m(1, 1);
    m(0, 0) = v;
    mats.push_back(m);
  }
  return make_irrep(std::move(label), std::move(mats));
}

// Discrete logs with respect to a generator whose powers cover the group,
// or nullopt when the group is not cyclic.
std::optional<std::vector<int>> cyclic_logs(const GroupTable& g) {
  const int n = g.order;
  for (int gen = 0; gen < n; ++gen) {
    std::vector<int> log(n, -1);
    int cur = g.identity;
    int covered = 0;
    for (int k = 0; k < n; ++k) {
      if (log[cur] >= 0) break;
      log[cur] = k;
      ++covered;
      cur = g.mul(cur, gen);
    }
    if (covered == n && cur == g.identity) return log;
  }
  return std::nullopt;
}

bool is_klein_structure(const GroupTable& g) {
  if (g.order != 4) return false;
  for (int a = 0; a < 4; ++a)
    if (g.inv(a) != a) return false;
  return true;
}

IrrepCatalog cyclic_catalog(const GroupTable& g, const Multiplier& m,
                            const std::vector<int>& log) {
  const int n = g.order;
  IrrepCatalog cat{g, m, {}};
  for (int j = 0; j < n; ++j) {
    std::vector<cdouble> values(n);
    for (int a = 0; a < n; ++a)
      values[a] = std::polar(1.0, two_pi * j * log[a] / n);
    cat.irreps.push_back(character_irrep("chi_" + std::to_string(j), values));
  }
  return cat;
}

IrrepCatalog klein_catalog(const GroupTable& g, const Multiplier& m) {
  IrrepCatalog cat{g, m, {}};
  const int c = g.mul(1, 2);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      std::vector<cdouble> values(4, 1.0);
      values[1] = s ? -1.0 : 1.0;
      values[2] = t ? -1.0 : 1.0;
      values[c] = values[1] * values[2];
      cat.irreps.push_back(character_irrep(
          "chi_" + std::to_string(s) + std::to_string(t), values));
    }
  return cat;
}

IrrepCatalog dihedral_catalog(const GroupTable& g, const Multiplier& m, int n) {
  IrrepCatalog cat{g, m, {}};
  const int order = 2 * n;
  auto sign_values = [order, n](auto rot, auto refl) {
    std::vector<cdouble> v(order);
    for (int k = 0; k < n; ++k) {
      v[k] = rot(k);
      v[n + k] = refl(k);
    }
    return v;
  };
  cat.irreps.push_back(character_irrep(
      "triv", sign_values([](int) { return 1.0; }, [](int) { return 1.0; })));
  cat.irreps.push_back(character_irrep(
      "sign", sign_values([](int) { return 1.0; }, [](int) { return -1.0; })));
  if (n % 2 == 0) {
    auto alt = [](int k) { return k % 2 ? -1.0 : 1.0; };
    cat.irreps.push_back(character_irrep(
        "alt+", sign_values(alt, alt)));
    cat.irreps.push_back(character_irrep(
        "alt-", sign_values(alt, [&](int k) { return -alt(k); })));
  }
  const int count = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2;
  for (int j = 1; j <= count; ++j) {
    std::vector<Matrix> mats(order, Matrix::Zero(2, 2));
    for (int k = 0; k < n; ++k) {
      const cdouble w = std::polar(1.0, two_pi * j * k / n);
      mats[k](0, 0) = w;
      mats[k](1, 1) = std::conj(w);
      // reflection n+k stands for s*r^(-k)
      mats[n + k](0, 1) = w;
      mats[n + k](1, 0) = std::conj(w);
    }
    cat.irreps.push_back(make_irrep("rho_" + std::to_string(j), std::move(mats)));
  }
  return cat;
}

std::optional<IrrepCatalog> pauli_style_catalog(const GroupTable& g,
                                                const Multiplier& m) {
  Matrix sx(2, 2), sy(2, 2);
  const cdouble i(0.0, 1.0);
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  std::vector<Matrix> mats(4);
  mats[0] = Matrix::Identity(2, 2);
  mats[1] = sx;
  mats[2] = sy;
  mats[g.mul(1, 2)] = sx * sy / m.omega(1, 2);
  UnitaryRep candidate = make_rep(g, m, mats);
  if (!verify_representation(candidate).ok()) return std::nullopt;
  IrrepCatalog cat{g, m, {}};
  cat.irreps.push_back(make_irrep("pauli", std::move(mats)));
  return cat;
}

}  // namespace

Irrep make_irrep(std::string label, std::vector<Matrix> matrices) {
  Irrep ir;
  ir.label = std::move(label);
  ir.dim = static_cast<int>(matrices[0].rows());
  ir.character.resize(static_cast<Eigen::Index>(matrices.size()));
  for (size_t g = 0; g < matrices.size(); ++g)
    ir.character(static_cast<Eigen::Index>(g)) = matrices[g].trace();
  ir.matrices = std::move(matrices);
  return ir;
}

IrrepCatalog builtin_irreps(const GroupTable& g, const Multiplier& m) {
  if (m.order() != g.order)
    throw std::invalid_argument("builtin_irreps: multiplier size mismatch");

  if (m.trivial) {
    if (auto log = cyclic_logs(g)) return cyclic_catalog(g, m, *log);
    if (is_klein_structure(g)) return klein_catalog(g, m);
    const int n = g.order / 2;
    if (g.order >= 2 && g.order % 2 == 0 &&
        build_dihedral(n).mult == g.mult)
      return dihedral_catalog(g, m, n);
    throw Error(ErrorClass::unsupported,
                "no built-in irrep catalog for this group; supply one");
  }

  if (!is_normalized(g, m))
    throw Error(ErrorClass::unsupported,
                "no built-in catalog for an unnormalized multiplier; "
                "normalize it first");
  if (is_klein_structure(g))
    if (auto cat = pauli_style_catalog(g, m)) return *cat;
  throw Error(ErrorClass::unsupported,
              "no built-in irrep catalog for this (group, multiplier) pair");
}

double great_orthogonality_check(const IrrepCatalog& catalog) {
  const int order = catalog.group.order;
  double worst = 0.0;
  for (size_t mu = 0; mu < catalog.irreps.size(); ++mu) {
    const Irrep& a = catalog.irreps[mu];
    for (size_t nu = 0; nu < catalog.irreps.size(); ++nu) {
      const Irrep& b = catalog.irreps[nu];
      for (int n = 0; n < a.dim; ++n)
        for (int mm = 0; mm < a.dim; ++mm)
          for (int np = 0; np < b.dim; ++np)
            for (int mp = 0; mp < b.dim; ++mp) {
              cdouble sum = 0.0;
              for (int g = 0; g < order; ++g)
                sum += a.matrices[g](n, mm) * std::conj(b.matrices[g](np, mp));
              cdouble expect = 0.0;
              if (mu == nu && n == np && mm == mp)
                expect = static_cast<double>(order) / a.dim;
              worst = std::max(worst, std::abs(sum - expect));
            }
    }
  }
  return worst;
}

}  // namespace qse
