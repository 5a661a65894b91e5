#include "qse/group.hpp"

#include <algorithm>
#include <sstream>

namespace qse {

namespace {

std::string default_name(int g) { return "g" + std::to_string(g); }

std::string power_name(const std::string& base, int k) {
  if (k == 0) return "e";
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

std::string reflection_name(int k) {
  if (k < 26) return std::string("s_") + static_cast<char>('A' + k);
  return "s_" + std::to_string(k);
}

}  // namespace

std::string GroupValidation::summary() const {
  std::ostringstream out;
  auto line = [&](const char* label, const GroupCheck& c) {
    out << label << ": " << (c.ok ? "pass" : "FAIL");
    if (!c.ok) out << " (" << c.witness << ")";
    out << "\n";
  };
  line("identity", identity);
  line("inverses", inverses);
  line("associativity", associativity);
  line("latin square", latin_square);
  return out.str();
}

GroupTable build_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("build_cyclic: order must be >= 1");
  GroupTable t;
  t.order = n;
  t.mult.assign(n, std::vector<int>(n));
  t.inverse.resize(n);
  t.names.resize(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) t.mult[r][c] = (r + c) % n;
    t.inverse[r] = (n - r) % n;
    t.names[r] = power_name("g", r);
  }
  return t;
}

GroupTable build_klein_four() {
  GroupTable t;
  t.order = 4;
  // e, x, y, z with xy = z and every element an involution.
  t.mult = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  t.inverse = {0, 1, 2, 3};
  t.names = {"e", "x", "y", "z"};
  return t;
}

GroupTable build_dihedral(int n) {
  if (n < 1) throw std::invalid_argument("build_dihedral: order must be >= 1");
  GroupTable t;
  t.order = 2 * n;
  t.mult.assign(2 * n, std::vector<int>(2 * n));
  t.inverse.resize(2 * n);
  t.names.resize(2 * n);
  auto mod = [n](int k) { return ((k % n) + n) % n; };
  // Reflection index n+k stands for s*r^(-k).
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      t.mult[a][b] = mod(a + b);
      t.mult[a][n + b] = n + mod(a + b);
      t.mult[n + a][b] = n + mod(a - b);
      t.mult[n + a][n + b] = mod(a - b);
    }
  }
  for (int a = 0; a < n; ++a) {
    t.inverse[a] = mod(-a);
    t.inverse[n + a] = n + a;
    t.names[a] = power_name("r", a);
    t.names[n + a] = reflection_name(a);
  }
  return t;
}

GroupTable build_direct_product(const GroupTable& a, const GroupTable& b) {
  GroupTable t;
  const int na = a.order, nb = b.order;
  t.order = na * nb;
  t.mult.assign(t.order, std::vector<int>(t.order));
  t.inverse.resize(t.order);
  t.names.resize(t.order);
  auto idx = [nb](int i, int j) { return i * nb + j; };
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      const int g = idx(i, j);
      t.inverse[g] = idx(a.inverse[i], b.inverse[j]);
      t.names[g] = "(" + a.names[i] + "," + b.names[j] + ")";
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l)
          t.mult[g][idx(k, l)] = idx(a.mult[i][k], b.mult[j][l]);
    }
  }
  return t;
}

GroupTable group_from_table(std::vector<std::vector<int>> mult,
                            std::vector<std::string> names) {
  GroupTable t;
  t.order = static_cast<int>(mult.size());
  if (t.order == 0) throw Error(ErrorClass::schema, "group table is empty");
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != t.order)
      throw Error(ErrorClass::schema, "group table is not square");
    for (int v : row)
      if (v < 0 || v >= t.order)
        throw Error(ErrorClass::schema, "group table entry out of range");
  }
  t.mult = std::move(mult);
  t.inverse.assign(t.order, -1);
  for (int g = 0; g < t.order; ++g) {
    for (int h = 0; h < t.order; ++h) {
      if (t.mult[g][h] == 0 && t.mult[h][g] == 0) {
        t.inverse[g] = h;
        break;
      }
    }
    if (t.inverse[g] < 0)
      throw Error(ErrorClass::schema,
                  "group table has no two-sided inverse for element " +
                      std::to_string(g));
  }
  if (names.empty()) {
    t.names.resize(t.order);
    for (int g = 0; g < t.order; ++g) t.names[g] = default_name(g);
    t.names[0] = "e";
  } else {
    if (static_cast<int>(names.size()) != t.order)
      throw Error(ErrorClass::schema, "group names length mismatch");
    t.names = std::move(names);
  }
  const GroupValidation v = validate_group_table(t);
  if (!v.ok())
    throw Error(ErrorClass::schema, "invalid group table\n" + v.summary());
  return t;
}

GroupValidation validate_group_table(const GroupTable& t) {
  GroupValidation v;
  const int n = t.order;
  std::ostringstream w;

  if (n < 1 || static_cast<int>(t.mult.size()) != n ||
      static_cast<int>(t.inverse.size()) != n || t.identity != 0) {
    v.identity = {false, "malformed table dimensions or identity index"};
    return v;
  }

  for (int g = 0; g < n && v.identity.ok; ++g) {
    if (t.mult[0][g] != g || t.mult[g][0] != g) {
      w << "mult[e][" << g << "]=" << t.mult[0][g] << ", mult[" << g
        << "][e]=" << t.mult[g][0];
      v.identity = {false, w.str()};
    }
  }

  for (int g = 0; g < n && v.inverses.ok; ++g) {
    const int gi = t.inverse[g];
    if (gi < 0 || gi >= n || t.mult[g][gi] != 0 || t.mult[gi][g] != 0) {
      w.str("");
      w << "element " << g << " with claimed inverse " << gi;
      v.inverses = {false, w.str()};
    }
  }

  for (int a = 0; a < n && v.associativity.ok; ++a)
    for (int b = 0; b < n && v.associativity.ok; ++b)
      for (int c = 0; c < n; ++c)
        if (t.mult[t.mult[a][b]][c] != t.mult[a][t.mult[b][c]]) {
          w.str("");
          w << "(a,b,c)=(" << a << "," << b << "," << c << ")";
          v.associativity = {false, w.str()};
          break;
        }

  for (int r = 0; r < n && v.latin_square.ok; ++r) {
    std::vector<bool> row(n, false), col(n, false);
    for (int c = 0; c < n; ++c) {
      if (row[t.mult[r][c]]) {
        w.str("");
        w << "row " << r << " repeats element " << t.mult[r][c];
        v.latin_square = {false, w.str()};
        break;
      }
      row[t.mult[r][c]] = true;
      if (col[t.mult[c][r]]) {
        w.str("");
        w << "column " << r << " repeats element " << t.mult[c][r];
        v.latin_square = {false, w.str()};
        break;
      }
      col[t.mult[c][r]] = true;
    }
  }

  return v;
}

}  // namespace qse
