#pragma once

// Finite subgroups of GL_r(Z) with full element tables, and lattices with a
// W-action (transported to sublattices and duals).

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "toral/lattice.hpp"

namespace toral {

struct WGroup {
  int ambient = 0;
  std::vector<IntMat> elems;               // elems[0] = identity
  std::vector<int> gens;                   // indices into elems
  std::vector<std::vector<int>> mult;      // mult[i][j] = index of elems[i]*elems[j]
  std::vector<int> inv;
  int identity = 0;

  int size() const { return int(elems.size()); }
  const IntMat& mat(int i) const { return elems[i]; }

  int order_of(int g) const {
    int n = 1, x = g;
    while (x != identity) {
      x = mult[x][g];
      ++n;
    }
    return n;
  }
};

inline std::shared_ptr<const WGroup> close(const std::vector<IntMat>& generators,
                                           int cap = 48) {
  if (generators.empty()) throw Error("close: no generators");
  int r = generators[0].rows;
  for (const IntMat& g : generators) {
    if (g.rows != r || g.cols != r)
      throw AmbientMismatch("close: generator shapes differ");
    Int d = det(g);
    if (d != 1 && d != -1)
      throw NotUnimodular("close: generator determinant is not a unit");
  }
  auto w = std::make_shared<WGroup>();
  w->ambient = r;
  std::map<IntMat, int> seen;
  w->elems.push_back(IntMat::identity(r));
  seen[w->elems[0]] = 0;
  for (const IntMat& g : generators) {
    auto it = seen.find(g);
    if (it == seen.end()) {
      seen[g] = int(w->elems.size());
      w->gens.push_back(int(w->elems.size()));
      w->elems.push_back(g);
    } else {
      w->gens.push_back(it->second);
    }
  }
  for (size_t i = 0; i < w->elems.size(); ++i) {
    for (int gi : w->gens) {
      IntMat p = w->elems[i] * w->elems[gi];
      if (!seen.count(p)) {
        if (int(w->elems.size()) >= cap)
          throw GroupTooLarge("close: group exceeds the configured cap");
        seen[p] = int(w->elems.size());
        w->elems.push_back(p);
      }
    }
  }
  int n = w->size();
  w->mult.assign(n, std::vector<int>(n, -1));
  w->inv.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMat p = w->elems[i] * w->elems[j];
      auto it = seen.find(p);
      if (it == seen.end()) throw Error("close: closure failure");
      w->mult[i][j] = it->second;
      if (it->second == 0) w->inv[i] = j;
    }
  w->identity = 0;
  return w;
}

inline bool is_invariant(const Lattice& l, const WGroup& w) {
  if (l.ambient != w.ambient)
    throw AmbientMismatch("is_invariant: ambient ranks differ");
  if (l.is_zero()) return true;
  // finite order makes A(g) L <= L equivalent to A(g) L = L
  for (int gi : w.gens)
    if (!solve_cols(l.basis, w.mat(gi) * l.basis)) return false;
  return true;
}

// A lattice together with the W-action written on its own basis.
struct WModule {
  std::shared_ptr<const WGroup> w;
  Lattice lattice;
  std::vector<IntMat> action;  // per element index; unimodular k x k

  int rank() const { return lattice.rank(); }

  const IntMat& act(int g) const { return action[g]; }

  void check() const {
    int n = w->size();
    for (int i = 0; i < n; ++i) {
      Int d = action[i].rows == 0 ? Int(1) : det(action[i]);
      if (action[i].rows > 0 && d != 1 && d != -1)
        throw NotUnimodular("WModule: action matrix is not unimodular");
      for (int j = 0; j < n; ++j)
        if (action[i] * action[j] != action[w->mult[i][j]])
          throw Error("WModule: action is not a homomorphism");
    }
  }
};

// The ambient module Z^r with W acting by its own matrices.
inline WModule ambient_module(std::shared_ptr<const WGroup> w) {
  WModule m;
  m.w = w;
  m.lattice = Lattice::full(w->ambient);
  m.action = w->elems;
  m.check();
  return m;
}

// Action transported to an invariant sublattice: A(g) X = X B(g).
inline WModule restrict_module(const WModule& m, const Lattice& l) {
  if (l.ambient != m.lattice.ambient)
    throw AmbientMismatch("restrict_module: ambient ranks differ");
  auto X = solve_cols(m.lattice.basis, l.basis);
  if (!X) throw NotInvariant("restrict_module: lattice not inside the module");
  WModule r;
  r.w = m.w;
  r.lattice = l;
  r.action.reserve(m.action.size());
  for (size_t g = 0; g < m.action.size(); ++g) {
    auto ax = solve_cols(m.lattice.basis, m.action[g] * l.basis);
    if (!ax) throw NotInvariant("restrict_module: lattice is not invariant");
    auto B = solve_cols(*X, *ax);
    if (!B) throw NotInvariant("restrict_module: lattice is not invariant");
    r.action.push_back(*B);
  }
  r.check();
  return r;
}

// Contragredient module on the abstract dual lattice Z^k.
inline WModule dual_module(const WModule& m) {
  WModule d;
  d.w = m.w;
  d.lattice = Lattice::full(m.rank());
  d.action.reserve(m.action.size());
  for (size_t g = 0; g < m.action.size(); ++g)
    d.action.push_back(m.action[m.w->inv[g]].transpose());
  d.check();
  return d;
}

// Dual presentation of an invariant sublattice: the module Lambda_S on the
// dual of L, plus the comparison map k_S: (dual of ambient) -> Lambda_S given
// by X^t in dual bases.
struct DualPair {
  WModule lambda_s;  // contragredient module on Z^rank(L)
  IntMat k_map;      // rank(L) x r, equivariant for the two dual actions
};

inline DualPair dual_pair(const WModule& ambient, const Lattice& l) {
  DualPair p;
  WModule restricted = restrict_module(ambient, l);
  p.lambda_s = dual_module(restricted);
  auto X = solve_cols(ambient.lattice.basis, l.basis);
  p.k_map = X->transpose();
  return p;
}

// ---------------------------------------------------------------------------
// Module fingerprints against the closed rank <= 2 catalogue.

namespace detail {

// [L : Fix(g) + Anti(g)] for an involution with eigenvalues +1, -1
inline int reflection_seam(const IntMat& g) {
  int k = g.rows;
  IntMat fix = kernel(g - IntMat::identity(k));
  IntMat anti = kernel(g + IntMat::identity(k));
  IntMat both = IntMat::hconcat(fix, anti);
  Int d = det(both);
  return int(Int(abs(d)).get_si());
}

// whether the +1 eigenvector of a reflection generates the hexagonal lattice
// together with its rotation image (norm 1) or an index-3 submodule (norm 3)
inline int hex_reflection_norm(const IntMat& refl, const IntMat& rot3) {
  IntMat fix = kernel(refl - IntMat::identity(2));
  std::vector<Int> f = fix.col(0);
  IntMat pair(2, 2);
  pair.set_col(0, f);
  pair.set_col(1, rot3.mul_vec(f));
  return int(Int(abs(det(pair))).get_si());
}

}  // namespace detail

// Matches M against the rank <= 2 module catalogue by trace/determinant data,
// fixed-sublattice seams of reflections, and hexagonal reflection norms.
// D8 and D12 have outer automorphisms swapping their reflection classes, so
// those tags are resolved per element against the ambient W-matrices.
inline std::string module_fingerprint(const WModule& m) {
  const WGroup& w = *m.w;
  if (m.rank() > 2 || w.size() > 12) return "unrecognized";
  int k = m.rank();
  if (k == 0) return "0";

  if (k == 1) {
    for (const IntMat& g : m.action)
      if (g.at(0, 0) == -1) return "Zt";
    return "Z";
  }
  if (k != 2) return "unrecognized";

  // image of the action
  std::map<IntMat, int> image;
  for (const IntMat& g : m.action) image.emplace(g, 0);
  int isize = int(image.size());

  auto count = [&](auto pred) {
    int c = 0;
    for (const auto& [g, _] : image)
      if (pred(g)) ++c;
    return c;
  };
  auto trace = [](const IntMat& g) { return g.at(0, 0) + g.at(1, 1); };

  if (isize == 1) return "unrecognized";  // trivial rank-2 action: not catalogued

  int rot3 = count([&](const IntMat& g) { return det(g) == 1 && trace(g) == -1; });
  int rot4 = count([&](const IntMat& g) { return det(g) == 1 && trace(g) == 0; });
  int refl = count([&](const IntMat& g) { return det(g) == -1 && trace(g) == 0; });
  bool has_minus = image.count(-IntMat::identity(2)) > 0;

  if (isize == 2) {
    if (has_minus) return "Zt+Zt";
    if (refl == 1) {
      for (const auto& [g, _] : image)
        if (det(g) == -1)
          return detail::reflection_seam(g) == 1 ? "Z+Zt" : "ZW";
    }
    return "unrecognized";
  }
  if (isize == 3 && rot3 == 2) return "Zw";
  if (isize == 4 && has_minus && refl == 2) {
    // Klein four-group: distinguished by the reflection seams
    int seam = 0;
    for (const auto& [g, _] : image)
      if (det(g) == -1) seam = detail::reflection_seam(g);
    return seam == 1 ? "Zt1+Zt2" : "IndZt";
  }
  if (isize == 4 && rot4 == 2) return "Zi";
  if (isize == 6 && rot3 == 2 && refl == 3) {
    IntMat r3;
    for (const auto& [g, _] : image)
      if (det(g) == 1 && trace(g) == -1) { r3 = g; break; }
    for (const auto& [g, _] : image)
      if (det(g) == -1)
        return detail::hex_reflection_norm(g, r3) == 1 ? "Zw'" : "Zw''";
  }
  if (isize == 8 && rot4 == 2 && refl == 4 && w.size() == 8 &&
      w.ambient == 2) {
    // compare reflection seams element-by-element with the ambient action
    bool same = true, swapped = true;
    for (int g = 0; g < w.size(); ++g) {
      if (det(w.mat(g)) != -1) continue;
      int sa = detail::reflection_seam(w.mat(g));
      int sm = detail::reflection_seam(m.act(g));
      if (sa != sm) same = false;
      if (sa == sm) swapped = false;
    }
    if (same) return "B2";
    if (swapped) return "FCC_B2";
    return "unrecognized";
  }
  if (isize == 12 && rot3 == 2 && w.size() == 12 && w.ambient == 2) {
    IntMat r3a, r3m;
    for (int g = 0; g < w.size(); ++g)
      if (det(w.mat(g)) == 1 && trace(w.mat(g)) == -1) {
        r3a = w.mat(g);
        r3m = m.act(g);
        break;
      }
    bool same = true, swapped = true;
    for (int g = 0; g < w.size(); ++g) {
      if (det(w.mat(g)) != -1) continue;
      int na = detail::hex_reflection_norm(w.mat(g), r3a);
      int nm = detail::hex_reflection_norm(m.act(g), r3m);
      if (na != nm) same = false;
      if (na == nm) swapped = false;
    }
    if (same) return "G2";
    if (swapped) return "G2b";
    return "unrecognized";
  }
  return "unrecognized";
}

}  // namespace toral
