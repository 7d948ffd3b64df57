#pragma once

// Sublattices of Z^r as immutable values in canonical Hermite form:
// sums, intersections, index, saturation, cofreeness, the shortest-vector
// statistic mu, and dual presentations of inclusions.

#include <functional>
#include <optional>

#include "toral/intmat.hpp"

namespace toral {

struct Lattice {
  int ambient = 0;
  IntMat basis;  // canonical column HNF; cols == rank; no zero columns

  Lattice() = default;
  explicit Lattice(int ambient_rank)
      : ambient(ambient_rank), basis(ambient_rank, 0) {}
  Lattice(int ambient_rank, const IntMat& generators)
      : ambient(ambient_rank), basis(col_hnf(generators)) {}

  static Lattice full(int r) { return Lattice(r, IntMat::identity(r)); }
  static Lattice zero(int r) { return Lattice(r); }
  static Lattice span(int r, std::initializer_list<std::vector<long>> gens) {
    IntMat g(r, int(gens.size()));
    int j = 0;
    for (const auto& c : gens) {
      for (int i = 0; i < r; ++i) g.at(i, j) = Int(c[i]);
      ++j;
    }
    return Lattice(r, g);
  }

  int rank() const { return basis.cols; }
  bool is_zero() const { return rank() == 0; }

  bool operator==(const Lattice& o) const {
    return ambient == o.ambient && basis == o.basis;
  }
  bool operator!=(const Lattice& o) const { return !(*this == o); }
  bool operator<(const Lattice& o) const {
    if (ambient != o.ambient) return ambient < o.ambient;
    return basis < o.basis;
  }

  bool contains(const Lattice& sub) const {
    if (sub.ambient != ambient) throw AmbientMismatch("contains: ambient ranks differ");
    if (sub.is_zero()) return true;
    return solve_cols(basis, sub.basis).has_value();
  }
  bool contains_vec(const std::vector<Int>& v) const {
    return solve_vec(basis, v).has_value();
  }

  Lattice scaled(const Int& c) const {
    IntMat b = basis;
    for (Int& x : b.a) x *= c;
    Lattice l;
    l.ambient = ambient;
    l.basis = b;  // scaling preserves HNF shape up to pivot positivity
    if (c < 0) l.basis = col_hnf(b);
    return l;
  }

  std::string str() const { return basis.str(); }
};

inline Lattice sum(const Lattice& l1, const Lattice& l2) {
  if (l1.ambient != l2.ambient) throw AmbientMismatch("sum: ambient ranks differ");
  return Lattice(l1.ambient, IntMat::hconcat(l1.basis, l2.basis));
}

inline Lattice intersect(const Lattice& l1, const Lattice& l2) {
  if (l1.ambient != l2.ambient)
    throw AmbientMismatch("intersect: ambient ranks differ");
  if (l1.is_zero() || l2.is_zero()) return Lattice::zero(l1.ambient);
  // solutions of B1 x = B2 y; the intersection is B1 * (x-block of the kernel)
  IntMat stacked = IntMat::hconcat(l1.basis, -l2.basis);
  IntMat k = kernel(stacked);
  IntMat xpart(l1.rank(), k.cols);
  for (int i = 0; i < l1.rank(); ++i)
    for (int j = 0; j < k.cols; ++j) xpart.at(i, j) = k.at(i, j);
  return Lattice(l1.ambient, l1.basis * xpart);
}

// [sup : sub]; nullopt means infinite (rank drop)
inline std::optional<Int> index(const Lattice& sub, const Lattice& sup) {
  if (sub.ambient != sup.ambient)
    throw AmbientMismatch("index: ambient ranks differ");
  auto X = solve_cols(sup.basis, sub.basis);
  if (!X) throw NotContained("index: lattice is not contained in the second");
  if (sub.rank() < sup.rank()) return std::nullopt;
  Int d = det(*X);
  return abs(d);
}

inline bool is_cofree(const Lattice& sub, const Lattice& sup) {
  if (sub.ambient != sup.ambient)
    throw AmbientMismatch("is_cofree: ambient ranks differ");
  if (!sup.contains(sub)) throw NotContained("is_cofree: not a sublattice");
  if (sub.is_zero()) return true;
  return quotient(sub.basis, sup.basis).torsion.empty();
}

inline Int max_norm(const std::vector<Int>& v) {
  Int m = 0;
  for (const Int& x : v) {
    Int a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

namespace detail {

// Lagrange reduction of a rank-2 basis (Euclidean norm), exact arithmetic.
inline void gauss_reduce(std::vector<Int>& b1, std::vector<Int>& b2) {
  auto dot = [](const std::vector<Int>& x, const std::vector<Int>& y) {
    Int s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  while (true) {
    if (dot(b1, b1) > dot(b2, b2)) std::swap(b1, b2);
    Int n1 = dot(b1, b1);
    if (n1 == 0) return;
    Int t = dot(b1, b2);
    // q = round(t / n1)
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), n1.get_mpz_t());
    if (2 * r > n1) q += 1;
    if (q == 0) return;
    for (size_t i = 0; i < b1.size(); ++i) b2[i] -= q * b1[i];
  }
}

}  // namespace detail

namespace detail {

// adjugate by cofactor expansion; k is small (<= 4 in practice)
inline IntMat adjugate(const IntMat& m) {
  int n = m.rows;
  if (n == 1) return IntMat::identity(1);
  IntMat adj(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMat minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(rr, cc) = m.at(r, c);
          ++cc;
        }
        ++rr;
      }
      Int d = det(minor);
      adj.at(j, i) = ((i + j) % 2 == 0) ? d : Int(-d);
    }
  return adj;
}

}  // namespace detail

// Exact shortest nonzero vector in the max norm. Any v with |v|_inf <= M has
// coefficients c = adj(Gram) B^t v / det(Gram), so the search box with radii
// sum_j |adj(Gram) B^t|_ij * M / det(Gram) is provably exhaustive. At rank 2
// the basis is Lagrange-reduced first so the box stays tiny.
inline Int mu(const Lattice& l) {
  if (l.is_zero()) throw ZeroLattice("mu of the zero lattice");
  int k = l.rank();
  std::vector<std::vector<Int>> b;
  for (int j = 0; j < k; ++j) b.push_back(l.basis.col(j));
  if (k == 1) return max_norm(b[0]);
  if (k == 2) detail::gauss_reduce(b[0], b[1]);

  Int best = max_norm(b[0]);
  for (int j = 1; j < k; ++j) best = std::min(best, max_norm(b[j]));

  IntMat bm(l.ambient, k);
  for (int j = 0; j < k; ++j) bm.set_col(j, b[j]);
  IntMat gram = bm.transpose() * bm;
  Int gdet = det(gram);
  IntMat coeff = detail::adjugate(gram) * bm.transpose();  // k x ambient
  std::vector<long> radius(k);
  for (int i = 0; i < k; ++i) {
    Int s = 0;
    for (int j = 0; j < l.ambient; ++j) s += abs(coeff.at(i, j));
    Int bound = (s * best) / gdet;
    if (bound > 20000000) throw Error("mu: coefficient box too large");
    radius[i] = bound.get_si();
  }

  std::vector<long> c(k, 0);
  std::vector<Int> acc(l.ambient);
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      bool all0 = true;
      for (long x : c)
        if (x) { all0 = false; break; }
      if (all0) return;
      for (int t = 0; t < l.ambient; ++t) {
        acc[t] = 0;
        for (int j = 0; j < k; ++j)
          if (c[j]) acc[t] += Int(c[j]) * b[j][t];
      }
      Int n = max_norm(acc);
      if (n != 0 && n < best) best = n;
      return;
    }
    for (long x = -radius[i]; x <= radius[i]; ++x) {
      c[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

// saturation: the largest sublattice of Z^r with the same rational span
inline Lattice saturate(const Lattice& l) {
  if (l.is_zero() || l.rank() == l.ambient) {
    if (l.rank() == l.ambient) return Lattice::full(l.ambient);
    return l;
  }
  // x is in the saturation iff x is orthogonal to everything orthogonal to L
  IntMat orth = kernel(l.basis.transpose());     // ambient x (ambient-rank)
  IntMat sat = kernel(orth.transpose());         // ambient x rank
  return Lattice(l.ambient, sat);
}

// The inclusion matrix X with sup.basis * X = sub.basis, and its transpose,
// which presents the dual map (dual of sup) -> (dual of sub) in dual bases.
struct InclusionPresentation {
  IntMat x;   // rank(sup) x rank(sub)
  IntMat xt;  // the dual map
};

inline InclusionPresentation dual_presentation(const Lattice& sup,
                                               const Lattice& sub) {
  if (sub.ambient != sup.ambient)
    throw AmbientMismatch("dual_presentation: ambient ranks differ");
  auto X = solve_cols(sup.basis, sub.basis);
  if (!X) throw NotContained("dual_presentation: not a sublattice");
  InclusionPresentation p;
  p.x = *X;
  p.xt = X->transpose();
  return p;
}

}  // namespace toral
