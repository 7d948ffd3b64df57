#pragma once

// Exact integer linear algebra over arbitrary-precision integers:
// Hermite and Smith normal forms, kernels, integral solves, and the
// invariant-factor structure of quotients of lattice pairs.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "toral/errors.hpp"

namespace toral {

using Int = mpz_class;
using Rat = mpq_class;

struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;  // row-major

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}
  IntMat(int r, int c, std::vector<Int> entries)
      : rows(r), cols(c), a(std::move(entries)) {}
  IntMat(int r, int c, std::initializer_list<long> entries) : rows(r), cols(c) {
    a.reserve(entries.size());
    for (long v : entries) a.emplace_back(v);
  }

  Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static IntMat zero(int r, int c) { return IntMat(r, c); }

  bool operator==(const IntMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool operator!=(const IntMat& o) const { return !(*this == o); }

  IntMat transpose() const {
    IntMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMat operator*(const IntMat& o) const {
    IntMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Int& v = at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
      }
    return r;
  }
  IntMat operator+(const IntMat& o) const {
    IntMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  IntMat operator-(const IntMat& o) const {
    IntMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  IntMat operator-() const {
    IntMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = -a[i];
    return r;
  }

  std::vector<Int> mul_vec(const std::vector<Int>& v) const {
    std::vector<Int> r(rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
  }

  std::vector<Int> col(int j) const {
    std::vector<Int> c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
  }
  void set_col(int j, const std::vector<Int>& c) {
    for (int i = 0; i < rows; ++i) at(i, j) = c[i];
  }

  IntMat cols_slice(int j0, int j1) const {
    IntMat r(rows, j1 - j0);
    for (int i = 0; i < rows; ++i)
      for (int j = j0; j < j1; ++j) r.at(i, j - j0) = at(i, j);
    return r;
  }

  static IntMat hconcat(const IntMat& l, const IntMat& r) {
    IntMat m(l.rows, l.cols + r.cols);
    for (int i = 0; i < l.rows; ++i) {
      for (int j = 0; j < l.cols; ++j) m.at(i, j) = l.at(i, j);
      for (int j = 0; j < r.cols; ++j) m.at(i, l.cols + j) = r.at(i, j);
    }
    return m;
  }

  bool is_zero() const {
    for (const Int& v : a)
      if (v != 0) return false;
    return true;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
      if (i) os << "; ";
      for (int j = 0; j < cols; ++j) {
        if (j) os << ",";
        os << at(i, j).get_str();
      }
    }
    os << "]";
    return os.str();
  }

  // lexicographic on (rows, cols, entries); total order usable as a map key
  bool operator<(const IntMat& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != o.a[i]) return a[i] < o.a[i];
    return false;
  }
};

// Fraction-free determinant (Bareiss).
inline Int det(const IntMat& m) {
  if (m.rows != m.cols) throw Error("det: matrix not square");
  int n = m.rows;
  if (n == 0) return 1;
  IntMat b = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (b.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (b.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(b.at(k, j), b.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = b.at(i, j) * b.at(k, k) - b.at(i, k) * b.at(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        b.at(i, j) = t;
      }
    prev = b.at(k, k);
  }
  return sign > 0 ? b.at(n - 1, n - 1) : Int(-b.at(n - 1, n - 1));
}

// Column echelon form by unimodular column operations: E = A*V, pivots at
// strictly increasing rows, one pivot column per pivot row, pivots positive,
// non-pivot columns zero. Foundation for HNF, kernels and integral solves.
struct ColEchelon {
  IntMat e;                     // echelon form, same shape as input
  IntMat v;                     // unimodular, input * v == e
  std::vector<int> pivot_rows;  // row of the pivot of column i, i < rank
  int rank = 0;
};

inline ColEchelon col_echelon(const IntMat& input, bool with_transform = true) {
  ColEchelon r;
  r.e = input;
  if (with_transform) r.v = IntMat::identity(input.cols);
  IntMat& e = r.e;
  IntMat& v = r.v;
  int n = input.cols;
  auto col_swap = [&](int j0, int j1) {
    if (j0 == j1) return;
    for (int i = 0; i < e.rows; ++i) std::swap(e.at(i, j0), e.at(i, j1));
    if (with_transform)
      for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, j0), v.at(i, j1));
  };
  auto col_axpy = [&](int jdst, int jsrc, const Int& q) {  // col_dst -= q*col_src
    if (q == 0) return;
    for (int i = 0; i < e.rows; ++i)
      if (e.at(i, jsrc) != 0) e.at(i, jdst) -= q * e.at(i, jsrc);
    if (with_transform)
      for (int i = 0; i < v.rows; ++i)
        if (v.at(i, jsrc) != 0) v.at(i, jdst) -= q * v.at(i, jsrc);
  };
  auto col_negate = [&](int j) {
    for (int i = 0; i < e.rows; ++i) e.at(i, j) = -e.at(i, j);
    if (with_transform)
      for (int i = 0; i < v.rows; ++i) v.at(i, j) = -v.at(i, j);
  };

  int piv = 0;
  for (int row = 0; row < input.rows && piv < n; ++row) {
    // gcd-reduce all columns >= piv at this row until at most one nonzero
    while (true) {
      int jmin = -1;
      for (int j = piv; j < n; ++j) {
        if (e.at(row, j) == 0) continue;
        if (jmin < 0 || mpz_cmpabs(e.at(row, j).get_mpz_t(),
                               e.at(row, jmin).get_mpz_t()) < 0)
          jmin = j;
      }
      if (jmin < 0) break;  // row is zero beyond piv
      col_swap(piv, jmin);
      bool clean = true;
      for (int j = piv + 1; j < n; ++j) {
        if (e.at(row, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), e.at(row, j).get_mpz_t(),
                   e.at(row, piv).get_mpz_t());
        col_axpy(j, piv, q);
        if (e.at(row, j) != 0) clean = false;
      }
      if (clean) {
        if (e.at(row, piv) < 0) col_negate(piv);
        r.pivot_rows.push_back(row);
        ++piv;
        break;
      }
    }
  }
  r.rank = piv;
  return r;
}

// Canonical column-style Hermite normal form of the column lattice of A:
// independent columns, pivots positive at strictly increasing rows, entries
// left of a pivot in its row reduced into [0, pivot). Zero columns dropped,
// so equal lattices have identical representations.
inline IntMat col_hnf(const IntMat& A) {
  ColEchelon ce = col_echelon(A, false);
  IntMat h = ce.e.cols_slice(0, ce.rank);
  for (int i = 0; i < ce.rank; ++i) {
    int prow = ce.pivot_rows[i];
    const Int& p = h.at(prow, i);
    for (int j = 0; j < i; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(prow, j).get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (int k = prow; k < h.rows; ++k)
        if (h.at(k, i) != 0) h.at(k, j) -= q * h.at(k, i);
    }
  }
  return h;
}

inline IntMat row_hnf(const IntMat& A) { return col_hnf(A.transpose()).transpose(); }

// Basis of the saturated kernel lattice {x : A x = 0}.
inline IntMat kernel(const IntMat& A) {
  ColEchelon ce = col_echelon(A);
  return ce.v.cols_slice(ce.rank, A.cols);
}

// Integral solve A*X = B (per column); nullopt when some column has no
// integral solution. When A has dependent columns an arbitrary preimage is
// returned.
inline std::optional<IntMat> solve_cols(const IntMat& A, const IntMat& B) {
  ColEchelon ce = col_echelon(A);
  IntMat X(A.cols, B.cols);
  for (int c = 0; c < B.cols; ++c) {
    std::vector<Int> b = B.col(c);
    std::vector<Int> y(ce.rank);
    for (int i = 0; i < ce.rank; ++i) {
      int prow = ce.pivot_rows[i];
      if (b[prow] == 0) continue;
      Int q, rem;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), b[prow].get_mpz_t(),
                  ce.e.at(prow, i).get_mpz_t());
      if (rem != 0) return std::nullopt;
      y[i] = q;
      for (int k = prow; k < A.rows; ++k)
        if (ce.e.at(k, i) != 0) b[k] -= q * ce.e.at(k, i);
    }
    for (int k = 0; k < A.rows; ++k)
      if (b[k] != 0) return std::nullopt;
    for (int i = 0; i < A.cols; ++i) {
      Int s = 0;
      for (int j = 0; j < ce.rank; ++j)
        if (ce.v.at(i, j) != 0 && y[j] != 0) s += ce.v.at(i, j) * y[j];
      X.at(i, c) = s;
    }
  }
  return X;
}

inline std::optional<std::vector<Int>> solve_vec(const IntMat& A,
                                                 const std::vector<Int>& b) {
  IntMat B(A.rows, 1);
  for (int i = 0; i < A.rows; ++i) B.at(i, 0) = b[i];
  auto X = solve_cols(A, B);
  if (!X) return std::nullopt;
  return X->col(0);
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithData {
  IntMat d;  // diagonal, nonnegative, d1 | d2 | ... followed by zeros
  IntMat u;  // unimodular, u * input * v == d
  IntMat v;
  std::vector<Int> diagonal() const {
    std::vector<Int> r;
    for (int i = 0; i < std::min(d.rows, d.cols); ++i) r.push_back(d.at(i, i));
    return r;
  }
};

inline SmithData snf(const IntMat& A) {
  SmithData s;
  s.d = A;
  s.u = IntMat::identity(A.rows);
  s.v = IntMat::identity(A.cols);
  IntMat& d = s.d;
  IntMat& u = s.u;
  IntMat& v = s.v;
  int m = A.rows, n = A.cols;

  auto row_swap = [&](int i0, int i1) {
    if (i0 == i1) return;
    for (int j = 0; j < n; ++j) std::swap(d.at(i0, j), d.at(i1, j));
    for (int j = 0; j < m; ++j) std::swap(u.at(i0, j), u.at(i1, j));
  };
  auto col_swap = [&](int j0, int j1) {
    if (j0 == j1) return;
    for (int i = 0; i < m; ++i) std::swap(d.at(i, j0), d.at(i, j1));
    for (int i = 0; i < n; ++i) std::swap(v.at(i, j0), v.at(i, j1));
  };
  auto row_axpy = [&](int idst, int isrc, const Int& q) {  // row_dst -= q*row_src
    if (q == 0) return;
    for (int j = 0; j < n; ++j)
      if (d.at(isrc, j) != 0) d.at(idst, j) -= q * d.at(isrc, j);
    for (int j = 0; j < m; ++j)
      if (u.at(isrc, j) != 0) u.at(idst, j) -= q * u.at(isrc, j);
  };
  auto col_axpy = [&](int jdst, int jsrc, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < m; ++i)
      if (d.at(i, jsrc) != 0) d.at(i, jdst) -= q * d.at(i, jsrc);
    for (int i = 0; i < n; ++i)
      if (v.at(i, jsrc) != 0) v.at(i, jdst) -= q * v.at(i, jsrc);
  };
  auto row_negate = [&](int i) {
    for (int j = 0; j < n; ++j) d.at(i, j) = -d.at(i, j);
    for (int j = 0; j < m; ++j) u.at(i, j) = -u.at(i, j);
  };

  int k = std::min(m, n);
  for (int t = 0; t < k; ++t) {
    // minimal-absolute-value pivot bounds coefficient growth
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        if (d.at(i, j) == 0) continue;
        if (pi < 0 || mpz_cmpabs(d.at(i, j).get_mpz_t(), d.at(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    while (true) {
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
        row_axpy(i, t, q);
        if (d.at(i, t) != 0) {
          row_swap(t, i);  // remainder is smaller; continue Euclid
          clean = false;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
        col_axpy(j, t, q);
        if (d.at(t, j) != 0) {
          col_swap(t, j);
          clean = false;
        }
      }
      if (clean) break;
    }
    if (d.at(t, t) < 0) row_negate(t);
  }

  // repair the divisibility chain
  bool changed = true;
  while (changed) {
    changed = false;
    for (int t = 0; t + 1 < k; ++t) {
      const Int& a = d.at(t, t);
      const Int& b = d.at(t + 1, t + 1);
      if (a == 0 && b != 0) {  // zeros go last
        row_swap(t, t + 1);
        col_swap(t, t + 1);
        changed = true;
        continue;
      }
      if (a == 0 || b == 0) continue;
      if (b % a == 0) continue;
      // fold the pair to (gcd, lcm) by one column add and a local re-reduction
      col_axpy(t, t + 1, Int(-1));  // col_t += col_{t+1}: puts b below a
      while (true) {
        bool clean = true;
        for (int i = t + 1; i < m; ++i) {
          if (d.at(i, t) == 0) continue;
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
          row_axpy(i, t, q);
          if (d.at(i, t) != 0) {
            row_swap(t, i);
            clean = false;
          }
        }
        for (int j = t + 1; j < n; ++j) {
          if (d.at(t, j) == 0) continue;
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
          col_axpy(j, t, q);
          if (d.at(t, j) != 0) {
            col_swap(t, j);
            clean = false;
          }
        }
        if (clean) break;
      }
      if (d.at(t, t) < 0) row_negate(t);
      if (d.at(t + 1, t + 1) < 0) row_negate(t + 1);
      changed = true;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups in invariant-factor form

struct FinAb {
  long free_rank = 0;
  std::vector<Int> torsion;  // each >= 2, divisibility chain

  bool operator==(const FinAb& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const FinAb& o) const { return !(*this == o); }

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }

  std::optional<Int> order() const {
    if (free_rank > 0) return std::nullopt;
    Int n = 1;
    for (const Int& t : torsion) n *= t;
    return n;
  }

  // paper-style compact name: "0", "2", "2^4", "3", "Z", "Z+2", "2.4"
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
      if (!first) os << "+";
      first = false;
    };
    if (free_rank == 1) { sep(); os << "Z"; }
    else if (free_rank > 1) { sep(); os << "Z^" << free_rank; }
    if (!torsion.empty()) {
      bool same = true;
      for (const Int& t : torsion) same = same && (t == torsion[0]);
      sep();
      if (same && torsion.size() > 1)
        os << torsion[0].get_str() << "^" << torsion.size();
      else {
        for (size_t i = 0; i < torsion.size(); ++i) {
          if (i) os << ".";
          os << torsion[i].get_str();
        }
      }
    }
    if (first) os << "0";
    return os.str();
  }
};

inline FinAb finab_from_diagonal(const std::vector<Int>& diag, int ambient_rank) {
  FinAb g;
  int nonzero = 0;
  for (const Int& d : diag) {
    if (d == 0) continue;
    ++nonzero;
    if (d >= 2) g.torsion.push_back(d);
  }
  g.free_rank = ambient_rank - nonzero;
  return g;
}

// Quotient lattice(B)/lattice(A) with projection data: coordinates of a
// vector of lattice(B) in the invariant-factor presentation.
struct QuotientPresentation {
  FinAb group;
  IntMat b;        // ambient basis
  IntMat u;        // from snf of the inclusion matrix X (B*X = A), u*X*v = D
  IntMat u_inv;
  std::vector<Int> diag;        // full diagonal of D (length cols(B))
  std::vector<int> coord_pos;   // positions with d != 1, in group order:
                                // torsion entries first, then free

  // generators of the quotient as vectors in the ambient Z^r
  std::vector<std::vector<Int>> generators() const {
    std::vector<std::vector<Int>> gens;
    for (int p : coord_pos) gens.push_back(b.mul_vec(u_inv.col(p)));
    return gens;
  }

  // coordinates of [y] for y in lattice(B); throws when y is outside
  std::vector<Int> project(const std::vector<Int>& y) const {
    auto c = solve_vec(b, y);
    if (!c) throw NotContained("project: vector not in the ambient lattice");
    std::vector<Int> w = u.mul_vec(*c);
    std::vector<Int> out;
    for (int p : coord_pos) {
      if (diag[p] == 0)
        out.push_back(w[p]);
      else {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), w[p].get_mpz_t(), diag[p].get_mpz_t());
        out.push_back(r);
      }
    }
    return out;
  }
};

inline QuotientPresentation quotient_presentation(const IntMat& sub_basis,
                                                  const IntMat& ambient_basis) {
  auto X = solve_cols(ambient_basis, sub_basis);
  if (!X)
    throw NotASublattice("quotient: first lattice is not inside the second");
  SmithData s = snf(*X);
  QuotientPresentation q;
  q.b = ambient_basis;
  q.u = s.u;
  auto uinv = solve_cols(s.u, IntMat::identity(s.u.rows));
  q.u_inv = *uinv;  // unimodular, always solvable
  q.diag.assign(size_t(ambient_basis.cols), Int(0));
  auto d = s.diagonal();
  for (size_t i = 0; i < d.size(); ++i) q.diag[i] = d[i];
  for (size_t i = 0; i < q.diag.size(); ++i)
    if (q.diag[i] >= 2) q.coord_pos.push_back(int(i));
  for (size_t i = 0; i < q.diag.size(); ++i)
    if (q.diag[i] == 0) q.coord_pos.push_back(int(i));
  q.group = finab_from_diagonal(q.diag, ambient_basis.cols);
  return q;
}

// invariant factors and free rank of lattice(B)/lattice(A); A must be inside B
inline FinAb quotient(const IntMat& sub_basis, const IntMat& ambient_basis) {
  return quotient_presentation(sub_basis, ambient_basis).group;
}

}  // namespace toral
