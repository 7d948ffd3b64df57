#pragma once

// Sparse integer matrices sized for bar-complex coboundaries, with
// (a) exact kernel-lattice computation by unimodular column elimination and
// (b) Smith-valuation counting mod p^e for torsion extraction without
// coefficient growth.

#include <cstdint>
#include <map>

#include "toral/intmat.hpp"

namespace toral {

struct SparseMat {
  int rows = 0;
  int cols = 0;
  // per column, sorted by row index
  std::vector<std::vector<std::pair<int, Int>>> col;

  SparseMat() = default;
  SparseMat(int r, int c) : rows(r), cols(c), col(c) {}

  size_t nnz() const {
    size_t n = 0;
    for (const auto& c : col) n += c.size();
    return n;
  }

  void sort_columns() {
    for (auto& c : col) {
      std::sort(c.begin(), c.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      // merge duplicates
      std::vector<std::pair<int, Int>> out;
      for (auto& e : c) {
        if (!out.empty() && out.back().first == e.first)
          out.back().second += e.second;
        else
          out.push_back(e);
      }
      c.clear();
      for (auto& e : out)
        if (e.second != 0) c.push_back(std::move(e));
    }
  }

  std::vector<Int> mul_vec(const std::vector<Int>& v) const {
    std::vector<Int> r(rows);
    for (int j = 0; j < cols; ++j) {
      if (v[j] == 0) continue;
      for (const auto& [i, a] : col[j]) r[i] += a * v[j];
    }
    return r;
  }

  IntMat to_dense() const {
    IntMat m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (const auto& [i, a] : col[j]) m.at(i, j) = a;
    return m;
  }
};

// columns of a*b must vanish; cheap structural check for d(d(x)) = 0
inline bool product_is_zero(const SparseMat& a, const SparseMat& b) {
  for (int j = 0; j < b.cols; ++j) {
    std::map<int, Int> acc;
    for (const auto& [k, v] : b.col[j])
      for (const auto& [i, w] : a.col[k]) acc[i] += w * v;
    for (const auto& [i, s] : acc)
      if (s != 0) return false;
  }
  return true;
}

namespace detail {

using SpVec = std::vector<std::pair<int, Int>>;

// dst -= q * src, sorted-merge
inline void sp_axpy(SpVec& dst, const SpVec& src, const Int& q) {
  if (q == 0) return;
  SpVec out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, Int(-q * src[j].second));
      ++j;
    } else {
      Int v = dst[i].second - q * src[j].second;
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

inline const Int* sp_get(const SpVec& v, int row) {
  auto it = std::lower_bound(
      v.begin(), v.end(), row,
      [](const std::pair<int, Int>& e, int r) { return e.first < r; });
  if (it != v.end() && it->first == row) return &it->second;
  return nullptr;
}

}  // namespace detail

// Exact kernel of a sparse matrix: basis of {x : A x = 0} as dense columns.
// Unimodular column elimination, row sweep with per-row gcd reduction; the
// transform is tracked sparsely and only kept for columns that survive.
inline IntMat kernel_sparse(const SparseMat& A) {
  using detail::SpVec;
  int n = A.cols;
  std::vector<SpVec> cols(A.col.begin(), A.col.end());
  std::vector<SpVec> v(n);
  for (int j = 0; j < n; ++j) v[j] = {{j, Int(1)}};
  std::vector<bool> active(n, true);

  // row -> candidate columns (lazily maintained, rechecked on access)
  std::vector<std::vector<int>> row_cols(A.rows);
  for (int j = 0; j < n; ++j)
    for (const auto& [i, _] : cols[j]) row_cols[i].push_back(j);

  auto register_fill = [&](int j, const SpVec& before, const SpVec& after,
                           int from_row) {
    // add rows that appear in `after` beyond `from_row` and were not in `before`
    size_t bi = 0;
    for (const auto& [r, _] : after) {
      if (r <= from_row) continue;
      while (bi < before.size() && before[bi].first < r) ++bi;
      if (bi < before.size() && before[bi].first == r) continue;
      row_cols[r].push_back(j);
    }
  };

  int pivots = 0;
  for (int r = 0; r < A.rows; ++r) {
    auto& cand = row_cols[r];
    while (true) {
      int best = -1;
      const Int* bestp = nullptr;
      for (int j : cand) {
        if (!active[j]) continue;
        const Int* p = detail::sp_get(cols[j], r);
        if (!p) continue;
        if (!bestp || mpz_cmpabs(p->get_mpz_t(), bestp->get_mpz_t()) < 0) {
          best = j;
          bestp = p;
        }
      }
      if (best < 0) break;  // row clean
      bool clean = true;
      for (int j : cand) {
        if (j == best || !active[j]) continue;
        const Int* p = detail::sp_get(cols[j], r);
        if (!p) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), p->get_mpz_t(), bestp->get_mpz_t());
        SpVec before = cols[j];
        detail::sp_axpy(cols[j], cols[best], q);
        detail::sp_axpy(v[j], v[best], q);
        register_fill(j, before, cols[j], r);
        if (detail::sp_get(cols[j], r)) clean = false;
      }
      if (clean) {
        active[best] = false;  // pivot column retires with its transform
        v[best].clear();
        v[best].shrink_to_fit();
        ++pivots;
        break;
      }
    }
    cand.clear();
    cand.shrink_to_fit();
  }

  std::vector<int> kernel_cols;
  for (int j = 0; j < n; ++j)
    if (active[j]) {
      if (!cols[j].empty()) throw Error("kernel_sparse: uneliminated column");
      kernel_cols.push_back(j);
    }
  IntMat k(n, int(kernel_cols.size()));
  for (size_t c = 0; c < kernel_cols.size(); ++c)
    for (const auto& [i, val] : v[kernel_cols[c]]) k.at(i, int(c)) = val;
  return k;
}

// Multiset of p-adic valuations of the nonzero Smith invariant factors of A,
// assuming every invariant factor divides p^(e-1) times a unit (true for bar
// coboundaries: the torsion of the cokernel is killed by |W|). Runs entirely
// mod p^e, so entries never grow. Returns (valuations, pivot count = rank).
inline std::pair<std::vector<int>, int> smith_p_valuations(const SparseMat& A,
                                                           int64_t p, int e) {
  int64_t mod = 1;
  for (int i = 0; i < e; ++i) mod *= p;
  using Col = std::vector<std::pair<int, int64_t>>;
  int n = A.cols;
  std::vector<Col> cols(n);
  for (int j = 0; j < n; ++j)
    for (const auto& [i, val] : A.col[j]) {
      int64_t v = int64_t(mpz_fdiv_ui(val.get_mpz_t(), (unsigned long)mod));
      if (v) cols[j].push_back({i, v});
    }
  std::vector<bool> active(n, true);
  std::vector<int> vals;
  int level = 0;

  auto inv_mod = [](int64_t a, int64_t m) {
    int64_t t = 0, nt = 1, r = m, nr = a % m;
    while (nr) {
      int64_t q = r / nr;
      std::swap(t -= q * nt, nt);
      std::swap(r -= q * nr, nr);
    }
    return t < 0 ? t + m : t;
  };

  while (level < e) {
    // field-style pass: clear all rows that contain a unit entry
    std::vector<std::vector<int>> row_cols(A.rows);
    for (int j = 0; j < n; ++j)
      if (active[j])
        for (const auto& [i, _] : cols[j]) row_cols[i].push_back(j);

    for (int r = 0; r < A.rows; ++r) {
      auto& cand = row_cols[r];
      int piv = -1;
      int64_t pval = 0;
      for (int j : cand) {
        if (!active[j]) continue;
        for (const auto& [i, val] : cols[j])
          if (i == r && val % p != 0) {
            piv = j;
            pval = val;
            break;
          }
        if (piv >= 0) break;
      }
      if (piv < 0) {
        cand.clear();
        continue;
      }
      int64_t pinv = inv_mod(pval, mod);
      Col pivcol = cols[piv];
      for (int j : cand) {
        if (j == piv || !active[j]) continue;
        int64_t entry = 0;
        for (const auto& [i, val] : cols[j])
          if (i == r) { entry = val; break; }
        if (!entry) continue;
        int64_t q = (__int128(entry) * pinv) % mod;
        // col_j -= q * pivcol  (mod `mod`)
        Col out;
        out.reserve(cols[j].size() + pivcol.size());
        size_t a = 0, b = 0;
        const Col& cj = cols[j];
        while (a < cj.size() || b < pivcol.size()) {
          if (b == pivcol.size() ||
              (a < cj.size() && cj[a].first < pivcol[b].first)) {
            out.push_back(cj[a++]);
          } else if (a == cj.size() || pivcol[b].first < cj[a].first) {
            int64_t val = (mod - (__int128(q) * pivcol[b].second) % mod) % mod;
            if (val) {
              out.push_back({pivcol[b].first, val});
              if (pivcol[b].first > r) row_cols[pivcol[b].first].push_back(j);
            }
            ++b;
          } else {
            int64_t val =
                ((cj[a].second - (__int128(q) * pivcol[b].second) % mod) % mod +
                 mod) %
                mod;
            if (val) out.push_back({cj[a].first, val});
            ++a;
            ++b;
          }
        }
        cols[j] = std::move(out);
      }
      active[piv] = false;
      cols[piv].clear();
      cols[piv].shrink_to_fit();
      vals.push_back(level);
      cand.clear();
    }

    // everything left is divisible by p: descend one level
    ++level;
    if (level == e) break;
    mod /= p;
    for (int j = 0; j < n; ++j) {
      if (!active[j]) continue;
      Col out;
      for (auto& [i, val] : cols[j]) {
        if (val % p != 0) throw Error("smith_p_valuations: unit at lower level");
        int64_t v = (val / p) % mod;
        if (v) out.push_back({i, v});
      }
      cols[j] = std::move(out);
    }
  }
  for (int j = 0; j < n; ++j)
    if (active[j] && !cols[j].empty())
      throw Error("smith_p_valuations: invariant factor beyond the bound");
  return {vals, int(vals.size())};
}

}  // namespace toral
