#pragma once

// Integral group cohomology H^i(W; Lambda) for i <= 3 via the inhomogeneous
// bar complex and Smith normal form, with representative cocycles, induced
// maps, restriction to subgroups, and the degree-shift presentation of
// H^i(W; T/S).
//
// The right action in the coboundary formulas is m^v := A(v^{-1}) m, which
// is asserted against the multiplication table at construction. Group
// structure is extracted without coefficient growth: ranks of the
// coboundaries follow from finiteness of H^i (checked, not assumed), and
// torsion comes from Smith valuations mod p^e for the primes p | |W|.

#include <cassert>
#include <numeric>

#include "toral/sparse.hpp"
#include "toral/wgroup.hpp"

namespace toral {

struct CochainComplex {
  WModule module;
  int max_degree = 4;  // delta[i]: C^i -> C^{i+1} for i < max_degree
  std::vector<size_t> dims;
  std::vector<SparseMat> delta;

  int w() const { return module.w->size(); }
  int k() const { return module.rank(); }
  size_t tuples(int i) const {
    size_t t = 1;
    for (int j = 0; j < i; ++j) t *= size_t(w());
    return t;
  }
};

inline CochainComplex bar_complex(const WModule& m, int max_degree = 4,
                                  size_t budget = 300000) {
  const WGroup& w = *m.w;
  int wn = w.size();
  int k = m.rank();
  {
    size_t top = 1;
    for (int i = 0; i < max_degree; ++i) top *= size_t(wn);
    if (top * size_t(std::max(k, 1)) > budget)
      throw BudgetExceeded("bar_complex: complex exceeds the memory budget");
  }
  // right-action compatibility: A(w^-1) A(v^-1) = A((vw)^-1)
  for (int v = 0; v < wn; ++v)
    for (int g = 0; g < wn; ++g)
      if (m.act(w.inv[g]) * m.act(w.inv[v]) != m.act(w.inv[w.mult[v][g]]))
        throw Error("bar_complex: action convention violated");

  CochainComplex c;
  c.module = m;
  c.max_degree = max_degree;
  c.dims.resize(max_degree + 1);
  for (int i = 0; i <= max_degree; ++i) c.dims[i] = c.tuples(i) * size_t(k);
  c.delta.resize(max_degree);

  // (delta f)(g_1..g_{i+1}) = f(g_1..g_i)^{g_{i+1}}
  //   + sum_{l=1..i} (-1)^{i+1-l} f(g_1,..,g_l g_{l+1},..,g_{i+1})
  //   + (-1)^{i+1} f(g_2..g_{i+1})
  for (int i = 0; i < max_degree; ++i) {
    SparseMat d(int(c.dims[i + 1]), int(c.dims[i]));
    size_t src_tuples = c.tuples(i);
    size_t stride_top = src_tuples;  // weight of component i+1 in target tuples
    std::vector<int> s(i);
    for (size_t si = 0; si < src_tuples; ++si) {
      size_t tmp = si;
      for (int l = 0; l < i; ++l) {
        s[l] = int(tmp % wn);
        tmp /= wn;
      }
      for (int j = 0; j < k; ++j) {
        auto& column = d.col[si * k + j];
        // action term: target (s, g)
        for (int g = 0; g < wn; ++g) {
          const IntMat& a = m.act(w.inv[g]);
          size_t ti = si + stride_top * size_t(g);
          for (int l = 0; l < k; ++l)
            if (a.at(l, j) != 0)
              column.emplace_back(int(ti * k + l), a.at(l, j));
        }
        // merge terms at position l (0-based l = 0..i-1), sign (-1)^{i-l}
        for (int l = 0; l < i; ++l) {
          int sign = ((i - l) % 2 == 0) ? 1 : -1;
          for (int a = 0; a < wn; ++a) {
            int b = w.mult[w.inv[a]][s[l]];  // a * b = s_l
            // target: s with s_l replaced by (a, b)
            size_t ti = 0, weight = 1;
            for (int t = 0; t < l; ++t) {
              ti += size_t(s[t]) * weight;
              weight *= wn;
            }
            ti += size_t(a) * weight;
            weight *= wn;
            ti += size_t(b) * weight;
            weight *= wn;
            for (int t = l + 1; t < i; ++t) {
              ti += size_t(s[t]) * weight;
              weight *= wn;
            }
            column.emplace_back(int(ti * k + j), Int(sign));
          }
        }
        // leading term: target (a, s), sign (-1)^{i+1}
        int sign = ((i + 1) % 2 == 0) ? 1 : -1;
        for (int a = 0; a < wn; ++a) {
          size_t ti = size_t(a) + size_t(wn) * si;
          column.emplace_back(int(ti * k + j), Int(sign));
        }
      }
    }
    d.sort_columns();
    c.delta[i] = std::move(d);
  }
  for (int i = 0; i + 1 < max_degree; ++i)
    if (!product_is_zero(c.delta[i + 1], c.delta[i]))
      throw Error("bar_complex: delta o delta != 0");
  return c;
}

// ---------------------------------------------------------------------------

struct CohomologyGroup {
  int degree = 0;
  FinAb group;

  // representative data; absent for large complexes with trivial group
  bool has_reps = false;
  std::vector<std::vector<Int>> reps;  // one cocycle per generator, torsion
                                       // generators first then free
  std::vector<Int> orders;             // torsion order per generator (0 = free)

  // projection internals
  IntMat kernel_basis;  // n_i x z
  IntMat gram;          // z x z, kernel^t * kernel
  ColEchelon gram_ech;
  IntMat u_snf;         // from snf of the image-in-kernel-coordinates matrix
  std::vector<Int> diag_full;  // length z

  bool trivial() const { return group.is_trivial(); }

  // coordinates of a cocycle in the invariant-factor presentation
  std::vector<Int> project(const std::vector<Int>& cocycle) const {
    if (trivial()) return {};
    if (!has_reps) throw Error("cohomology: projection data not built");
    int z = kernel_basis.cols;
    std::vector<Int> rhs(z);
    for (int j = 0; j < z; ++j) {
      Int s = 0;
      for (int i = 0; i < kernel_basis.rows; ++i)
        if (kernel_basis.at(i, j) != 0) s += kernel_basis.at(i, j) * cocycle[i];
      rhs[j] = s;
    }
    // gram * y = rhs has the kernel coordinates as its unique solution
    std::vector<Int> y(z);
    {
      std::vector<Int> b = rhs;
      std::vector<Int> t(z);
      for (int i = 0; i < gram_ech.rank; ++i) {
        int prow = gram_ech.pivot_rows[i];
        Int q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), b[prow].get_mpz_t(),
                    gram_ech.e.at(prow, i).get_mpz_t());
        if (rem != 0) throw Error("cohomology: vector is not a cocycle");
        t[i] = q;
        for (int r = prow; r < z; ++r)
          if (gram_ech.e.at(r, i) != 0) b[r] -= q * gram_ech.e.at(r, i);
      }
      for (int r = 0; r < z; ++r)
        if (b[r] != 0) throw Error("cohomology: vector is not a cocycle");
      for (int i = 0; i < z; ++i) {
        Int s = 0;
        for (int j = 0; j < gram_ech.rank; ++j)
          if (gram_ech.v.at(i, j) != 0 && t[j] != 0)
            s += gram_ech.v.at(i, j) * t[j];
        y[i] = s;
      }
    }
    std::vector<Int> w = u_snf.mul_vec(y);
    std::vector<Int> out;
    for (int p = 0; p < int(diag_full.size()); ++p) {
      if (diag_full[p] == 1) continue;
      if (diag_full[p] == 0)
        out.push_back(w[p]);
      else {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), w[p].get_mpz_t(), diag_full[p].get_mpz_t());
        out.push_back(r);
      }
    }
    return out;
  }
};

namespace detail {

inline std::vector<int64_t> prime_factors(int n) {
  std::vector<int64_t> ps;
  for (int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= int(p);
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline int p_val(int n, int64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= int(p);
    ++v;
  }
  return v;
}

}  // namespace detail

// group structure only, from valuations of the previous coboundary
inline FinAb cohomology_group_only(const CochainComplex& c, int i,
                                   const std::vector<int>& rank_chain) {
  const WGroup& w = *c.module.w;
  int r_prev = rank_chain[i - 1];
  std::vector<int64_t> primes = detail::prime_factors(w.size());
  std::vector<std::vector<int>> valuations;
  for (int64_t p : primes) {
    int e = detail::p_val(w.size(), p) + 1;
    auto [vals, pivots] = smith_p_valuations(c.delta[i - 1], p, e);
    if (pivots != r_prev)
      throw Error("cohomology: rank chain mismatch (torsion beyond |W|?)");
    std::sort(vals.begin(), vals.end());
    valuations.push_back(vals);
  }
  // assemble invariant factors: right-align the ascending valuation lists
  FinAb g;
  for (int j = 0; j < r_prev; ++j) {
    Int d = 1;
    for (size_t pi = 0; pi < primes.size(); ++pi) {
      int v = valuations[pi][j];
      for (int t = 0; t < v; ++t) d *= primes[pi];
    }
    if (d >= 2) g.torsion.push_back(d);
  }
  g.free_rank = int(c.dims[i]) - rank_chain[i] - r_prev;
  return g;
}

// ranks of delta[0..max_degree-1]; uses finiteness of H^i for i >= 1 and is
// cross-checked against the mod-p pivot counts downstream
inline std::vector<int> coboundary_rank_chain(const CochainComplex& c) {
  const WModule& m = c.module;
  // rank of the fixed sublattice = rank of ker(delta^0)
  IntMat stacked(int(m.w->gens.size()) * m.rank(), m.rank());
  int row = 0;
  for (int gi : m.w->gens) {
    IntMat d = m.act(m.w->inv[gi]) - IntMat::identity(m.rank());
    for (int i = 0; i < m.rank(); ++i, ++row)
      for (int j = 0; j < m.rank(); ++j) stacked.at(row, j) = d.at(i, j);
  }
  int fix_rank = m.rank() == 0 ? 0 : kernel(stacked).cols;
  std::vector<int> r(c.max_degree);
  r[0] = m.rank() - fix_rank;
  for (int i = 1; i < c.max_degree; ++i) r[i] = int(c.dims[i]) - r[i - 1];
  return r;
}

inline CohomologyGroup cohomology(const CochainComplex& c, int i,
                                  size_t reps_limit = 8000) {
  if (i < 0 || i >= c.max_degree)
    throw Error("cohomology: degree outside the stored complex");
  CohomologyGroup h;
  h.degree = i;
  if (c.k() == 0) {  // zero module
    h.has_reps = true;
    return h;
  }
  if (i == 0) {
    // H^0 = fixed sublattice
    IntMat stacked(int(c.module.w->gens.size()) * c.k(), c.k());
    int row = 0;
    for (int gi : c.module.w->gens) {
      IntMat d = c.module.act(c.module.w->inv[gi]) - IntMat::identity(c.k());
      for (int r = 0; r < c.k(); ++r, ++row)
        for (int j = 0; j < c.k(); ++j) stacked.at(row, j) = d.at(r, j);
    }
    IntMat fix = kernel(stacked);
    h.group.free_rank = fix.cols;
    h.has_reps = true;
    for (int j = 0; j < fix.cols; ++j) {
      h.reps.push_back(fix.col(j));
      h.orders.push_back(0);
    }
    return h;
  }

  std::vector<int> chain = coboundary_rank_chain(c);
  h.group = cohomology_group_only(c, i, chain);

  bool want_reps = c.dims[i] <= reps_limit;
  if (h.group.is_trivial() || !want_reps) {
    h.has_reps = h.group.is_trivial();
    return h;
  }

  // exact path: kernel basis, image in kernel coordinates, Smith form
  h.kernel_basis = kernel_sparse(c.delta[i]);
  int z = h.kernel_basis.cols;
  if (z != chain[i - 1] + int(h.group.free_rank))
    throw Error("cohomology: kernel rank mismatch");
  h.gram = h.kernel_basis.transpose() * h.kernel_basis;
  h.gram_ech = col_echelon(h.gram);

  // image of delta^{i-1} in kernel coordinates
  const SparseMat& dprev = c.delta[i - 1];
  IntMat y(z, dprev.cols);
  for (int cidx = 0; cidx < dprev.cols; ++cidx) {
    // rhs = K^t * column
    std::vector<Int> rhs(z);
    for (const auto& [r, val] : dprev.col[cidx])
      for (int j = 0; j < z; ++j)
        if (h.kernel_basis.at(r, j) != 0)
          rhs[j] += h.kernel_basis.at(r, j) * val;
    // solve gram * t = rhs
    std::vector<Int> b = rhs;
    std::vector<Int> t(z);
    for (int p = 0; p < h.gram_ech.rank; ++p) {
      int prow = h.gram_ech.pivot_rows[p];
      Int q, rem;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), b[prow].get_mpz_t(),
                  h.gram_ech.e.at(prow, p).get_mpz_t());
      if (rem != 0) throw Error("cohomology: boundary outside the kernel");
      t[p] = q;
      for (int r = prow; r < z; ++r)
        if (h.gram_ech.e.at(r, p) != 0) b[r] -= q * h.gram_ech.e.at(r, p);
    }
    for (int r = 0; r < z; ++r)
      if (b[r] != 0) throw Error("cohomology: boundary outside the kernel");
    for (int r = 0; r < z; ++r) {
      Int s = 0;
      for (int j = 0; j < h.gram_ech.rank; ++j)
        if (h.gram_ech.v.at(r, j) != 0 && t[j] != 0)
          s += h.gram_ech.v.at(r, j) * t[j];
      y.at(r, cidx) = s;
    }
  }
  SmithData s = snf(y);
  h.u_snf = s.u;
  h.diag_full.assign(size_t(z), Int(0));
  auto dg = s.diagonal();
  for (size_t j = 0; j < dg.size(); ++j) h.diag_full[j] = dg[j];

  FinAb check = finab_from_diagonal(h.diag_full, z);
  if (check != h.group)
    throw Error("cohomology: exact and modular group structures disagree");

  auto uinv = solve_cols(s.u, IntMat::identity(z));
  // generator j of the quotient = K * (u^-1 e_j), reduced mod the image
  h.has_reps = true;
  for (int p = 0; p < z; ++p) {
    if (h.diag_full[p] == 1) continue;
    std::vector<Int> ycoord = uinv->col(p);
    std::vector<Int> rep(int(c.dims[i]));
    for (int r = 0; r < h.kernel_basis.rows; ++r) {
      Int acc = 0;
      for (int j = 0; j < z; ++j)
        if (h.kernel_basis.at(r, j) != 0 && ycoord[j] != 0)
          acc += h.kernel_basis.at(r, j) * ycoord[j];
      rep[r] = acc;
    }
    h.reps.push_back(std::move(rep));
    h.orders.push_back(h.diag_full[p] == 0 ? Int(0) : h.diag_full[p]);
  }
  // torsion generators first (matches FinAb order), free generators after:
  // finab_from_diagonal lists torsion in diagonal order and free rank counts
  // zero entries, which appear after the nonzero ones in the Smith form.
  return h;
}

// integer combination of the representatives for given coordinates
inline std::vector<Int> cocycle_for(const CohomologyGroup& h,
                                    const std::vector<Int>& coords,
                                    size_t dim) {
  std::vector<Int> z(dim);
  for (size_t g = 0; g < h.reps.size(); ++g) {
    if (g >= coords.size() || coords[g] == 0) continue;
    for (size_t r = 0; r < dim; ++r) z[r] += coords[g] * h.reps[g][r];
  }
  return z;
}

// ---------------------------------------------------------------------------
// Induced maps of equivariant module homomorphisms

struct InducedMap {
  const CohomologyGroup* source = nullptr;
  const CohomologyGroup* target = nullptr;
  IntMat matrix;  // target coords x source coords

  std::vector<Int> apply(const std::vector<Int>& coords) const {
    std::vector<Int> out = matrix.mul_vec(coords);
    for (size_t j = 0; j < out.size(); ++j) {
      const Int& d = target->orders[j];
      if (d != 0) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), out[j].get_mpz_t(), d.get_mpz_t());
        out[j] = r;
      }
    }
    return out;
  }

  bool is_zero_on(const std::vector<Int>& coords) const {
    for (const Int& x : apply(coords))
      if (x != 0) return false;
    return true;
  }
};

// f: M -> N equivariant (N-module action f A_M(g) = A_N(g) f); the induced
// map on H^i in invariant-factor coordinates.
inline InducedMap induced_map(const IntMat& f, const CochainComplex& cm,
                              const CochainComplex& cn,
                              const CohomologyGroup& hm,
                              const CohomologyGroup& hn) {
  const WGroup& w = *cm.module.w;
  if (cn.module.w.get() != cm.module.w.get())
    throw Error("induced_map: different groups");
  for (int g = 0; g < w.size(); ++g)
    if (f * cm.module.act(g) != cn.module.act(g) * f)
      throw NotEquivariant("induced_map: map does not commute with the action");
  InducedMap im;
  im.source = &hm;
  im.target = &hn;
  int i = hm.degree;
  size_t tuples = cm.tuples(i);
  im.matrix = IntMat(int(hn.reps.size()), int(hm.reps.size()));
  for (size_t g = 0; g < hm.reps.size(); ++g) {
    // push the representative through f, blockwise over tuples
    std::vector<Int> img(cn.dims[i]);
    for (size_t t = 0; t < tuples; ++t)
      for (int r = 0; r < cn.k(); ++r) {
        Int acc = 0;
        for (int s = 0; s < cm.k(); ++s)
          if (f.at(r, s) != 0) acc += f.at(r, s) * hm.reps[g][t * cm.k() + s];
        img[t * cn.k() + r] = acc;
      }
    // mapped representative must be a cocycle
    for (const Int& v : cn.delta[i].mul_vec(img))
      if (v != 0) throw Error("induced_map: image is not a cocycle");
    std::vector<Int> coords = hn.trivial() ? std::vector<Int>{} : hn.project(img);
    for (size_t r = 0; r < coords.size(); ++r) im.matrix.at(int(r), int(g)) = coords[r];
  }
  // well-definedness: the order of each generator must map to zero
  for (size_t g = 0; g < hm.reps.size(); ++g) {
    if (hm.orders[g] == 0) continue;
    std::vector<Int> coords(hm.reps.size());
    coords[g] = hm.orders[g];
    if (!im.is_zero_on(coords))
      throw Error("induced_map: map is not well-defined on classes");
  }
  return im;
}

// |image| and |cokernel| of an induced map between finite groups
struct MapSizes {
  Int image = 1;
  Int cokernel = 1;
};

inline MapSizes induced_map_sizes(const InducedMap& m) {
  MapSizes out;
  const CohomologyGroup& tgt = *m.target;
  if (!tgt.group.is_finite())
    throw Error("induced_map_sizes: target is not finite");
  Int total = *tgt.group.order();
  int n = int(tgt.reps.size());
  IntMat rel(n, n + m.matrix.cols);
  for (int i = 0; i < n; ++i) rel.at(i, i) = tgt.orders[i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m.matrix.cols; ++j) rel.at(i, n + j) = m.matrix.at(i, j);
  // cokernel = Z^n / (orders + image columns)
  auto d = snf(rel).diagonal();
  Int coker = 1;
  for (const Int& x : d)
    if (x != 0) coker *= x;
  // all generators torsion, so the relation lattice has full rank
  out.cokernel = coker;
  out.image = total / coker;
  return out;
}

// ---------------------------------------------------------------------------
// Degree shift: H^i(W; T/S) presented as H^{i+1}(W; Lambda_S)

struct ShiftedCohomology {
  DualPair pair;
  CochainComplex complex;
  CohomologyGroup group;
};

inline ShiftedCohomology shifted_torus_cohomology(const WModule& ambient,
                                                  const Lattice& sub, int i,
                                                  int max_degree = 4) {
  ShiftedCohomology s;
  s.pair = dual_pair(ambient, sub);
  s.complex = bar_complex(s.pair.lambda_s, max_degree);
  s.group = cohomology(s.complex, i + 1);
  return s;
}

// ---------------------------------------------------------------------------
// Restriction to a subgroup whose matrices appear verbatim in W

inline std::vector<int> subgroup_embedding(const WGroup& big,
                                           const WGroup& small) {
  std::vector<int> emb(small.size(), -1);
  for (int i = 0; i < small.size(); ++i) {
    for (int j = 0; j < big.size(); ++j)
      if (big.mat(j) == small.mat(i)) {
        emb[i] = j;
        break;
      }
    if (emb[i] < 0) throw Error("subgroup_embedding: element not found");
  }
  return emb;
}

// matrix of H^i(W; M) -> H^i(W'; M) on invariant-factor coordinates
inline IntMat restriction_matrix(const CochainComplex& cbig,
                                 const CohomologyGroup& hbig,
                                 const CochainComplex& csmall,
                                 const CohomologyGroup& hsmall,
                                 const std::vector<int>& embedding) {
  int i = hbig.degree;
  int k = cbig.k();
  int wn_small = csmall.w();
  IntMat out(int(hsmall.reps.size()), int(hbig.reps.size()));
  for (size_t g = 0; g < hbig.reps.size(); ++g) {
    std::vector<Int> zr(csmall.dims[i]);
    size_t tuples = csmall.tuples(i);
    for (size_t t = 0; t < tuples; ++t) {
      // decode small tuple, encode big tuple
      size_t tmp = t, tb = 0, weight = 1;
      for (int l = 0; l < i; ++l) {
        int el = int(tmp % wn_small);
        tmp /= wn_small;
        tb += size_t(embedding[el]) * weight;
        weight *= cbig.w();
      }
      for (int j = 0; j < k; ++j) zr[t * k + j] = hbig.reps[g][tb * k + j];
    }
    std::vector<Int> coords =
        hsmall.trivial() ? std::vector<Int>{} : hsmall.project(zr);
    for (size_t r = 0; r < coords.size(); ++r)
      out.at(int(r), int(g)) = coords[r];
  }
  return out;
}

}  // namespace toral
