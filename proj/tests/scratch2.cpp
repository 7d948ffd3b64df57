// scratch: D6 forms, dual pairs, induced maps on the section-8 case
#include <iostream>

#include "toral/cohomology.hpp"

using namespace toral;

int main() {
  // D6 with Z[w]' (tau = conjugation) and Z[w]'' (tau through 2+w)
  auto rho = IntMat(2, 2, {0, -1, 1, -1});
  auto tau1 = IntMat(2, 2, {1, -1, 0, -1});
  auto tau2 = IntMat(2, 2, {1, 0, 1, -1});
  {
    auto w = close({rho, tau1});
    auto mod = ambient_module(w);
    auto c = bar_complex(mod);
    std::cout << "D6 Zw': H1=" << cohomology(c, 1).group.str()
              << " H2=" << cohomology(c, 2).group.str()
              << " H3=" << cohomology(c, 3).group.str() << "\n";
    std::cout << "fingerprint: " << module_fingerprint(mod) << "\n";
    auto dual = dual_module(mod);
    std::cout << "dual fingerprint: " << module_fingerprint(dual) << "\n";
    auto cd = bar_complex(dual);
    std::cout << "D6 dual(Zw'): H1=" << cohomology(cd, 1).group.str()
              << " H3=" << cohomology(cd, 3).group.str() << "\n";
  }
  {
    auto w = close({rho, tau2});
    auto mod = ambient_module(w);
    auto c = bar_complex(mod);
    std::cout << "D6 Zw'': H1=" << cohomology(c, 1).group.str()
              << " H2=" << cohomology(c, 2).group.str()
              << " H3=" << cohomology(c, 3).group.str() << "\n";
    std::cout << "fingerprint: " << module_fingerprint(mod) << "\n";
  }

  // Section 8 engine: W = C2 diag(1,-1), Lambda_0 = Z+Zt self-dual.
  // Lambda^S = L1(m,n): a1 = mult by m on Z/2, a2 = mult by n.
  {
    auto w = close({IntMat(2, 2, {1, 0, 0, -1})});
    auto lam0 = ambient_module(w);           // the Lambda_0 module
    auto lam_up0 = dual_module(lam0);        // ambient dual Lambda^0
    auto c0 = bar_complex(dual_module(lam_up0));  // complex of Lambda_0 again
    auto h2_0 = cohomology(c0, 2);
    auto h3_0 = cohomology(c0, 3);
    std::cout << "H2(L0)=" << h2_0.group.str() << " H3(L0)=" << h3_0.group.str()
              << "\n";
    for (int m = 1; m <= 2; ++m)
      for (int n = 1; n <= 2; ++n) {
        auto ls = Lattice::span(2, {{m, 0}, {0, n}});
        auto dp = dual_pair(lam_up0, ls);
        auto cs = bar_complex(dp.lambda_s);
        auto h2_s = cohomology(cs, 2);
        auto h3_s = cohomology(cs, 3);
        auto a1 = induced_map(dp.k_map, c0, cs, h2_0, h2_s);
        auto a2 = induced_map(dp.k_map, c0, cs, h3_0, h3_s);
        auto s1 = induced_map_sizes(a1);
        auto s2 = induced_map_sizes(a2);
        std::cout << "L1(" << m << "," << n << "): B=" << h2_s.group.str()
                  << " E=" << h3_s.group.str()
                  << " |im a1|=" << s1.image.get_str()
                  << " |im a2|=" << s2.image.get_str() << "\n";
      }
    // Type 2 lattice L2(2,2) = <(1,1),(1,-1)>: B = E = 0
    auto ls = Lattice::span(2, {{1, 1}, {1, -1}});
    auto dp = dual_pair(lam_up0, ls);
    auto cs = bar_complex(dp.lambda_s);
    std::cout << "L2(2,2): B=" << cohomology(cs, 2).group.str()
              << " E=" << cohomology(cs, 3).group.str() << " fp="
              << module_fingerprint(restrict_module(lam_up0, ls)) << "\n";
  }

  // Case 16a check: Lambda_0 = Zw' so the ambient dual is Zw''-shaped;
  // sublattice n*Lambda^0 has Lambda_S of type Zw' (B=E=0), while the
  // norm-3 ideal lattice has Lambda_S of type Zw'' (E=3).
  {
    auto w = close({rho, tau1});
    auto lam0 = ambient_module(w);
    auto up0 = dual_module(lam0);
    std::cout << "ambient dual fp: " << module_fingerprint(up0) << "\n";
    auto s2 = shifted_torus_cohomology(up0, Lattice::span(2, {{2, 0}, {0, 2}}), 2);
    std::cout << "16a 2L0: E=" << s2.group.str()
              << " fp(Lambda_S)=" << module_fingerprint(s2.pair.lambda_s) << "\n";
    // norm-3 invariant ideal inside the dual-ambient coordinates: find it
    for (int a = 0; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        if (a == 0 && b <= 0) continue;
        IntMat v(2, 1, {a, b});
        IntMat g = up0.act(1) * v;  // some order-3 rotation image
        IntMat gen(2, 2, {a, g.at(0, 0).get_si(), b, g.at(1, 0).get_si()});
        if (abs(det(gen)) != 3) continue;
        Lattice l(2, gen);
        if (!is_invariant(l, *w)) continue;
        auto s3 = shifted_torus_cohomology(up0, l, 2);
        std::cout << "16a norm3 " << l.str() << ": E=" << s3.group.str()
                  << " fp(Lambda_S)=" << module_fingerprint(s3.pair.lambda_s)
                  << "\n";
        goto done;
      }
  done:;
  }
  return 0;
}
