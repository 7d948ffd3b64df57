// scratch harness used while bringing the engine up; not part of the suite
#include <chrono>
#include <iostream>

#include "toral/cohomology.hpp"

using namespace toral;

static void show(const char* name, const FinAb& g) {
  std::cout << name << " = " << g.str() << "\n";
}

int main() {
  // HNF sanity
  IntMat a(2, 2, {2, 1, 0, 1});  // columns (2,0),(1,1)
  std::cout << "hnf: " << col_hnf(a).str() << "\n";
  IntMat m8(2, 2, {0, 0, 0, -2});
  auto s = snf(m8);
  std::cout << "snf diag: ";
  for (auto& d : s.diagonal()) std::cout << d.get_str() << " ";
  std::cout << "\n";
  std::cout << "UAV==D: " << ((s.u * m8 * s.v) == s.d) << "\n";

  // C2 acting as -1 on Z: H^1 = Z/2, H^2 = 0, H^3 = Z/2
  {
    auto w = close({IntMat(1, 1, {-1})});
    auto mod = ambient_module(w);
    auto c = bar_complex(mod);
    show("H0(C2;Zt)", cohomology(c, 0).group);
    show("H1(C2;Zt)", cohomology(c, 1).group);
    show("H2(C2;Zt)", cohomology(c, 2).group);
    show("H3(C2;Zt)", cohomology(c, 3).group);
  }
  // C4 trivial on Z: H^2 = Z/4
  {
    auto w = close({IntMat(2, 2, {0, -1, 1, 0})});
    WModule mod;
    mod.w = w;
    mod.lattice = Lattice::full(1);
    mod.action.assign(4, IntMat::identity(1));
    mod.check();
    auto c = bar_complex(mod);
    show("H2(C4;Z)", cohomology(c, 2).group);
    show("H3(C4;Z)", cohomology(c, 3).group);
  }
  // C2 on Z+Zt (section 8): A = H2 = 2, D = H3 = 2
  {
    auto w = close({IntMat(2, 2, {1, 0, 0, -1})});
    auto mod = ambient_module(w);
    auto c = bar_complex(mod);
    show("H2(C2;Z+Zt)", cohomology(c, 2).group);
    show("H3(C2;Z+Zt)", cohomology(c, 3).group);
  }
  // D12 on the G2 lattice: H2 = H3 = 0
  {
    auto t0 = std::chrono::steady_clock::now();
    auto w = close({IntMat(2, 2, {1, -1, 1, 0}), IntMat(2, 2, {1, -1, 0, -1})});
    std::cout << "D12 order " << w->size() << "\n";
    auto mod = ambient_module(w);
    auto c = bar_complex(mod);
    show("H1(D12;G2)", cohomology(c, 1).group);
    show("H2(D12;G2)", cohomology(c, 2).group);
    show("H3(D12;G2)", cohomology(c, 3).group);
    auto t1 = std::chrono::steady_clock::now();
    std::cout << "D12 lattice: "
              << std::chrono::duration<double>(t1 - t0).count() << "s\n";
  }
  // D12 regular module ZW: H^{1,2,3} = 0
  {
    auto t0 = std::chrono::steady_clock::now();
    auto w = close({IntMat(2, 2, {1, -1, 1, 0}), IntMat(2, 2, {1, -1, 0, -1})});
    int n = w->size();
    WModule mod;
    mod.w = w;
    mod.lattice = Lattice::full(n);
    for (int g = 0; g < n; ++g) {
      IntMat p(n, n);
      for (int x = 0; x < n; ++x) p.at(w->mult[g][x], x) = 1;
      mod.action.push_back(p);
    }
    mod.check();
    auto c = bar_complex(mod);
    show("H1(D12;ZW)", cohomology(c, 1).group);
    show("H2(D12;ZW)", cohomology(c, 2).group);
    show("H3(D12;ZW)", cohomology(c, 3).group);
    auto t1 = std::chrono::steady_clock::now();
    std::cout << "D12 regular: "
              << std::chrono::duration<double>(t1 - t0).count() << "s\n";
  }
  return 0;
}
