// bring-up smoke run: nilHecke relations and small cyclotomic quotients
#include "cyclotomic.hpp"

#include <cassert>
#include <iostream>

using namespace qh;

static void check_assoc(const KLRAlgebra& R, const KLRElement& a,
                        const KLRElement& b, const KLRElement& c) {
  KLRElement lhs = R.mul(R.mul(a, b), c);
  KLRElement rhs = R.mul(a, R.mul(b, c));
  if (!(lhs == rhs)) {
    std::cerr << "assoc FAIL\n lhs=" << lhs.str() << "\n rhs=" << rhs.str() << "\n";
    std::abort();
  }
}

int main() {
  // sl2 level 2 rank 2: d_{L,a} = 0, window [-2,2]
  {
    CycloSpec spec = CycloSpec::make("sl2", {2});
    CycloTower tower(spec);
    std::cout << "sl2 k=2: dim R(2a) = " << tower.algebra({2}).dim() << "\n";
    assert(tower.algebra({2}).dim() == 4);
    for (auto [d, c] : tower.algebra({2}).graded_dims())
      std::cout << "  deg " << d << ": " << c << "\n";
    // Gram nondegeneracy at alpha, 2alpha
    for (IntVec a : {IntVec{1}, IntVec{2}}) {
      auto G = tower.gram_matrix(a);
      int dim = int(G.size());
      RowSpace rs(dim);
      for (auto& row : G) {
        SVec r;
        for (int j = 0; j < dim; ++j)
          if (!is_zero(row[j])) r[j] = row[j];
        rs.insert(std::move(r));
      }
      std::cout << "  gram rank at ht " << a[0] << ": " << rs.rank() << "/" << dim
                << "\n";
      assert(rs.rank() == dim);
    }
    // center dims: C(k,n)
    std::cout << "  dim Z(R(a)) = " << tower.center_space({1}).dim() << "\n";
    std::cout << "  dim Z(R(2a)) = " << tower.center_space({2}).dim() << "\n";
    assert(tower.center_space({1}).dim() == 2);
    assert(tower.center_space({2}).dim() == 1);
    std::cout << "  dim tr(R(a)) = " << tower.trace_space({1}).dim() << "\n";
    assert(tower.trace_space({1}).dim() == 2);
  }

  // sl3 free algebra: braid corrections + associativity fuzz
  {
    CartanDatum sl3 = CartanDatum::preset("sl3");
    for (auto preset : {std::string("condq"), std::string("generic")}) {
      QMatrix Q = QMatrix::by_name(preset, sl3, 7);
      KLRAlgebra R(sl3, Q, 3);
      // relation (f) against the rewriting engine
      for (Idem nu : {Idem{0, 1, 0}, Idem{0, 0, 1}, Idem{1, 0, 1}, Idem{0, 1, 1}}) {
        KLRElement t1 = R.tau_gen(0), t2 = R.tau_gen(1);
        KLRElement lhs =
            R.times_idem(R.mul(R.mul(t2, t1), t2) - R.mul(R.mul(t1, t2), t1), nu);
        Poly q = Q.q_poly(R.xring(), nu[0], nu[1], 0, 1);
        KLRElement rhs;
        if (nu[0] == nu[2]) rhs = R.poly_elem(demazure(q, 0, 2), nu);
        if (!(lhs == rhs)) {
          std::cerr << "braid relation FAIL " << preset << "\n lhs=" << lhs.str()
                    << "\n rhs=" << rhs.str() << "\n";
          return 1;
        }
      }
      std::cout << "sl3 braid defect relation ok (" << preset << ")\n";
      // associativity fuzz over generators
      std::vector<KLRElement> gens = {R.tau_gen(0), R.tau_gen(1), R.x_gen(0),
                                      R.x_gen(2), R.intertwiner(0)};
      for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j)
          for (size_t k = 0; k < gens.size(); ++k)
            check_assoc(R, gens[i], gens[j], gens[k]);
      std::cout << "sl3 associativity fuzz ok (" << preset << ")\n";
    }
  }

  // sl3 adjoint cyclotomic: weight-0 algebra
  {
    CycloSpec spec = CycloSpec::make("sl3", {1, 1});
    CycloTower tower(spec);
    std::cout << "sl3 L=theta: dim R(a1) = " << tower.algebra({1, 0}).dim()
              << ", dim R(a1+a2) = " << tower.algebra({1, 1}).dim() << "\n";
    std::cout << "  dim tr^0(a1+a2) = ";
    auto gd = tower.trace_space({1, 1}).graded_dims();
    std::cout << (gd.count(0) ? gd.at(0) : 0)
              << " (weight mult = "
              << weight_multiplicity(spec.datum, {1, 1}, {1, 1}) << ")\n";
    assert((gd.count(0) ? gd.at(0) : 0) ==
           weight_multiplicity(spec.datum, {1, 1}, {1, 1}));
    // bubbles: recursive vs closed formula to order 3
    for (int sgn : {+1, -1}) {
      auto closed = tower.bubble_series_closed({1, 0}, 0, sgn, 3);
      for (int k = 0; k <= 3; ++k) {
        SVec rec = tower.bubble({1, 0}, 0, sgn, k);
        if (!(rec == closed[k])) {
          std::cerr << "bubble mismatch sgn=" << sgn << " k=" << k << "\n";
          return 1;
        }
      }
    }
    std::cout << "  bubble closed formula ok\n";
  }

  // yspec ground: factorization dims at sl2 level 2
  {
    CycloSpec spec = CycloSpec::make("sl2", {2}, "condq", "yspec", 1, 5);
    for (int n = 0; n <= 2; ++n) {
      auto rep = factorization_dim_check(spec, n);
      std::cout << "factorization n=" << n << ": " << rep.detail
                << (rep.pass ? " ok" : " FAIL") << "\n";
      if (!rep.pass) return 1;
    }
  }

  std::cout << "smoke ok\n";
  return 0;
}
