#ifndef QH_CARTAN_HPP
#define QH_CARTAN_HPP

#include "rational.hpp"

#include <string>
#include <vector>

namespace qh {

// Symmetrizable generalized Cartan matrix with positive symmetrizers.
struct CartanDatum {
  std::vector<std::vector<int>> a; // a[i][j], a_{ii}=2
  std::vector<int> d;              // d_i a_ij = d_j a_ji

  CartanDatum() = default;
  CartanDatum(std::vector<std::vector<int>> mat, std::vector<int> sym);

  int rank() const { return int(a.size()); }
  bool symmetric() const;
  bool finite_type() const; // symmetrized matrix positive definite

  // named presets: sl2, sl3, sl2xsl2, b2
  static CartanDatum preset(const std::string& name);
};

using IntVec = std::vector<int>;

// A dominant weight Lambda and a root-lattice vector alpha (both as
// coordinate vectors over the node set), with the derived quantities the
// grading bookkeeping needs.
struct WeightData {
  CartanDatum datum;
  IntVec Lambda; // Lambda_i >= 0
  IntVec alpha;  // alpha = sum alpha_i * simple roots, alpha_i >= 0

  WeightData(CartanDatum dat, IntVec L, IntVec al);

  int height() const;
  // lambda_i = <alpha_i^vee, Lambda - alpha>
  int lambda(int i) const;
  // d_{Lambda,alpha} = (Lambda|Lambda) - (Lambda-alpha|Lambda-alpha)
  int d_Lambda_alpha() const;
};

// positive roots in root-lattice coordinates (finite type)
std::vector<IntVec> positive_roots(const CartanDatum& datum);

// dim V(Lambda)_lambda by the Freudenthal recursion, lambda = Lambda - alpha.
// Requires finite type of rank <= 3.
long weight_multiplicity(const CartanDatum& datum, const IntVec& Lambda,
                         const IntVec& alpha);

} // namespace qh

#endif
