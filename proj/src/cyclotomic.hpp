#ifndef QH_CYCLOTOMIC_HPP
#define QH_CYCLOTOMIC_HPP

#include "cartan.hpp"
#include "fga.hpp"
#include "klr.hpp"
#include "linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qh {

// Everything needed to name one family of cyclotomic quotients: the Cartan
// datum, the level, the Q-matrix preset and the ground specialization.
struct CycloSpec {
  std::string datum_name = "sl2";
  CartanDatum datum;
  IntVec Lambda;
  std::string q_preset = "condq";
  uint64_t q_seed = 1;
  // "local": a_i(u) = u^{Lambda_i};  "yspec": a_i(u) = prod (u + y_ip) with
  // the y's specialized to distinct rationals drawn from ground_seed
  std::string ground = "local";
  uint64_t ground_seed = 1;
  int window_slack = 2;
  std::string cache_dir; // empty = no disk cache

  static CycloSpec make(const std::string& datum_name, IntVec Lambda,
                        const std::string& q_preset = "condq",
                        const std::string& ground = "local",
                        uint64_t q_seed = 1, uint64_t ground_seed = 1);

  std::string key(const IntVec& alpha) const;
  // y value for node i, slot p (0-based p < Lambda_i)
  Rat y_value(int i, int p) const;
  std::map<std::pair<int, int>, Rat> y_values() const;
  // explicit y values override the seeded ones (factor towers share values)
  std::map<std::pair<int, int>, Rat> y_override;
};

// The tower of algebras R^Lambda(alpha) for one spec, with the
// induction/restriction decomposition data between neighbouring weights.
class CycloTower {
 public:
  explicit CycloTower(CycloSpec spec);

  const CycloSpec& spec() const { return spec_; }
  const CartanDatum& datum() const { return spec_.datum; }
  const KLRAlgebra& free_algebra(int n) const;
  const FGA& algebra(const IntVec& alpha) const;
  WeightData weight(const IntVec& alpha) const {
    return WeightData(spec_.datum, spec_.Lambda, alpha);
  }

  // reduce a KLR element of rank ht(alpha) into quotient coordinates
  SVec reduce(const IntVec& alpha, const KLRElement& z) const;
  KLRElement lift(const IntVec& alpha, const SVec& v) const;
  // canonical embedding R(alpha) -> R(alpha+alpha_i) on quotient coords
  SVec embed(const IntVec& alpha, int i, const SVec& v) const;
  // cyclotomic polynomial a^Lambda_i(u) with u placed at variable slot k
  Poly cyclo_poly(int i, const std::shared_ptr<const PolyRing>& ring, int k) const;

  // Decomposition data between R(alpha) and R(alpha+alpha_i).
  struct KK {
    IntVec alpha;
    int node = 0;
    int lambda_i = 0;
    // D = e(alpha,i) R(alpha+alpha_i) e(alpha,i), indices into A' basis
    std::vector<int> D_basis;
    std::map<int, int> D_index; // A' basis index -> local D index
    // T = A e(alpha-alpha_i, i) (x)_{A-} e(alpha-alpha_i, i) A, by pure pairs
    std::vector<int> left_basis;  // A basis indices, right idem ending in i
    std::vector<int> right_basis; // A basis indices, left idem ending in i
    RowSpace balancing{0};
    std::vector<int> tensor_basis; // free pair-columns (iu*R + iv)
    std::map<int, int> tensor_index;
    // structure maps on the tensor space, one column per tensor basis vector
    std::vector<SVec> mu_tau_cols;           // T -> D (local D coords)
    std::vector<std::vector<SVec>> mu_x_cols; // k -> (T -> A coords)
    std::unique_ptr<SquareSolver> solver;
    // decomposition of z in D coords:
    //   lambda_i >= 0: z = mu_tau(pi(z)) + sum p_k(z) x_{n+1}^k
    //   lambda_i <= 0: solver gives ztilde with mu_tau = z, mu_x^k = 0
    // hat-counit as a matrix D -> A and hat-unit as a tensor vector
    std::vector<SVec> epshat_cols; // per local D index
    SVec etahat; // tensor coordinates of hat-eta(1)
  };

  const KK& kk(const IntVec& alpha, int i) const;

  struct Decomposition {
    SVec pi;                // tensor coords (lambda_i >= 0) or ztilde
    std::vector<SVec> p;    // p_k in A coords (lambda_i >= 0)
    std::vector<SVec> pitilde; // lambda_i <= 0: pitilde_l, tensor coords
  };
  Decomposition decompose(const IntVec& alpha, int i, const SVec& zD) const;

  // D-coordinates of x_{n+1}^m e(alpha, i)
  SVec x_top_power(const IntVec& alpha, int i, int m) const;
  // evaluate mu_{x_n^m} on a tensor vector (result in A coords)
  SVec mu_x(const KK& data, int m, const SVec& tensor) const;
  SVec mu_tau(const KK& data, const SVec& tensor) const;
  // counit as matrix application: eps-hat(zD) in A coords
  SVec epshat(const IntVec& alpha, int i, const SVec& zD) const;
  SVec etahat_tensor(const IntVec& alpha, int i) const;
  // degree checks per Cor. on counit/unit degrees
  bool epshat_degree_ok(const IntVec& alpha, int i, std::string* msg) const;

  // bubbles B^k_{+-i,lambda} in R(alpha) coords, recursive definition
  SVec bubble(const IntVec& alpha, int i, int sign, int k) const;
  // closed product formula, coefficients of z^0..z^order
  std::vector<SVec> bubble_series_closed(const IntVec& alpha, int i, int sign,
                                         int order) const;

  // symmetrizing form as a functional on R(alpha)
  Rat symmetrizing_form(const IntVec& alpha, const SVec& v) const;
  const std::vector<Rat>& t_functional(const IntVec& alpha) const;
  // r(alpha, i) = prod_j r_{j,i}^{alpha_j}
  Rat r_const(const IntVec& alpha, int i) const;
  std::vector<std::vector<Rat>> gram_matrix(const IntVec& alpha) const;

  // cached trace/center spaces
  const TraceSpace& trace_space(const IntVec& alpha) const;
  const GradedSubspace& center_space(const IntVec& alpha) const;

 private:
  CycloSpec spec_;
  struct ReduceData {
    RowSpace ideal{0};
    std::map<int, int> col_to_basis;
    std::vector<NormalMono> basis_monos;
    std::vector<int> basis_degrees;
    bool graded = true;
    int top = 0;
  };
  mutable std::map<int, std::unique_ptr<KLRAlgebra>> free_;
  mutable std::map<IntVec, std::unique_ptr<FGA>> algebras_;
  mutable std::map<IntVec, ReduceData> reduce_data_;
  mutable std::map<IntVec, std::map<NormalMono, int>> index_;
  mutable std::map<std::pair<IntVec, int>, std::unique_ptr<KK>> kk_;
  mutable std::map<std::pair<IntVec, int>, std::map<std::pair<int, int>, SVec>>
      bubble_memo_;
  mutable std::map<IntVec, std::vector<Rat>> t_memo_;
  mutable std::map<IntVec, TraceSpace> trace_memo_;
  mutable std::map<IntVec, GradedSubspace> center_memo_;

  const FGA& build(const IntVec& alpha) const;
  const ReduceData& ensure_reduce(const IntVec& alpha) const;
  SVec reduce_raw(const IntVec& alpha, const ReduceData& rd,
                  const KLRElement& z) const;
  Decomposition decompose_with(const KK& data, const SVec& zD) const;
  SVec x_top_power_raw(const IntVec& alpha, int i, int m,
                       const std::map<int, int>& D_index) const;
};

// dim R^Lambda(n) = sum over compositions, per the factorization theorem
struct FactorizationReport {
  long lhs = 0;
  long rhs = 0;
  bool pass = false;
  std::string detail;
};
FactorizationReport factorization_dim_check(const CycloSpec& spec, int n);

} // namespace qh

#endif
