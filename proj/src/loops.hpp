#ifndef QH_LOOPS_HPP
#define QH_LOOPS_HPP

#include "cyclotomic.hpp"
#include "report.hpp"

#include <vector>

namespace qh {

// Loop operators on the traces and centers of a cyclotomic tower.  All
// operators are exact matrices between the trace/center coordinate spaces of
// neighbouring weights; algebras are built lazily through the tower.
class LoopOps {
 public:
  explicit LoopOps(const CycloTower& tower) : tower_(tower) {}

  const CycloTower& tower() const { return tower_; }

  // algebra-level images (a representative of the class); the *_tr/_z
  // variants project to trace/center coordinates
  SVec x_minus_alg(const IntVec& alpha, int i, int r, const SVec& f) const;
  SVec x_plus_alg(const IntVec& alpha, int i, int r, const SVec& f) const;
  SVec z_plus(const IntVec& alpha, int i, int r, const SVec& g) const;
  SVec z_minus(const IntVec& alpha, int i, int r, const SVec& g) const;

  // trace-coordinate operators
  SVec x_minus_tr(const IntVec& alpha, int i, int r, const SVec& tr_vec) const;
  SVec x_plus_tr(const IntVec& alpha, int i, int r, const SVec& tr_vec) const;
  // multiplication by the central element h_{ir,lambda} on trace coords
  SVec h_tr(const IntVec& alpha, int i, int r, const SVec& tr_vec) const;
  SVec h_element(const IntVec& alpha, int i, int r) const;
  // psi_{i0..order} as matrices on the trace space at alpha
  std::vector<std::vector<SVec>> psi_ops(const IntVec& alpha, int i,
                                         int order) const;

  SVec lift_trace(const IntVec& alpha, const SVec& tr_vec) const;
  SVec project_trace(const IntVec& alpha, const SVec& alg_vec) const;
  // expresses an algebra vector in the center basis; throws if not central
  SVec center_coords(const IntVec& alpha, const SVec& alg_vec) const;
  SVec lift_center(const IntVec& alpha, const SVec& z_vec) const;

  // q_{ij} expansion coefficients a_{i,j,p,q}
  Rat a_coeff(int i, int j, int p, int q) const;

 private:
  const CycloTower& tower_;
  mutable std::map<std::pair<IntVec, std::pair<int, int>>, SVec> h_memo_;
};

// weights of height <= maxht with all coordinates >= 0
std::vector<IntVec> weights_up_to(int rank, int maxht);

// Prop-style relation suites; every check lands in the report
void verify_loop_relations(const CycloTower& tower, int maxht, int rmax,
                           SuiteReport& rep);
void verify_transpose(const CycloTower& tower, int maxht, int rmax,
                      SuiteReport& rep);
void verify_cyclicity(const CycloTower& tower, int maxht, SuiteReport& rep);
void verify_kk_adjunction(const CycloTower& tower, int maxht, SuiteReport& rep);
void verify_bubbles(const CycloTower& tower, int maxht, int order,
                    SuiteReport& rep);
void verify_symmetrizing(const CycloTower& tower, int maxht, SuiteReport& rep);
void verify_relations_XI(const CycloTower& tower, int maxht, SuiteReport& rep);
void verify_grading(const CycloTower& tower, int maxht, SuiteReport& rep);

// sl2 fast-path model: Z(H^k_n) inside Q[y_1..y_k], Demazure formulas
struct Sl2Model {
  int k;
  std::shared_ptr<const PolyRing> ring; // y_1..y_k, degree 2 each

  explicit Sl2Model(int level);
  Poly zminus(int n, int r, const Poly& f) const; // Z(H_n) -> Z(H_{n+1})
  Poly zplus(int n, int r, const Poly& f) const;  // Z(H_n) -> Z(H_{n-1})
  Poly xminus(int n, int r, const Poly& f) const;
  Poly xplus(int n, int r, const Poly& f) const;
  Poly coset_demazure(int n, const Poly& f) const; // del_{w_n}
};

void verify_sl2_model(int k, SuiteReport& rep);
void sl2_character_compare(const CycloTower& tower, int k, SuiteReport& rep);

} // namespace qh

#endif
