#ifndef QH_FGA_HPP
#define QH_FGA_HPP

#include "klr.hpp"
#include "linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qh {

// A finite-dimensional algebra with an ordered graded basis and sparse
// structure constants.  KLR quotients keep a section back to normal-form
// monomials; other backends leave it empty.
struct FGA {
  std::string key; // provenance string, also the cache id
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::vector<NormalMono> section;
  SVec unit;
  std::vector<std::pair<std::string, SVec>> gens; // algebra generators
  std::vector<std::vector<SVec>> table;           // table[i][j] = b_i b_j

  int dim() const { return int(labels.size()); }
  SVec mul(const SVec& a, const SVec& b) const;
  bool is_central(const SVec& v) const;
  std::map<int, long> graded_dims() const;
};

struct GradedSubspace {
  std::vector<SVec> vecs;
  std::vector<int> degrees;
  int dim() const { return int(vecs.size()); }
  std::map<int, long> graded_dims() const;
};

// Z(A) as the joint kernel of z -> [g, z] over the stored generators
GradedSubspace center_of(const FGA& A);

// tr(A) = A/[A,A]; commutators against generators span [A,A]
class TraceSpace {
 public:
  TraceSpace() : commutators_(0) {}
  explicit TraceSpace(const FGA& A);

  int dim() const { return int(rep_basis_.size()); }
  const std::vector<int>& rep_basis() const { return rep_basis_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::map<int, long> graded_dims() const;
  // coordinates of tr(v) in the representative basis (indexed 0..dim-1)
  SVec project(const SVec& v) const;

 private:
  RowSpace commutators_;
  std::vector<int> rep_basis_; // algebra basis index of each representative
  std::vector<int> degrees_;
  std::map<int, int> col_to_local_;
};

// express v in the span of the given vectors (exact); nullopt if outside
std::optional<std::vector<Rat>> express_in_span(const std::vector<SVec>& vecs,
                                                const SVec& v);

} // namespace qh

#endif
