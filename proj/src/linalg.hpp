#ifndef QH_LINALG_HPP
#define QH_LINALG_HPP

#include "rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qh {

// Sparse row vector with exact rational entries.  Ordered keys keep every
// computation deterministic.
using SVec = std::map<int, Rat>;

SVec svec_scaled(const SVec& v, const Rat& c);
void svec_axpy(SVec& dst, const Rat& c, const SVec& src); // dst += c*src
bool svec_zero(const SVec& v);
Rat svec_get(const SVec& v, int i);

// Incremental row-echelon basis of a subspace of Q^ncols.
class RowSpace {
 public:
  explicit RowSpace(int ncols) : ncols_(ncols) {}

  // reduce v against the stored pivot rows
  SVec reduce(SVec v) const;
  // insert a vector; returns true if it enlarged the space
  bool insert(SVec v);
  int rank() const { return int(rows_.size()); }
  int ncols() const { return ncols_; }
  bool contains(const SVec& v) const { return svec_zero(reduce(v)); }
  const std::map<int, SVec>& pivot_rows() const { return rows_; }
  // column indices without a pivot (a basis of the cokernel)
  std::vector<int> free_columns() const;

 private:
  int ncols_;
  std::map<int, SVec> rows_; // pivot column -> row (pivot entry 1)
};

// kernel basis of the linear map with the given rows (each row a functional)
std::vector<SVec> kernel_basis(const std::vector<SVec>& rows, int ncols);

// Dense-ish exact solver for square systems, reused across many right-hand
// sides (decomposition maps are solved once per algebra and cached).
class SquareSolver {
 public:
  // columns of m are the images of the basis vectors
  explicit SquareSolver(std::vector<SVec> columns, int dim);
  bool singular() const { return singular_; }
  // solve M x = rhs; throws if singular
  std::vector<Rat> solve(const SVec& rhs) const;

 private:
  int dim_;
  bool singular_ = false;
  // row-reduced augmented system [M | I] -> [I | M^{-1}]
  std::vector<std::vector<Rat>> inv_;
};

} // namespace qh

#endif
