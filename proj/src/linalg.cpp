#include "linalg.hpp"

#include <stdexcept>

namespace qh {

SVec svec_scaled(const SVec& v, const Rat& c) {
  SVec out;
  if (is_zero(c)) return out;
  for (const auto& [i, x] : v) out.emplace(i, x * c);
  return out;
}

void svec_axpy(SVec& dst, const Rat& c, const SVec& src) {
  if (is_zero(c)) return;
  for (const auto& [i, x] : src) {
    auto it = dst.find(i);
    if (it == dst.end()) {
      dst.emplace(i, c * x);
    } else {
      it->second += c * x;
      if (is_zero(it->second)) dst.erase(it);
    }
  }
}

bool svec_zero(const SVec& v) { return v.empty(); }

Rat svec_get(const SVec& v, int i) {
  auto it = v.find(i);
  return it == v.end() ? rat(0) : it->second;
}

SVec RowSpace::reduce(SVec v) const {
  // Entries of a stored row sit at columns >= its pivot, so eliminating the
  // entry at a pivot column never disturbs anything to its left.
  auto it = v.begin();
  while (it != v.end()) {
    auto rit = rows_.find(it->first);
    if (rit == rows_.end()) {
      ++it;
      continue;
    }
    int piv = it->first;
    svec_axpy(v, -it->second, rit->second);
    it = v.lower_bound(piv);
  }
  return v;
}

bool RowSpace::insert(SVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  int lead = v.begin()->first;
  Rat inv = rat(1) / v.begin()->second;
  v = svec_scaled(v, inv);
  // back-substitute into existing rows
  for (auto& [p, row] : rows_) {
    auto it = row.find(lead);
    if (it != row.end()) svec_axpy(row, -it->second, v);
  }
  rows_.emplace(lead, std::move(v));
  return true;
}

std::vector<int> RowSpace::free_columns() const {
  std::vector<int> out;
  for (int c = 0; c < ncols_; ++c)
    if (!rows_.count(c)) out.push_back(c);
  return out;
}

std::vector<SVec> kernel_basis(const std::vector<SVec>& rows, int ncols) {
  RowSpace space(ncols);
  for (const auto& r : rows) space.insert(r);
  std::vector<SVec> basis;
  for (int c : space.free_columns()) {
    SVec v;
    v[c] = rat(1);
    for (const auto& [p, row] : space.pivot_rows()) {
      Rat x = svec_get(row, c);
      if (!is_zero(x)) v[p] = -x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

SquareSolver::SquareSolver(std::vector<SVec> columns, int dim) : dim_(dim) {
  if (int(columns.size()) != dim)
    throw std::invalid_argument("SquareSolver: not square");
  // rows of the system: a[i][j] = columns[j][i]
  std::vector<std::vector<Rat>> aug(dim, std::vector<Rat>(2 * dim, rat(0)));
  for (int j = 0; j < dim; ++j)
    for (const auto& [i, x] : columns[j]) aug[i][j] = x;
  for (int i = 0; i < dim; ++i) aug[i][dim + i] = rat(1);

  for (int col = 0; col < dim; ++col) {
    int piv = -1;
    for (int r = col; r < dim; ++r)
      if (!is_zero(aug[r][col])) { piv = r; break; }
    if (piv < 0) {
      singular_ = true;
      return;
    }
    std::swap(aug[piv], aug[col]);
    Rat inv = rat(1) / aug[col][col];
    for (int j = 0; j < 2 * dim; ++j) aug[col][j] *= inv;
    for (int r = 0; r < dim; ++r) {
      if (r == col || is_zero(aug[r][col])) continue;
      Rat f = aug[r][col];
      for (int j = col; j < 2 * dim; ++j) aug[r][j] -= f * aug[col][j];
    }
  }
  inv_.assign(dim, std::vector<Rat>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) inv_[i][j] = aug[i][dim + j];
}

std::vector<Rat> SquareSolver::solve(const SVec& rhs) const {
  if (singular_) throw std::logic_error("SquareSolver: singular system");
  std::vector<Rat> x(dim_, rat(0));
  for (const auto& [i, v] : rhs) {
    if (i < 0 || i >= dim_) throw std::out_of_range("SquareSolver: rhs index");
    for (int r = 0; r < dim_; ++r) {
      if (!is_zero(inv_[r][i])) x[r] += inv_[r][i] * v;
    }
  }
  return x;
}

} // namespace qh
