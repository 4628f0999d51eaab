#include "fga.hpp"

#include <stdexcept>

namespace qh {

SVec FGA::mul(const SVec& a, const SVec& b) const {
  SVec out;
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b) svec_axpy(out, ca * cb, table[i][j]);
  return out;
}

bool FGA::is_central(const SVec& v) const {
  for (int j = 0; j < dim(); ++j) {
    SVec bj;
    bj[j] = rat(1);
    SVec lhs = mul(v, bj), rhs = mul(bj, v);
    if (lhs != rhs) return false;
  }
  return true;
}

std::map<int, long> FGA::graded_dims() const {
  std::map<int, long> out;
  for (int d : degrees) out[d] += 1;
  return out;
}

GradedSubspace center_of(const FGA& A) {
  int dim = A.dim();
  // rows indexed by (generator, coordinate); row[(g,i)][j] = <[g,b_j], b_i>
  std::map<std::pair<int, int>, SVec> rowmap;
  for (int g = 0; g < int(A.gens.size()); ++g) {
    const SVec& gv = A.gens[g].second;
    for (int j = 0; j < dim; ++j) {
      SVec bj;
      bj[j] = rat(1);
      SVec comm = A.mul(gv, bj);
      svec_axpy(comm, rat(-1), A.mul(bj, gv));
      for (const auto& [i, c] : comm) rowmap[{g, i}][j] = c;
    }
  }
  std::vector<SVec> rows;
  rows.reserve(rowmap.size());
  for (auto& [k, r] : rowmap) rows.push_back(std::move(r));
  GradedSubspace out;
  for (SVec& v : kernel_basis(rows, dim)) {
    int deg = 0;
    bool first = true;
    for (const auto& [i, c] : v) {
      if (first) {
        deg = A.degrees[i];
        first = false;
      } else if (A.degrees[i] != deg) {
        throw std::logic_error("center_of: inhomogeneous kernel vector");
      }
    }
    out.degrees.push_back(deg);
    out.vecs.push_back(std::move(v));
  }
  return out;
}

std::map<int, long> GradedSubspace::graded_dims() const {
  std::map<int, long> out;
  for (int d : degrees) out[d] += 1;
  return out;
}

TraceSpace::TraceSpace(const FGA& A) : commutators_(A.dim()) {
  for (const auto& [name, gv] : A.gens) {
    for (int j = 0; j < A.dim(); ++j) {
      SVec bj;
      bj[j] = rat(1);
      SVec comm = A.mul(gv, bj);
      svec_axpy(comm, rat(-1), A.mul(bj, gv));
      commutators_.insert(std::move(comm));
    }
  }
  rep_basis_ = commutators_.free_columns();
  for (size_t k = 0; k < rep_basis_.size(); ++k) {
    degrees_.push_back(A.degrees[rep_basis_[k]]);
    col_to_local_[rep_basis_[k]] = int(k);
  }
}

std::map<int, long> TraceSpace::graded_dims() const {
  std::map<int, long> out;
  for (int d : degrees_) out[d] += 1;
  return out;
}

SVec TraceSpace::project(const SVec& v) const {
  SVec red = commutators_.reduce(v);
  SVec out;
  for (const auto& [i, c] : red) {
    auto it = col_to_local_.find(i);
    if (it == col_to_local_.end())
      throw std::logic_error("TraceSpace: reduction left a pivot column");
    out[it->second] = c;
  }
  return out;
}

std::optional<std::vector<Rat>> express_in_span(const std::vector<SVec>& vecs,
                                                const SVec& v) {
  // rows (vec_i | e_i); reduce (v | 0) and read off the shadow
  struct Row {
    SVec main;
    std::vector<Rat> shadow;
  };
  size_t k = vecs.size();
  std::map<int, Row> pivots;
  for (size_t i = 0; i < k; ++i) {
    Row r{vecs[i], std::vector<Rat>(k, rat(0))};
    r.shadow[i] = rat(1);
    // reduce against existing pivots
    auto it = r.main.begin();
    while (it != r.main.end()) {
      auto pit = pivots.find(it->first);
      if (pit == pivots.end()) {
        ++it;
        continue;
      }
      Rat f = it->second;
      int col = it->first;
      svec_axpy(r.main, -f, pit->second.main);
      for (size_t s = 0; s < k; ++s) r.shadow[s] -= f * pit->second.shadow[s];
      it = r.main.lower_bound(col);
    }
    if (r.main.empty()) continue;
    Rat inv = rat(1) / r.main.begin()->second;
    int lead = r.main.begin()->first;
    r.main = svec_scaled(r.main, inv);
    for (auto& s : r.shadow) s *= inv;
    pivots.emplace(lead, std::move(r));
  }
  SVec w = v;
  std::vector<Rat> acc(k, rat(0));
  auto it = w.begin();
  while (it != w.end()) {
    auto pit = pivots.find(it->first);
    if (pit == pivots.end()) return std::nullopt;
    Rat f = it->second;
    int col = it->first;
    svec_axpy(w, -f, pit->second.main);
    for (size_t s = 0; s < k; ++s) acc[s] += f * pit->second.shadow[s];
    it = w.lower_bound(col);
  }
  return acc;
}

} // namespace qh
