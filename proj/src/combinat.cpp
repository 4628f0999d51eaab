#include "combinat.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace qh {

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n == 0 ? 1 : n);
  return out;
}

std::vector<std::vector<Partition>> multipartitions(int r, int n) {
  std::vector<std::vector<Partition>> out;
  std::vector<Partition> cur(r);
  std::function<void(int, int)> rec = [&](int comp, int rest) {
    if (comp == r) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    if (comp == r - 1) {
      for (const auto& p : partitions_of(rest)) {
        cur[comp] = p;
        rec(comp + 1, 0);
      }
      return;
    }
    for (int k = 0; k <= rest; ++k)
      for (const auto& p : partitions_of(k)) {
        cur[comp] = p;
        rec(comp + 1, rest - k);
      }
  };
  if (r == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  rec(0, n);
  return out;
}

std::vector<Partition> restricted_partitions(int n, int r) {
  // cost(mu) = len(mu) + sum floor(mu_i / r) <= n ; parts bounded since each
  // part costs at least 1
  std::vector<Partition> out;
  Partition cur;
  int maxpart = r * n; // a single part p costs 1 + p/r > n once p > r*n
  std::function<void(int, int)> rec = [&](int budget, int maxp) {
    out.push_back(cur);
    for (int p = std::min(maxp, maxpart); p >= 1; --p) {
      int cost = 1 + p / r;
      if (cost > budget) continue;
      cur.push_back(p);
      rec(budget - cost, p);
      cur.pop_back();
    }
  };
  if (r <= 0) throw std::invalid_argument("restricted_partitions: r must be positive");
  rec(n, maxpart);
  return out;
}

std::vector<Partition> dominant_tuples(int n, int maxpart) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int pos, int maxp) {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (int p = maxp; p >= 0; --p) {
      cur.push_back(p);
      rec(pos + 1, p);
      cur.pop_back();
    }
  };
  rec(0, maxpart);
  return out;
}

std::map<int, long> gaussian_binomial_t2(int k, int n) {
  std::map<int, long> out;
  if (n < 0 || n > k) return out;
  // partitions inside an n x (k-n) box
  Partition cur;
  std::function<void(int, int)> rec = [&](int row, int maxp) {
    if (row == n) {
      int size = 0;
      for (int p : cur) size += p;
      out[2 * size] += 1;
      return;
    }
    for (int p = maxp; p >= 0; --p) {
      cur.push_back(p);
      rec(row + 1, p);
      cur.pop_back();
    }
  };
  rec(0, k - n);
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

QTSeries QTSeries::one(int qmax) {
  QTSeries s;
  s.qmax = qmax;
  s.coeffs[0][0] = 1;
  return s;
}

long long QTSeries::coeff(int qexp, int texp) const {
  auto it = coeffs.find(qexp);
  if (it == coeffs.end()) return 0;
  auto jt = it->second.find(texp);
  return jt == it->second.end() ? 0 : jt->second;
}

std::map<int, long long> QTSeries::q_coefficient(int qexp) const {
  auto it = coeffs.find(qexp);
  return it == coeffs.end() ? std::map<int, long long>{} : it->second;
}

QTSeries QTSeries::mul(const QTSeries& o) const {
  QTSeries r;
  r.qmax = std::min(qmax, o.qmax);
  for (const auto& [q1, tc1] : coeffs) {
    if (q1 > r.qmax) continue;
    for (const auto& [q2, tc2] : o.coeffs) {
      if (q1 + q2 > r.qmax) continue;
      for (const auto& [t1, c1] : tc1)
        for (const auto& [t2, c2] : tc2) {
          long long& slot = r.coeffs[q1 + q2][t1 + t2];
          slot += c1 * c2;
        }
    }
  }
  // purge zeros
  for (auto it = r.coeffs.begin(); it != r.coeffs.end();) {
    for (auto jt = it->second.begin(); jt != it->second.end();)
      jt = (jt->second == 0) ? it->second.erase(jt) : std::next(jt);
    it = it->second.empty() ? r.coeffs.erase(it) : std::next(it);
  }
  return r;
}

std::string QTSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [q, tc] : coeffs)
    for (const auto& [t, c] : tc) {
      if (!first) os << " + ";
      first = false;
      os << c;
      if (q) os << "*q^" << q;
      if (t) os << "*t^" << t;
    }
  return first ? "0" : os.str();
}

QTSeries series_expand(const std::vector<ProductFactor>& factors, int qmax) {
  QTSeries acc = QTSeries::one(qmax);
  for (const auto& f : factors) {
    if (f.qexp <= 0)
      throw std::invalid_argument("series_expand: factors need positive q exponent");
    int copies = f.mult >= 0 ? f.mult : -f.mult;
    for (int c = 0; c < copies; ++c) {
      QTSeries g;
      g.qmax = qmax;
      if (f.mult > 0) {
        // geometric series (1 - q^a t^b)^{-1}
        for (int k = 0; k * f.qexp <= qmax; ++k) g.coeffs[k * f.qexp][k * f.texp] = 1;
      } else {
        g.coeffs[0][0] = 1;
        if (f.qexp <= qmax) g.coeffs[f.qexp][f.texp] = -1;
      }
      acc = acc.mul(g);
    }
  }
  return acc;
}

std::vector<ProductFactor> colored_partition_factors(int r, int qmax) {
  std::vector<ProductFactor> fs;
  for (int j = 1; 2 * j <= qmax; ++j) fs.push_back({2 * j, 0, r});
  return fs;
}

std::vector<ProductFactor> instanton_factors(int r, int qmax) {
  std::vector<ProductFactor> fs;
  for (int p = 1; p <= r; ++p)
    for (int i = 1; 2 * i <= qmax; ++i) fs.push_back({2 * i, 2 * (r * i + p - 1 - r), 1});
  return fs;
}

} // namespace qh
