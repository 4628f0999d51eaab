#include "cartan.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace qh {

CartanDatum::CartanDatum(std::vector<std::vector<int>> mat, std::vector<int> sym)
    : a(std::move(mat)), d(std::move(sym)) {
  int n = rank();
  if (int(d.size()) != n) throw std::invalid_argument("CartanDatum: size mismatch");
  for (int i = 0; i < n; ++i) {
    if (int(a[i].size()) != n) throw std::invalid_argument("CartanDatum: not square");
    if (a[i][i] != 2) throw std::invalid_argument("CartanDatum: a_ii != 2");
    if (d[i] <= 0) throw std::invalid_argument("CartanDatum: d_i <= 0");
    for (int j = 0; j < n; ++j) {
      if (i != j && a[i][j] > 0)
        throw std::invalid_argument("CartanDatum: a_ij > 0 off-diagonal");
      if (i != j && ((a[i][j] == 0) != (a[j][i] == 0)))
        throw std::invalid_argument("CartanDatum: zero pattern not symmetric");
      if (d[i] * a[i][j] != d[j] * a[j][i])
        throw std::invalid_argument("CartanDatum: not symmetrizable by d");
    }
  }
}

bool CartanDatum::symmetric() const {
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      if (a[i][j] != a[j][i]) return false;
  return true;
}

bool CartanDatum::finite_type() const {
  // leading principal minors of (d_i a_ij) all positive
  int n = rank();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = rat(d[i] * a[i][j]);
  for (int k = 1; k <= n; ++k) {
    // determinant of leading k x k block by fraction-free elimination
    std::vector<std::vector<Rat>> b(k, std::vector<Rat>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) b[i][j] = m[i][j];
    Rat det = rat(1);
    for (int c = 0; c < k; ++c) {
      int piv = -1;
      for (int r = c; r < k; ++r)
        if (!is_zero(b[r][c])) { piv = r; break; }
      if (piv < 0) return false;
      if (piv != c) { std::swap(b[piv], b[c]); det = -det; }
      det *= b[c][c];
      for (int r = c + 1; r < k; ++r) {
        Rat f = b[r][c] / b[c][c];
        for (int j = c; j < k; ++j) b[r][j] -= f * b[c][j];
      }
    }
    if (sgn(det) <= 0) return false;
  }
  return true;
}

CartanDatum CartanDatum::preset(const std::string& name) {
  if (name == "sl2") return CartanDatum({{2}}, {1});
  if (name == "sl3") return CartanDatum({{2, -1}, {-1, 2}}, {1, 1});
  if (name == "sl2xsl2") return CartanDatum({{2, 0}, {0, 2}}, {1, 1});
  if (name == "b2") return CartanDatum({{2, -1}, {-2, 2}}, {2, 1});
  throw std::invalid_argument("CartanDatum: unknown preset " + name);
}

WeightData::WeightData(CartanDatum dat, IntVec L, IntVec al)
    : datum(std::move(dat)), Lambda(std::move(L)), alpha(std::move(al)) {
  if (int(Lambda.size()) != datum.rank() || int(alpha.size()) != datum.rank())
    throw std::invalid_argument("WeightData: size mismatch");
  for (int v : Lambda)
    if (v < 0) throw std::invalid_argument("WeightData: Lambda not dominant");
  for (int v : alpha)
    if (v < 0) throw std::invalid_argument("WeightData: alpha not in Q+");
}

int WeightData::height() const {
  int h = 0;
  for (int v : alpha) h += v;
  return h;
}

int WeightData::lambda(int i) const {
  int r = Lambda[i];
  for (int j = 0; j < datum.rank(); ++j) r -= alpha[j] * datum.a[i][j];
  return r;
}

int WeightData::d_Lambda_alpha() const {
  // (Lambda|Lambda)-(Lambda-alpha|Lambda-alpha) = 2(Lambda|alpha)-(alpha|alpha)
  // with (mu|alpha_j) = d_j <alpha_j^vee, mu>
  int two_La = 0;
  for (int j = 0; j < datum.rank(); ++j) two_La += 2 * alpha[j] * datum.d[j] * Lambda[j];
  int aa = 0;
  for (int i = 0; i < datum.rank(); ++i)
    for (int j = 0; j < datum.rank(); ++j)
      aa += alpha[i] * alpha[j] * datum.d[i] * datum.a[i][j];
  return two_La - aa;
}

std::vector<IntVec> positive_roots(const CartanDatum& datum) {
  if (!datum.finite_type())
    throw std::invalid_argument("positive_roots: datum not of finite type");
  int n = datum.rank();
  std::set<IntVec> roots;
  std::vector<IntVec> frontier;
  for (int i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    roots.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const IntVec& beta : frontier) {
      for (int i = 0; i < n; ++i) {
        // s_i(beta) = beta - <alpha_i^vee,beta> alpha_i
        int pairing = 0;
        for (int j = 0; j < n; ++j) pairing += datum.a[i][j] * beta[j];
        IntVec g = beta;
        g[i] -= pairing;
        bool positive = true, zero = true;
        for (int v : g) {
          if (v < 0) positive = false;
          if (v != 0) zero = false;
        }
        if (positive && !zero && roots.insert(g).second) next.push_back(g);
      }
    }
    frontier = std::move(next);
  }
  return std::vector<IntVec>(roots.begin(), roots.end());
}

namespace {

// (mu|beta) for mu in coweight coordinates mu_i=<alpha_i^vee,mu>, beta in Q
long form_weight_root(const CartanDatum& datum, const IntVec& mu, const IntVec& beta) {
  long r = 0;
  for (int j = 0; j < datum.rank(); ++j) r += long(beta[j]) * datum.d[j] * mu[j];
  return r;
}

struct FreudenthalCtx {
  const CartanDatum& datum;
  IntVec Lambda;
  std::vector<IntVec> pos_roots;
  std::map<IntVec, long> memo; // key: alpha offset

  long mult(const IntVec& alpha) {
    for (int v : alpha)
      if (v < 0) return 0;
    bool zero = true;
    for (int v : alpha) zero &= (v == 0);
    if (zero) return 1;
    auto it = memo.find(alpha);
    if (it != memo.end()) return it->second;

    int n = datum.rank();
    IntVec lambda(n); // coweight coords of Lambda - alpha
    for (int i = 0; i < n; ++i) {
      lambda[i] = Lambda[i];
      for (int j = 0; j < n; ++j) lambda[i] -= alpha[j] * datum.a[i][j];
    }
    // denominator (Lambda+rho|Lambda+rho)-(lambda+rho|lambda+rho)
    //            = (Lambda+lambda+2rho | alpha)
    IntVec s(n);
    for (int i = 0; i < n; ++i) s[i] = Lambda[i] + lambda[i] + 2;
    long denom = form_weight_root(datum, s, alpha);
    long num = 0;
    for (const IntVec& beta : pos_roots) {
      for (int k = 1;; ++k) {
        IntVec shifted = alpha; // alpha - k beta, i.e. weight lambda + k beta
        bool ok = true;
        for (int j = 0; j < n; ++j) {
          shifted[j] -= k * beta[j];
          if (shifted[j] < 0) ok = false;
        }
        if (!ok) break;
        long m = mult(shifted);
        if (m == 0) continue;
        IntVec mu(n); // coweight coords of lambda + k beta
        for (int i = 0; i < n; ++i) {
          mu[i] = Lambda[i];
          for (int j = 0; j < n; ++j) mu[i] -= shifted[j] * datum.a[i][j];
        }
        num += 2 * m * form_weight_root(datum, mu, beta);
      }
    }
    if (denom == 0) {
      // weight outside the hull of V(Lambda)
      memo[alpha] = 0;
      return 0;
    }
    if (num % denom != 0) throw std::logic_error("Freudenthal: non-integral multiplicity");
    long m = num / denom;
    if (m < 0) throw std::logic_error("Freudenthal: negative multiplicity");
    memo[alpha] = m;
    return m;
  }
};

} // namespace

long weight_multiplicity(const CartanDatum& datum, const IntVec& Lambda,
                         const IntVec& alpha) {
  if (datum.rank() > 3)
    throw std::invalid_argument("weight_multiplicity: rank > 3 unsupported");
  if (!datum.finite_type())
    throw std::invalid_argument("weight_multiplicity: datum not of finite type");
  FreudenthalCtx ctx{datum, Lambda, positive_roots(datum), {}};
  return ctx.mult(alpha);
}

} // namespace qh
