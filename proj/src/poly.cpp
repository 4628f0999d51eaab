#include "poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qh {

int PolyRing::var(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return int(i);
  throw std::out_of_range("PolyRing: no variable named " + name);
}

std::shared_ptr<const PolyRing> PolyRing::x_vars(int n, int weight) {
  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i = 1; i <= n; ++i) {
    names.push_back("x" + std::to_string(i));
    weights.push_back(weight);
  }
  return std::make_shared<const PolyRing>(std::move(names), std::move(weights));
}

Poly Poly::constant(std::shared_ptr<const PolyRing> r, const Rat& c) {
  Poly p(std::move(r));
  if (!qh::is_zero(c)) p.terms.emplace(Exp(p.ring->nvars(), 0), c);
  return p;
}

Poly Poly::variable(std::shared_ptr<const PolyRing> r, int v, int power) {
  Poly p(std::move(r));
  Exp e(p.ring->nvars(), 0);
  e[v] = power;
  p.terms.emplace(std::move(e), rat(1));
  return p;
}

Poly Poly::monomial(std::shared_ptr<const PolyRing> r, const Exp& e, const Rat& c) {
  Poly p(std::move(r));
  if (!qh::is_zero(c)) p.terms.emplace(e, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms.empty()) return true;
  if (terms.size() > 1) return false;
  const Exp& e = terms.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rat Poly::constant_value() const {
  if (terms.empty()) return rat(0);
  if (!is_constant()) throw std::logic_error("Poly: not a constant");
  return terms.begin()->second;
}

void Poly::add_term(const Exp& e, const Rat& c) {
  if (qh::is_zero(c)) return;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms.emplace(e, c);
  } else {
    it->second += c;
    if (qh::is_zero(it->second)) terms.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (!ring) ring = o.ring;
  for (const auto& [e, c] : o.terms) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!ring) ring = o.ring;
  for (const auto& [e, c] : o.terms) add_term(e, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator-() const {
  Poly r(ring);
  for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(ring ? ring : o.ring);
  for (const auto& [e1, c1] : terms)
    for (const auto& [e2, c2] : o.terms) {
      Exp e = e1;
      for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

Poly& Poly::operator*=(const Rat& c) {
  if (qh::is_zero(c)) {
    terms.clear();
    return *this;
  }
  for (auto& [e, v] : terms) v *= c;
  return *this;
}

Poly Poly::operator*(const Rat& c) const {
  Poly r = *this;
  r *= c;
  return r;
}

std::optional<int> Poly::degree() const {
  std::optional<int> deg;
  for (const auto& [e, c] : terms) {
    int d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += e[i] * ring->weights[i];
    if (!deg)
      deg = d;
    else if (*deg != d)
      return std::nullopt;
  }
  return deg;
}

int Poly::degree_in(int v) const {
  int d = 0;
  for (const auto& [e, c] : terms) d = std::max(d, e[v]);
  return d;
}

Poly Poly::swap_vars(int v1, int v2) const {
  Poly r(ring);
  for (const auto& [e, c] : terms) {
    Exp f = e;
    std::swap(f[v1], f[v2]);
    r.add_term(f, c);
  }
  return r;
}

Poly Poly::subst_var(int v, const Poly& value) const {
  Poly r(ring);
  for (const auto& [e, c] : terms) {
    Exp f = e;
    int power = f[v];
    f[v] = 0;
    Poly term = Poly::monomial(ring, f, c);
    for (int i = 0; i < power; ++i) term = term * value;
    r += term;
  }
  return r;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
  Rat total = rat(0);
  for (const auto& [e, c] : terms) {
    Rat v = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) v *= point[i];
    total += v;
  }
  return total;
}

Poly Poly::eval_partial(const std::vector<std::optional<Rat>>& point,
                        std::shared_ptr<const PolyRing> target,
                        const std::vector<int>& var_map) const {
  Poly r(target);
  for (const auto& [e, c] : terms) {
    Rat v = c;
    Exp f(target->nvars(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (point[i]) {
        for (int p = 0; p < e[i]; ++p) v *= *point[i];
      } else {
        f[var_map[i]] += e[i];
      }
    }
    r.add_term(f, v);
  }
  return r;
}

std::string Poly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << ring->names[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

Poly divide_by_var_diff(const Poly& f, int k, int l) {
  // long division by (x_k - x_l), monic in x_k
  Poly rem = f;
  Poly quo(f.ring);
  while (!rem.terms.empty()) {
    // highest x_k-exponent term (map order is lex on exponent vectors, so scan)
    auto lead = rem.terms.end();
    int best = 0;
    for (auto it = rem.terms.begin(); it != rem.terms.end(); ++it) {
      if (it->first[k] > best || (it->first[k] > 0 && lead == rem.terms.end())) {
        best = it->first[k];
        lead = it;
      }
    }
    if (lead == rem.terms.end()) break; // no term involves x_k
    Exp e = lead->first;
    Rat c = lead->second;
    e[k] -= 1;
    quo.add_term(e, c);
    // rem -= c*x^e * (x_k - x_l)
    Exp ek = e, el = e;
    ek[k] += 1;
    el[l] += 1;
    rem.add_term(ek, -c);
    rem.add_term(el, c);
  }
  if (!rem.terms.empty())
    throw std::logic_error("divide_by_var_diff: nonzero remainder");
  return quo;
}

Poly demazure(const Poly& f, int k, int l) {
  return divide_by_var_diff(f - f.swap_vars(k, l), k, l);
}

Poly elementary_symmetric(std::shared_ptr<const PolyRing> r, int p,
                          const std::vector<int>& vars) {
  int n = int(vars.size());
  if (p < 0 || p > n) return Poly(r);
  if (p == 0) return Poly::constant(r, rat(1));
  Poly total(r);
  std::vector<int> idx(p);
  // iterate p-subsets of vars
  for (int i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    Exp e(r->nvars(), 0);
    for (int i = 0; i < p; ++i) e[vars[idx[i]]] += 1;
    total.add_term(e, rat(1));
    int i = p - 1;
    while (i >= 0 && idx[i] == n - p + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
  return total;
}

Poly power_sum(std::shared_ptr<const PolyRing> r, int k, const std::vector<int>& vars) {
  Poly total(r);
  if (k == 0) return Poly::constant(r, rat(long(vars.size())));
  for (int v : vars) {
    Exp e(r->nvars(), 0);
    e[v] = k;
    total.add_term(e, rat(1));
  }
  return total;
}

Poly complete_homogeneous(std::shared_ptr<const PolyRing> r, int k,
                          const std::vector<int>& vars) {
  if (k < 0) return Poly(r);
  if (k == 0) return Poly::constant(r, rat(1));
  // h_k = sum of all monomials of degree k in vars
  Poly total(r);
  std::vector<int> comp(vars.size(), 0);
  // iterate weak compositions of k into |vars| parts
  std::function<void(size_t, int)> rec = [&](size_t pos, int rest) {
    if (pos + 1 == comp.size()) {
      comp[pos] = rest;
      Exp e(r->nvars(), 0);
      for (size_t i = 0; i < vars.size(); ++i) e[vars[i]] += comp[i];
      total.add_term(e, rat(1));
      return;
    }
    for (int c = 0; c <= rest; ++c) {
      comp[pos] = c;
      rec(pos + 1, rest - c);
    }
  };
  if (vars.empty()) return Poly(r); // h_k of no variables is 0 for k>0
  rec(0, k);
  return total;
}

} // namespace qh
