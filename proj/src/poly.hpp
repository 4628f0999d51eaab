#ifndef QH_POLY_HPP
#define QH_POLY_HPP

#include "rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qh {

// A named variable alphabet with per-variable degree weights.
// Polynomials over different rings never mix.
struct PolyRing {
  std::vector<std::string> names;
  std::vector<int> weights;

  PolyRing() = default;
  PolyRing(std::vector<std::string> n, std::vector<int> w)
      : names(std::move(n)), weights(std::move(w)) {
    if (names.size() != weights.size())
      throw std::invalid_argument("PolyRing: names/weights size mismatch");
  }

  size_t nvars() const { return names.size(); }
  int var(const std::string& name) const;

  // x_1..x_n of degree 2*d each (d may vary per call site, see klr)
  static std::shared_ptr<const PolyRing> x_vars(int n, int weight = 2);
};

using Exp = std::vector<int>; // dense exponent vector, one slot per ring variable

// Sparse exact multivariate polynomial.  Zero coefficients are never stored.
class Poly {
 public:
  std::shared_ptr<const PolyRing> ring;
  std::map<Exp, Rat> terms;

  Poly() = default;
  explicit Poly(std::shared_ptr<const PolyRing> r) : ring(std::move(r)) {}

  static Poly constant(std::shared_ptr<const PolyRing> r, const Rat& c);
  static Poly variable(std::shared_ptr<const PolyRing> r, int v, int power = 1);
  static Poly monomial(std::shared_ptr<const PolyRing> r, const Exp& e, const Rat& c);

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  Rat constant_value() const; // requires is_constant()

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator*=(const Rat& c);
  Poly operator*(const Rat& c) const;
  bool operator==(const Poly& o) const { return terms == o.terms; }

  void add_term(const Exp& e, const Rat& c);

  // weighted total degree of each monomial; nullopt for 0 and for
  // inhomogeneous polynomials
  std::optional<int> degree() const;
  bool is_homogeneous() const { return is_zero() || degree().has_value(); }
  int degree_in(int v) const; // max exponent of variable v

  Poly swap_vars(int v1, int v2) const;
  Poly subst_var(int v, const Poly& value) const; // substitute one variable
  Rat eval(const std::vector<Rat>& point) const;
  // evaluate only some variables, producing a polynomial in a target ring
  Poly eval_partial(const std::vector<std::optional<Rat>>& point,
                    std::shared_ptr<const PolyRing> target,
                    const std::vector<int>& var_map) const;

  std::string str() const;
};

// (f - (k,l)f) / (x_k - x_l); division is exact, throws on nonzero remainder.
Poly demazure(const Poly& f, int k, int l);

// exact division by (x_k - x_l); throws if remainder nonzero
Poly divide_by_var_diff(const Poly& f, int k, int l);

// elementary symmetric polynomial e_p of the listed variables
Poly elementary_symmetric(std::shared_ptr<const PolyRing> r, int p,
                          const std::vector<int>& vars);
// power sum p_k of the listed variables
Poly power_sum(std::shared_ptr<const PolyRing> r, int k, const std::vector<int>& vars);
// complete homogeneous h_k of the listed variables
Poly complete_homogeneous(std::shared_ptr<const PolyRing> r, int k,
                          const std::vector<int>& vars);

} // namespace qh

#endif
