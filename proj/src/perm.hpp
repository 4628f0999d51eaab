#ifndef QH_PERM_HPP
#define QH_PERM_HPP

#include <compare>
#include <string>
#include <vector>

namespace qh {

// Permutations of {0,..,n-1} in one-line notation.  Products compose
// functions: (w*v)(i) = w(v(i)).  Simple reflection s_k swaps k,k+1
// (0-based, k in [0,n-2]).
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> img);
  static Perm identity(int n);
  static Perm reflection(int n, int k); // s_k
  static Perm transposition(int n, int a, int b);
  static Perm from_word(int n, const std::vector<int>& word);
  static std::vector<Perm> all(int n);

  int size() const { return int(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  const std::vector<int>& one_line() const { return image_; }

  Perm operator*(const Perm& v) const;
  Perm inverse() const;
  bool is_identity() const;

  int length() const; // inversion count
  bool left_descent(int k) const;  // l(s_k w) < l(w)
  bool right_descent(int k) const; // l(w s_k) < l(w)

  // lexicographically smallest reduced word; the fixed choice behind tau_w
  std::vector<int> canonical_word() const;

  // act on a tuple of labels: (w . nu)_k = nu_{w^{-1}(k)}
  template <class T>
  std::vector<T> act(const std::vector<T>& nu) const {
    Perm inv = inverse();
    std::vector<T> out(nu.size());
    for (size_t k = 0; k < nu.size(); ++k) out[k] = nu[inv.image_[k]];
    return out;
  }

  auto operator<=>(const Perm& o) const = default;
  std::string str() const;

 private:
  std::vector<int> image_;
};

// every reduced word of w (small n only)
std::vector<std::vector<int>> reduced_words(const Perm& w);

} // namespace qh

#endif
