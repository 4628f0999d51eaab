#include "perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qh {

Perm::Perm(std::vector<int> img) : image_(std::move(img)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= int(image_.size()) || seen[v])
      throw std::invalid_argument("Perm: not a bijection");
    seen[v] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::reflection(int n, int k) { return transposition(n, k, k + 1); }

Perm Perm::transposition(int n, int a, int b) {
  Perm p = identity(n);
  std::swap(p.image_[a], p.image_[b]);
  return p;
}

Perm Perm::from_word(int n, const std::vector<int>& word) {
  Perm p = identity(n);
  for (int k : word) p = p * reflection(n, k);
  return p;
}

std::vector<Perm> Perm::all(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(Perm(img));
  } while (std::next_permutation(img.begin(), img.end()));
  std::sort(out.begin(), out.end());
  return out;
}

Perm Perm::operator*(const Perm& v) const {
  std::vector<int> img(image_.size());
  for (size_t i = 0; i < img.size(); ++i) img[i] = image_[v.image_[i]];
  Perm p;
  p.image_ = std::move(img);
  return p;
}

Perm Perm::inverse() const {
  std::vector<int> img(image_.size());
  for (size_t i = 0; i < img.size(); ++i) img[image_[i]] = int(i);
  Perm p;
  p.image_ = std::move(img);
  return p;
}

bool Perm::is_identity() const {
  for (size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != int(i)) return false;
  return true;
}

int Perm::length() const {
  int inv = 0;
  for (size_t i = 0; i < image_.size(); ++i)
    for (size_t j = i + 1; j < image_.size(); ++j)
      if (image_[i] > image_[j]) ++inv;
  return inv;
}

bool Perm::left_descent(int k) const {
  // l(s_k w) < l(w)  iff  w^{-1}(k) > w^{-1}(k+1)
  Perm inv = inverse();
  return inv.image_[k] > inv.image_[k + 1];
}

bool Perm::right_descent(int k) const { return image_[k] > image_[k + 1]; }

std::vector<int> Perm::canonical_word() const {
  // greedy smallest left descent at each step
  std::vector<int> word;
  Perm w = *this;
  while (!w.is_identity()) {
    for (int k = 0; k + 1 < w.size(); ++k) {
      if (w.left_descent(k)) {
        word.push_back(k);
        w = reflection(w.size(), k) * w;
        break;
      }
    }
  }
  return word;
}

std::string Perm::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < image_.size(); ++i) {
    if (i) os << " ";
    os << image_[i] + 1;
  }
  os << "]";
  return os.str();
}

std::vector<std::vector<int>> reduced_words(const Perm& w) {
  std::vector<std::vector<int>> out;
  if (w.is_identity()) {
    out.push_back({});
    return out;
  }
  for (int k = 0; k + 1 < w.size(); ++k) {
    if (!w.left_descent(k)) continue;
    Perm rest = Perm::reflection(w.size(), k) * w;
    for (auto tail : reduced_words(rest)) {
      tail.insert(tail.begin(), k);
      out.push_back(std::move(tail));
    }
  }
  return out;
}

} // namespace qh
