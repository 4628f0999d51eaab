#ifndef QH_COMBINAT_HPP
#define QH_COMBINAT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qh {

using Partition = std::vector<int>; // weakly decreasing positive parts

// all partitions of n
std::vector<Partition> partitions_of(int n);

// r-multipartitions of n (ordered r-tuples of partitions with total size n)
std::vector<std::vector<Partition>> multipartitions(int r, int n);

// partitions mu with len(mu) + sum_i floor(mu_i / r) <= n
std::vector<Partition> restricted_partitions(int n, int r);

// weakly decreasing tuples in N^n (dominant weight strings), entries <= maxpart
std::vector<Partition> dominant_tuples(int n, int maxpart);

// Gaussian binomial [k choose n]_{t^2} as degree -> count
// (partitions inside an n x (k-n) box, degree 2|mu|)
std::map<int, long> gaussian_binomial_t2(int k, int n);

long long binomial(int n, int k);
long long factorial(int n);

// Truncated series in q whose coefficients are Laurent-free polynomials in t.
// coeffs[qexp][texp] = integer coefficient.
struct QTSeries {
  int qmax = 0; // exponents kept: 0..qmax
  std::map<int, std::map<int, long long>> coeffs;

  static QTSeries one(int qmax);
  long long coeff(int qexp, int texp) const;
  std::map<int, long long> q_coefficient(int qexp) const; // poly in t
  QTSeries mul(const QTSeries& o) const;
  bool operator==(const QTSeries& o) const { return coeffs == o.coeffs; }
  std::string str() const;
};

struct ProductFactor {
  int qexp;     // a in (1 - q^a t^b)^{-m}
  int texp;     // b
  int mult;     // m > 0 means inverse factor to power m; m < 0 a plain factor
};

// expand prod (1 - q^a t^b)^{-m} to order qmax (t exact per q-coefficient;
// factors with qexp == 0 are rejected)
QTSeries series_expand(const std::vector<ProductFactor>& factors, int qmax);

// the factor list of prod_{j>=1} (1-q^{2j})^{-r} up to q order qmax
std::vector<ProductFactor> colored_partition_factors(int r, int qmax);

// the factor list of prod_{p=1}^r prod_{i>=1} (1-q^{2i} t^{2(ri+p-1-r)})^{-1}
std::vector<ProductFactor> instanton_factors(int r, int qmax);

} // namespace qh

#endif
