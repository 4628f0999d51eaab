#include "klr.hpp"
#include "combinat.hpp"

#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qh {

namespace {

uint64_t mix(uint64_t& state) {
  // xorshift-style step; fixed here so streams are stable across platforms
  state ^= state << 13;
  state ^= state >> 7;
  state ^= state << 17;
  return state;
}

Rat seeded_rat(uint64_t& state, bool nonzero) {
  long v = long(mix(state) % 19) - 9;
  if (nonzero && v == 0) v = long(mix(state) % 9) + 1;
  return rat(v);
}

} // namespace

Rat QMatrix::coeff(int i, int j, int p, int q) const {
  auto it = c.find({i, j, p, q});
  return it == c.end() ? rat(0) : it->second;
}

Poly QMatrix::q_poly(const std::shared_ptr<const PolyRing>& ring, int i, int j,
                     int k, int l) const {
  Poly out(ring);
  if (i == j) return out;
  for (const auto& [key, v] : c) {
    auto [ci, cj, p, q] = key;
    if (ci != i || cj != j) continue;
    Exp e(ring->nvars(), 0);
    e[k] += p;
    e[l] += q;
    out.add_term(e, v);
  }
  return out;
}

Rat QMatrix::corner(int i, int j, const CartanDatum& datum) const {
  return coeff(i, j, -datum.a[i][j], 0);
}

QMatrix QMatrix::condition_Q(const CartanDatum& datum, uint64_t seed) {
  QMatrix Q;
  Q.nnodes = datum.rank();
  Q.preset = "condq";
  Q.seed = seed;
  uint64_t state = seed * 2862933555777941757ULL + 3037000493ULL;
  for (int i = 0; i < datum.rank(); ++i)
    for (int j = i + 1; j < datum.rank(); ++j) {
      if (datum.a[i][j] == 0 && datum.a[j][i] != 0) continue;
      int m = -datum.a[i][j];
      Rat rij = seeded_rat(state, true);
      Rat rji = ((m % 2) ? -rij : rij); // r_ij = (-1)^{a_ij} r_ji
      // r_ij (u-v)^m = sum_p r_ij C(m,p) (-1)^{m-p} u^p v^{m-p}
      for (int p = 0; p <= m; ++p) {
        Rat cv = rij * rat(binomial(m, p)) * rat(((m - p) % 2) ? -1 : 1);
        Q.c[{i, j, p, m - p}] = cv;
        // Q_ji(v,u) = Q_ij(u,v): c_{j,i,q,p} = c_{i,j,p,q}
        Q.c[{j, i, m - p, p}] = cv;
      }
      (void)rji;
    }
  return Q;
}

QMatrix QMatrix::generic_homogeneous(const CartanDatum& datum, uint64_t seed) {
  QMatrix Q;
  Q.nnodes = datum.rank();
  Q.preset = "generic-hom";
  Q.seed = seed;
  uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  for (int i = 0; i < datum.rank(); ++i)
    for (int j = i + 1; j < datum.rank(); ++j) {
      int mi = -datum.a[i][j], mj = -datum.a[j][i];
      if (mi == 0) continue;
      for (int p = 0; p <= mi; ++p)
        for (int q = 0; q <= mj; ++q) {
          // degree-0 constraint on c_{i,j,p,q}
          if (datum.d[i] * (p - mi) + datum.d[j] * q != 0) continue;
          bool corner = (p == mi && q == 0) || (p == 0 && q == mj);
          Rat cv = seeded_rat(state, corner);
          Q.c[{i, j, p, q}] = cv;
          Q.c[{j, i, q, p}] = cv;
        }
    }
  return Q;
}

QMatrix QMatrix::generic(const CartanDatum& datum, uint64_t seed) {
  QMatrix Q;
  Q.nnodes = datum.rank();
  Q.preset = "generic";
  Q.seed = seed;
  uint64_t state = seed * 9223372036854775783ULL + 2971215073ULL;
  for (int i = 0; i < datum.rank(); ++i)
    for (int j = i + 1; j < datum.rank(); ++j) {
      int mi = -datum.a[i][j], mj = -datum.a[j][i];
      if (mi == 0) continue;
      for (int p = 0; p <= mi; ++p)
        for (int q = 0; q <= mj; ++q) {
          // keep the corners clean: c_{i,j,mi,q} = 0 for q>0, and dually
          if (p == mi && q > 0) continue;
          if (q == mj && p > 0) continue;
          bool corner = (p == mi && q == 0) || (p == 0 && q == mj);
          Rat cv = seeded_rat(state, corner);
          if (is_zero(cv)) continue;
          Q.c[{i, j, p, q}] = cv;
          Q.c[{j, i, q, p}] = cv;
        }
    }
  return Q;
}

QMatrix QMatrix::by_name(const std::string& name, const CartanDatum& datum,
                         uint64_t seed) {
  if (name == "condq") return condition_Q(datum, seed);
  if (name == "generic-hom") return generic_homogeneous(datum, seed);
  if (name == "generic") return generic(datum, seed);
  throw std::invalid_argument("QMatrix: unknown preset " + name);
}

std::string NormalMono::str() const {
  std::ostringstream os;
  auto word = w.canonical_word();
  for (int l : word) os << "t" << l + 1 << ".";
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k]) {
      os << "x" << k + 1;
      if (a[k] > 1) os << "^" << a[k];
      os << ".";
    }
  os << "e(";
  for (size_t k = 0; k < nu.size(); ++k) os << nu[k] + 1;
  os << ")";
  return os.str();
}

void KLRElement::add(const NormalMono& m, const Rat& c) {
  if (qh::is_zero(c)) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
  } else {
    it->second += c;
    if (qh::is_zero(it->second)) terms.erase(it);
  }
}

KLRElement& KLRElement::operator+=(const KLRElement& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

KLRElement& KLRElement::operator-=(const KLRElement& o) {
  for (const auto& [m, c] : o.terms) add(m, -c);
  return *this;
}

KLRElement KLRElement::operator+(const KLRElement& o) const {
  KLRElement r = *this;
  r += o;
  return r;
}

KLRElement KLRElement::operator-(const KLRElement& o) const {
  KLRElement r = *this;
  r -= o;
  return r;
}

KLRElement KLRElement::operator*(const Rat& c) const {
  KLRElement r;
  if (qh::is_zero(c)) return r;
  for (const auto& [m, v] : terms) r.terms.emplace(m, v * c);
  return r;
}

std::string KLRElement::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << "*" << m.str();
  }
  return os.str();
}

KLRAlgebra::KLRAlgebra(CartanDatum datum, QMatrix Q, int n)
    : datum_(std::move(datum)), Q_(std::move(Q)), n_(n),
      xring_(PolyRing::x_vars(n)) {}

KLRElement KLRAlgebra::idem(const Idem& nu) const {
  KLRElement z;
  z.add({Perm::identity(n_), std::vector<int>(n_, 0), nu}, rat(1));
  return z;
}

KLRElement KLRAlgebra::mono(const Perm& w, const std::vector<int>& a,
                            const Idem& nu) const {
  KLRElement z;
  z.add({w, a, nu}, rat(1));
  return z;
}

static void all_idems(int nnodes, int n, std::vector<Idem>& out) {
  Idem cur(n, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < nnodes; ++i) {
      cur[pos] = i;
      rec(pos + 1);
    }
  };
  rec(0);
}

KLRElement KLRAlgebra::x_gen(int k) const {
  std::vector<Idem> idems;
  all_idems(datum_.rank(), n_, idems);
  KLRElement z;
  for (const auto& nu : idems) {
    std::vector<int> a(n_, 0);
    a[k] = 1;
    z.add({Perm::identity(n_), a, nu}, rat(1));
  }
  return z;
}

KLRElement KLRAlgebra::tau_gen(int l) const {
  std::vector<Idem> idems;
  all_idems(datum_.rank(), n_, idems);
  KLRElement z;
  for (const auto& nu : idems)
    z.add({Perm::reflection(n_, l), std::vector<int>(n_, 0), nu}, rat(1));
  return z;
}

KLRElement KLRAlgebra::poly_elem(const Poly& f, const Idem& nu) const {
  KLRElement z;
  for (const auto& [e, c] : f.terms) z.add({Perm::identity(n_), e, nu}, c);
  return z;
}

KLRElement KLRAlgebra::intertwiner(int k) const {
  std::vector<Idem> idems;
  all_idems(datum_.rank(), n_, idems);
  KLRElement z;
  for (const auto& nu : idems) {
    if (nu[k] != nu[k + 1]) {
      z.add({Perm::reflection(n_, k), std::vector<int>(n_, 0), nu}, rat(1));
    } else {
      // ((x_k - x_{k+1}) tau_k + 1) e(nu); tau_k e(nu) = e(nu) tau_k here
      std::vector<int> ek(n_, 0), ek1(n_, 0);
      ek[k] = 1;
      ek1[k + 1] = 1;
      z.add({Perm::reflection(n_, k), ek, nu}, rat(1));
      z.add({Perm::reflection(n_, k), ek1, nu}, rat(-1));
      z.add({Perm::identity(n_), std::vector<int>(n_, 0), nu}, rat(1));
    }
  }
  return z;
}

KLRElement KLRAlgebra::times_idem(const KLRElement& z, const Idem& nu) const {
  KLRElement out;
  for (const auto& [m, c] : z.terms)
    if (m.nu == nu) out.add(m, c);
  return out;
}

KLRElement KLRAlgebra::idem_times(const Idem& nu, const KLRElement& z) const {
  KLRElement out;
  for (const auto& [m, c] : z.terms)
    if (m.w.act(m.nu) == nu) out.add(m, c);
  return out;
}

KLRElement KLRAlgebra::times_x(const KLRElement& z, int k, int power) const {
  KLRElement out;
  for (const auto& [m, c] : z.terms) {
    NormalMono m2 = m;
    m2.a[k] += power;
    out.add(m2, c);
  }
  return out;
}

KLRElement KLRAlgebra::times_tau(const KLRElement& z, int l) const {
  KLRElement out;
  for (const auto& [m, c] : z.terms) {
    const KLRElement& prod = mono_times_tau(m, l);
    for (const auto& [m2, c2] : prod.terms) out.add(m2, c * c2);
  }
  return out;
}

KLRElement KLRAlgebra::mono_times_tau(const NormalMono& m, int l) const {
  auto key = std::make_pair(m, l);
  auto it = tau_memo_.find(key);
  if (it != tau_memo_.end()) return it->second;

  // tau_w x^a e(nu) tau_l = tau_w x^a tau_l e(s_l nu)
  //   = tau_w tau_l (s_l x^a) e(s_l nu) + delta_{nu_l,nu_{l+1}} tau_w d_l(x^a) e(nu)
  KLRElement acc;
  Idem snu = m.nu;
  std::swap(snu[l], snu[l + 1]);
  std::vector<int> sa = m.a;
  std::swap(sa[l], sa[l + 1]);
  std::vector<int> word = m.w.canonical_word();
  word.push_back(l);
  reduce_word(word, sa, snu, rat(1), acc);

  if (m.nu[l] == m.nu[l + 1]) {
    Poly f = Poly::monomial(xring_, m.a, rat(1));
    Poly dl = divide_by_var_diff(f - f.swap_vars(l, l + 1), l + 1, l);
    for (const auto& [e, c] : dl.terms) acc.add({m.w, e, m.nu}, c);
  }

  auto [pos, inserted] = tau_memo_.emplace(std::move(key), std::move(acc));
  return pos->second;
}

KLRElement KLRAlgebra::mul(const KLRElement& a, const KLRElement& b) const {
  KLRElement out;
  for (const auto& [mb, cb] : b.terms) {
    // a * (tau_v x^b e(mu)) one generator at a time
    KLRElement cur = a;
    for (int l : mb.w.canonical_word()) cur = times_tau(cur, l);
    for (int k = 0; k < n_; ++k)
      if (mb.a[k]) cur = times_x(cur, k, mb.a[k]);
    cur = times_idem(cur, mb.nu);
    for (const auto& [m2, c2] : cur.terms) out.add(m2, c2 * cb);
  }
  return out;
}

void KLRAlgebra::slide_poly(const std::vector<int>& prefix, const Poly& g,
                            const std::vector<int>& suffix,
                            const std::vector<int>& a, const Idem& nu,
                            const Rat& coeff, KLRElement& acc) const {
  if (g.is_zero()) return;
  if (suffix.empty()) {
    for (const auto& [e, c] : g.terms) {
      std::vector<int> a2 = a;
      for (int k = 0; k < n_; ++k) a2[k] += e[k];
      reduce_word(prefix, a2, nu, coeff * c, acc);
    }
    return;
  }
  int l = suffix.front();
  std::vector<int> rest(suffix.begin() + 1, suffix.end());
  // local idempotent right of tau_l
  Idem mu = Perm::from_word(n_, rest).act(nu);
  // g tau_l e(mu) = tau_l (s_l g) e(mu) + delta d_l(g) e(mu)
  std::vector<int> pre2 = prefix;
  pre2.push_back(l);
  slide_poly(pre2, g.swap_vars(l, l + 1), rest, a, nu, coeff, acc);
  if (mu[l] == mu[l + 1]) {
    Poly dl = divide_by_var_diff(g - g.swap_vars(l, l + 1), l + 1, l);
    slide_poly(prefix, dl, rest, a, nu, coeff, acc);
  }
}

KLRAlgebra::Move KLRAlgebra::next_move(const std::vector<int>& word,
                                       const std::vector<int>& target) const {
  auto pit = path_memo_.find(target);
  if (pit == path_memo_.end()) {
    // BFS over the reduced-word graph from the target
    std::map<std::vector<int>, Move> toward;
    std::deque<std::vector<int>> queue;
    toward[target] = Move{-1, false};
    queue.push_back(target);
    auto moves_of = [](const std::vector<int>& wd) {
      std::vector<Move> ms;
      for (int i = 0; i + 1 < int(wd.size()); ++i) {
        if (std::abs(wd[i] - wd[i + 1]) >= 2) ms.push_back({i, false});
        if (i + 2 < int(wd.size()) && wd[i] == wd[i + 2] &&
            std::abs(wd[i] - wd[i + 1]) == 1)
          ms.push_back({i, true});
      }
      return ms;
    };
    auto apply = [](std::vector<int> wd, const Move& mv) {
      if (!mv.braid) {
        std::swap(wd[mv.pos], wd[mv.pos + 1]);
      } else {
        std::swap(wd[mv.pos], wd[mv.pos + 1]);
        std::swap(wd[mv.pos + 1], wd[mv.pos + 2]);
        wd[mv.pos + 2] = wd[mv.pos];
      }
      return wd;
    };
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      for (const Move& mv : moves_of(cur)) {
        auto nxt = apply(cur, mv);
        if (toward.count(nxt)) continue;
        // applying mv at nxt returns to cur (moves are involutions)
        toward[nxt] = mv;
        queue.push_back(nxt);
      }
    }
    pit = path_memo_.emplace(target, std::move(toward)).first;
  }
  auto it = pit->second.find(word);
  if (it == pit->second.end())
    throw std::logic_error("KLR: braid path not found (words not conjugate?)");
  return it->second;
}

void KLRAlgebra::reduce_word(const std::vector<int>& word,
                             const std::vector<int>& a, const Idem& nu,
                             const Rat& coeff, KLRElement& acc) const {
  if (is_zero(coeff)) return;
  if (word.empty()) {
    acc.add({Perm::identity(n_), a, nu}, coeff);
    return;
  }

  // 1. resolve an adjacent equal pair via tau^2 = Q
  for (int i = 0; i + 1 < int(word.size()); ++i) {
    if (word[i] != word[i + 1]) continue;
    int l = word[i];
    std::vector<int> prefix(word.begin(), word.begin() + i);
    std::vector<int> suffix(word.begin() + i + 2, word.end());
    Idem mu = Perm::from_word(n_, suffix).act(nu);
    if (mu[l] == mu[l + 1]) return; // Q_ii = 0
    Poly q = Q_.q_poly(xring_, mu[l], mu[l + 1], l, l + 1);
    slide_poly(prefix, q, suffix, a, nu, coeff, acc);
    return;
  }

  Perm w = Perm::from_word(n_, word);
  int len = w.length();

  if (len == int(word.size())) {
    // reduced; route to the canonical word
    std::vector<int> target = w.canonical_word();
    if (word == target) {
      acc.add({w, a, nu}, coeff);
      return;
    }
    Move mv = next_move(word, target);
    std::vector<int> moved = word;
    if (!mv.braid) {
      std::swap(moved[mv.pos], moved[mv.pos + 1]);
      reduce_word(moved, a, nu, coeff, acc);
      return;
    }
    // braid: (k+1,k,k+1) <-> (k,k+1,k) with a Demazure correction term
    int k = std::min(word[mv.pos], word[mv.pos + 1]);
    bool from_high = (word[mv.pos] == k + 1); // pattern starts with k+1
    std::swap(moved[mv.pos], moved[mv.pos + 1]);
    std::swap(moved[mv.pos + 1], moved[mv.pos + 2]);
    moved[mv.pos + 2] = moved[mv.pos];
    reduce_word(moved, a, nu, coeff, acc);

    std::vector<int> prefix(word.begin(), word.begin() + mv.pos);
    std::vector<int> suffix(word.begin() + mv.pos + 3, word.end());
    Idem mu = Perm::from_word(n_, suffix).act(nu);
    if (mu[k] == mu[k + 2]) {
      Poly q = Q_.q_poly(xring_, mu[k], mu[k + 1], k, k + 1);
      Poly corr = demazure(q, k, k + 2);
      if (!from_high) corr = -corr;
      slide_poly(prefix, corr, suffix, a, nu, coeff, acc);
    }
    return;
  }

  // 2. non-reduced: bring the shortest non-reduced prefix to end with a
  //    doubled letter
  int j = 0;
  Perm p = Perm::identity(n_);
  for (;; ++j) {
    Perm next = p * Perm::reflection(n_, word[j]);
    if (next.length() < p.length() + 1) break;
    p = next;
  }
  // word[0..j-1] is reduced and word[j] is a right descent of p
  int l = word[j];
  std::vector<int> target = (p * Perm::reflection(n_, l)).canonical_word();
  target.push_back(l);
  std::vector<int> prefix(word.begin(), word.begin() + j);
  if (prefix == target) throw std::logic_error("KLR: reduce_word loop");
  Move mv = next_move(prefix, target);
  std::vector<int> suffix(word.begin() + j, word.end());
  std::vector<int> moved = prefix;
  if (!mv.braid) {
    std::swap(moved[mv.pos], moved[mv.pos + 1]);
    moved.insert(moved.end(), suffix.begin(), suffix.end());
    reduce_word(moved, a, nu, coeff, acc);
    return;
  }
  int k = std::min(prefix[mv.pos], prefix[mv.pos + 1]);
  bool from_high = (prefix[mv.pos] == k + 1);
  std::swap(moved[mv.pos], moved[mv.pos + 1]);
  std::swap(moved[mv.pos + 1], moved[mv.pos + 2]);
  moved[mv.pos + 2] = moved[mv.pos];
  std::vector<int> whole = moved;
  whole.insert(whole.end(), suffix.begin(), suffix.end());
  reduce_word(whole, a, nu, coeff, acc);

  std::vector<int> pre2(prefix.begin(), prefix.begin() + mv.pos);
  std::vector<int> post(prefix.begin() + mv.pos + 3, prefix.end());
  post.insert(post.end(), suffix.begin(), suffix.end());
  Idem mu = Perm::from_word(n_, post).act(nu);
  if (mu[k] == mu[k + 2]) {
    Poly q = Q_.q_poly(xring_, mu[k], mu[k + 1], k, k + 1);
    Poly corr = demazure(q, k, k + 2);
    if (!from_high) corr = -corr;
    slide_poly(pre2, corr, post, a, nu, coeff, acc);
  }
}

int KLRAlgebra::degree(const NormalMono& m) const {
  int d = 0;
  for (int k = 0; k < n_; ++k) d += 2 * datum_.d[m.nu[k]] * m.a[k];
  Idem mu = m.nu;
  auto word = m.w.canonical_word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int l = *it;
    d += -datum_.d[mu[l]] * datum_.a[mu[l]][mu[l + 1]];
    std::swap(mu[l], mu[l + 1]);
  }
  return d;
}

int KLRAlgebra::degree(const KLRElement& z) const {
  if (z.is_zero()) return 0;
  int d = degree(z.terms.begin()->first);
  for (const auto& [m, c] : z.terms)
    if (degree(m) != d) throw std::logic_error("KLR: inhomogeneous element");
  return d;
}

std::vector<Idem> KLRAlgebra::idems_for(const IntVec& alpha) const {
  std::vector<Idem> out;
  Idem cur;
  IntVec left = alpha;
  std::function<void()> rec = [&]() {
    if (int(cur.size()) == n_) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < datum_.rank(); ++i) {
      if (left[i] == 0) continue;
      left[i]--;
      cur.push_back(i);
      rec();
      cur.pop_back();
      left[i]++;
    }
  };
  int h = 0;
  for (int v : alpha) h += v;
  if (h != n_) throw std::invalid_argument("idems_for: height mismatch");
  rec();
  return out;
}

int KLRAlgebra::min_monomial_degree(const IntVec& alpha) const {
  int best = 0;
  for (const auto& nu : idems_for(alpha))
    for (const auto& w : Perm::all(n_)) {
      NormalMono m{w, std::vector<int>(n_, 0), nu};
      best = std::min(best, degree(m));
    }
  return best;
}

std::vector<NormalMono> KLRAlgebra::monomials_of_degree(const IntVec& alpha,
                                                        int d) const {
  std::vector<NormalMono> out;
  for (const auto& nu : idems_for(alpha)) {
    for (const auto& w : Perm::all(n_)) {
      NormalMono base{w, std::vector<int>(n_, 0), nu};
      int rest = d - degree(base);
      if (rest < 0 || rest % 2) continue;
      // exponent vectors a with sum_k 2 d_{nu_k} a_k = rest
      std::vector<int> a(n_, 0);
      std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n_) {
          if (left == 0) out.push_back({w, a, nu});
          return;
        }
        int step = 2 * datum_.d[nu[pos]];
        for (int v = 0; v * step <= left; ++v) {
          a[pos] = v;
          rec(pos + 1, left - v * step);
        }
        a[pos] = 0;
      };
      rec(0, rest);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long KLRAlgebra::count_monomials_of_degree(const IntVec& alpha, int d) const {
  return long(monomials_of_degree(alpha, d).size());
}

} // namespace qh
