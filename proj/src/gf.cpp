#include "cliffcorr/gf.hpp"

#include <algorithm>
#include <random>

#include "cliffcorr/linalg.hpp"

namespace cliffcorr {

bool is_odd_prime(std::uint64_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_odd_prime(std::uint64_t p) {
  thread_local std::uint64_t last_ok = 0;
  if (p == last_ok) return;
  if (p >= (std::uint64_t{1} << 31)) {
    throw InvalidInput("characteristic too large: p must be below 2^31, got " + std::to_string(p));
  }
  if (!is_odd_prime(p)) {
    throw InvalidInput("characteristic must be an odd prime, got " + std::to_string(p));
  }
  last_ok = p;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  // splitmix64 finalizer over seed xor a salted odd constant
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Fp::Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) { require_odd_prime(p); }

Fp Fp::operator+(Fp o) const {
  std::uint64_t s = v_ + o.v_;
  if (s >= p_) s -= p_;
  return Fp(s, p_);
}

Fp Fp::operator-(Fp o) const { return Fp(v_ + p_ - o.v_, p_); }

Fp Fp::operator-() const { return Fp(p_ - v_, p_); }

Fp Fp::operator*(Fp o) const { return Fp(v_ * o.v_, p_); }

Fp Fp::inv() const {
  if (v_ == 0) throw InvalidInput("division by zero in GF(" + std::to_string(p_) + ")");
  return pow(p_ - 2);
}

Fp Fp::pow(std::uint64_t e) const {
  std::uint64_t base = v_, acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return Fp(acc, p_);
}

Poly::Poly(std::uint64_t p) : p_(p) { require_odd_prime(p); }

Poly::Poly(std::uint64_t p, std::vector<Fp> coeffs) : p_(p), c_(std::move(coeffs)) {
  require_odd_prime(p);
  for (const Fp& c : c_) {
    if (c.modulus() != p_) throw InvalidInput("polynomial coefficient over wrong field");
  }
  trim();
}

Poly Poly::from_ints(std::uint64_t p, std::initializer_list<std::uint64_t> coeffs) {
  return from_ints(p, std::vector<std::uint64_t>(coeffs));
}

Poly Poly::from_ints(std::uint64_t p, const std::vector<std::uint64_t>& coeffs) {
  std::vector<Fp> c;
  c.reserve(coeffs.size());
  for (std::uint64_t x : coeffs) c.emplace_back(x, p);
  return Poly(p, std::move(c));
}

Poly Poly::linear(Fp c) { return Poly(c.modulus(), {c, Fp::one(c.modulus())}); }

Poly Poly::constant(Fp c) { return Poly(c.modulus(), {c}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Fp Poly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Fp::zero(p_); }

Fp Poly::leading() const {
  if (c_.empty()) throw InvalidInput("zero polynomial has no leading coefficient");
  return c_.back();
}

Fp Poly::eval(Fp x) const {
  Fp acc = Fp::zero(p_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Fp> c;
  std::size_t n = std::max(c_.size(), o.c_.size());
  c.reserve(n);
  for (std::size_t k = 0; k < n; ++k) c.push_back(coeff(k) + o.coeff(k));
  return Poly(p_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Fp> c;
  std::size_t n = std::max(c_.size(), o.c_.size());
  c.reserve(n);
  for (std::size_t k = 0; k < n; ++k) c.push_back(coeff(k) - o.coeff(k));
  return Poly(p_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(p_);
  std::vector<Fp> c(c_.size() + o.c_.size() - 1, Fp::zero(p_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
  }
  return Poly(p_, std::move(c));
}

Poly Poly::scale(Fp s) const {
  std::vector<Fp> c;
  c.reserve(c_.size());
  for (const Fp& x : c_) c.push_back(x * s);
  return Poly(p_, std::move(c));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(leading().inv());
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw InvalidInput("polynomial division by zero");
  Poly rem = *this;
  std::vector<Fp> q;
  int dd = divisor.degree();
  if (rem.degree() >= dd) q.assign(static_cast<std::size_t>(rem.degree() - dd) + 1, Fp::zero(p_));
  Fp lead_inv = divisor.leading().inv();
  while (rem.degree() >= dd) {
    std::size_t shift = static_cast<std::size_t>(rem.degree() - dd);
    Fp factor = rem.leading() * lead_inv;
    q[shift] = factor;
    // rem -= factor * x^shift * divisor
    std::vector<Fp> sub(shift + divisor.c_.size(), Fp::zero(p_));
    for (std::size_t k = 0; k < divisor.c_.size(); ++k) sub[shift + k] = divisor.c_[k] * factor;
    rem = rem - Poly(p_, std::move(sub));
  }
  return {Poly(p_, std::move(q)), rem};
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(p_);
  std::vector<Fp> c;
  c.reserve(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * Fp(k, p_));
  return Poly(p_, std::move(c));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.mod(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly Poly::pow_mod(const Poly& base, std::uint64_t e, const Poly& modulus) {
  if (modulus.degree() < 1) throw InvalidInput("pow_mod needs a modulus of positive degree");
  Poly acc = Poly::constant(Fp::one(base.modulus()));
  Poly b = base.mod(modulus);
  while (e > 0) {
    if (e & 1) acc = (acc * b).mod(modulus);
    b = (b * b).mod(modulus);
    e >>= 1;
  }
  return acc;
}

Poly minimal_polynomial(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("minimal polynomial needs a square matrix");
  if (m.rows() == 0) throw InvalidInput("minimal polynomial of an empty matrix is undefined");
  const std::uint64_t p = m.modulus();
  const std::size_t n = m.rows();
  std::vector<Vec> flats;           // flattened powers I, m, m^2, ...
  Matrix power = Matrix::identity(p, n);
  flats.push_back(power.flatten());
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * m;
    flats.push_back(power.flatten());
    // first dependency among the k+1 stacked powers gives the minimal polynomial
    Subspace ns = nullspace(Matrix::from_rows(p, flats).transpose());
    if (ns.dim() > 0) {
      Vec dep = ns.basis().row(0);
      std::vector<Fp> coeffs;
      coeffs.reserve(k + 1);
      for (std::size_t t = 0; t <= k; ++t) coeffs.push_back(dep.at(t));
      return Poly(p, std::move(coeffs)).monic();
    }
  }
  throw TheoremCheckFailure("no matrix annihilator of degree <= dimension found");
}

namespace {

void split_linear_factors(const Poly& f, std::mt19937_64& rng, int& budget, std::vector<Fp>& roots) {
  const std::uint64_t p = f.modulus();
  if (f.degree() <= 0) return;
  if (f.degree() == 1) {
    Poly m = f.monic();
    roots.push_back(-m.coeff(0));
    return;
  }
  while (true) {
    if (budget <= 0) {
      throw HypothesisFailure("not split: randomized splitting budget exhausted for degree " +
                              std::to_string(f.degree()) + " factor over GF(" + std::to_string(p) + ")");
    }
    --budget;
    Fp a(rng() % p, p);
    Poly base = Poly::linear(a);  // x + a
    Poly h = Poly::pow_mod(base, (p - 1) / 2, f) - Poly::constant(Fp::one(p));
    Poly g = Poly::gcd(f, h);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      split_linear_factors(g, rng, budget, roots);
      split_linear_factors(f.divmod(g).first, rng, budget, roots);
      return;
    }
  }
}

}  // namespace

std::vector<Fp> roots_of_split_squarefree(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw InvalidInput("the zero polynomial has no well-defined root set");
  const std::uint64_t p = f.modulus();
  std::vector<Fp> roots;
  if (f.degree() == 0) return roots;
  if (p <= 4096) {
    for (std::uint64_t a = 0; a < p; ++a) {
      Fp x(a, p);
      if (f.eval(x).is_zero()) roots.push_back(x);
    }
  } else {
    std::mt19937_64 rng(seed);
    int budget = 16;
    split_linear_factors(f.monic(), rng, budget, roots);
  }
  std::sort(roots.begin(), roots.end(),
            [](Fp a, Fp b) { return a.value() < b.value(); });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (Fp r : roots) {
    if (!f.eval(r).is_zero()) throw TheoremCheckFailure("root candidate fails re-evaluation");
  }
  if (static_cast<int>(roots.size()) != f.degree()) {
    throw HypothesisFailure("not split: found " + std::to_string(roots.size()) + " roots for degree " +
                            std::to_string(f.degree()) + " over GF(" + std::to_string(p) + ")");
  }
  return roots;
}

}  // namespace cliffcorr
