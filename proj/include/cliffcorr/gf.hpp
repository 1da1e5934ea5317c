#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cliffcorr/errors.hpp"

namespace cliffcorr {

class Matrix;  // linalg.hpp

/// True if n is an odd prime.  Trial division up to sqrt(n).
bool is_odd_prime(std::uint64_t n);

/// Throws InvalidInput unless p is an odd prime small enough that products of
/// two residues fit in 64 bits (p < 2^31).  Memoizes the last accepted p so
/// per-element construction stays cheap.
void require_odd_prime(std::uint64_t p);

/// Mixes a seed with a salt so nested randomized searches that share one
/// user-facing seed draw independent, reproducible streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

/// An element of the prime field GF(p), p an odd prime.  Value is kept
/// reduced to [0, p).  All arithmetic is exact.
class Fp {
 public:
  Fp(std::uint64_t value, std::uint64_t p);

  static Fp zero(std::uint64_t p) { return Fp(0, p); }
  static Fp one(std::uint64_t p) { return Fp(1, p); }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(Fp o) const;
  Fp operator-(Fp o) const;
  Fp operator-() const;
  Fp operator*(Fp o) const;
  Fp operator/(Fp o) const { return *this * o.inv(); }

  /// Multiplicative inverse; throws InvalidInput on zero.
  Fp inv() const;
  Fp pow(std::uint64_t e) const;

  bool operator==(Fp o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(Fp o) const { return !(*this == o); }

 private:
  std::uint64_t v_;
  std::uint64_t p_;
};

/// Dense univariate polynomial over GF(p), coefficients lowest degree first,
/// trailing zeros trimmed.  The zero polynomial has degree -1.
class Poly {
 public:
  explicit Poly(std::uint64_t p);  // zero polynomial
  Poly(std::uint64_t p, std::vector<Fp> coeffs);

  /// Coefficients given as integers, reduced mod p.
  static Poly from_ints(std::uint64_t p, std::initializer_list<std::uint64_t> coeffs);
  static Poly from_ints(std::uint64_t p, const std::vector<std::uint64_t>& coeffs);
  /// x + c as a convenience for building linear factors.
  static Poly linear(Fp c);
  static Poly constant(Fp c);

  std::uint64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Fp coeff(std::size_t k) const;
  Fp leading() const;

  Fp eval(Fp x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scale(Fp c) const;
  Poly monic() const;

  /// Quotient and remainder with deg(r) < deg(divisor); divisor nonzero.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  Poly mod(const Poly& divisor) const { return divmod(divisor).second; }

  /// Formal derivative (degrees reduce mod p, so this can drop to zero).
  Poly derivative() const;

  /// Monic gcd; gcd(f, 0) = monic(f).
  static Poly gcd(Poly a, Poly b);

  /// base^e mod modulus by repeated squaring.
  static Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& modulus);

  bool operator==(const Poly& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  void trim();
  std::uint64_t p_;
  std::vector<Fp> c_;
};

/// Minimal polynomial of a square matrix: the first linear dependency among
/// I, m, m^2, ..., returned monic.  Degree is at least 1.
Poly minimal_polynomial(const Matrix& m);

/// All roots of f, where the caller guarantees f is a product of distinct
/// linear factors.  For p <= 4096 the field is evaluated exhaustively;
/// otherwise roots are found by randomized gcd splitting with
/// g = gcd(f, (x+a)^((p-1)/2) - 1) under a budget of 16 random draws.
/// Every returned root is re-checked by evaluation, and fewer roots than
/// deg(f) raises HypothesisFailure("not split ...").  Output is sorted.
std::vector<Fp> roots_of_split_squarefree(const Poly& f, std::uint64_t seed);

}  // namespace cliffcorr
