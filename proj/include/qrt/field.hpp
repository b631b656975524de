#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qrt {

/// Element of the prime field GF(p) for a runtime modulus p.
/// Every element carries its modulus; mixing moduli is a logic error.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  explicit Fp(std::uint64_t prime) : v(0), p(prime) {}
  Fp(long long value, std::uint64_t prime) : p(prime) {
    long long r = value % static_cast<long long>(prime);
    if (r < 0) r += static_cast<long long>(prime);
    v = static_cast<std::uint64_t>(r);
  }

  Fp zero() const { return Fp(p); }
  Fp one() const { return Fp(1, p); }
  bool is_zero() const { return v == 0; }

  friend Fp operator+(Fp a, Fp b) {
    check(a, b);
    std::uint64_t s = a.v + b.v;
    if (s >= a.p) s -= a.p;
    return Fp::raw(s, a.p);
  }
  friend Fp operator-(Fp a, Fp b) {
    check(a, b);
    std::uint64_t s = a.v + a.p - b.v;
    if (s >= a.p) s -= a.p;
    return Fp::raw(s, a.p);
  }
  Fp operator-() const { return Fp::raw(v == 0 ? 0 : p - v, p); }
  friend Fp operator*(Fp a, Fp b) {
    check(a, b);
    return Fp::raw(static_cast<std::uint64_t>(
                       (static_cast<unsigned __int128>(a.v) * b.v) % a.p),
                   a.p);
  }
  Fp inv() const {
    if (v == 0) throw std::domain_error("Fp: inverse of zero");
    return pow(p - 2);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  Fp pow(std::uint64_t e) const {
    Fp r = one(), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  friend bool operator==(Fp a, Fp b) {
    check(a, b);
    return a.v == b.v;
  }
  friend bool operator!=(Fp a, Fp b) { return !(a == b); }

  std::string str() const { return std::to_string(v); }

  /// value must already lie in [0, prime).
  static Fp raw(std::uint64_t value, std::uint64_t prime) {
    Fp r;
    r.v = value;
    r.p = prime;
    return r;
  }

 private:
  static void check(Fp a, Fp b) {
    if (a.p != b.p) throw std::logic_error("Fp: mixed moduli");
  }
};

/// Arbitrary-precision rational, always normalized (gmp keeps lowest terms
/// with positive denominator).
struct Rat {
  mpq_class q;

  Rat() : q(0) {}
  Rat(long long n) : q(static_cast<long>(n)) {}
  Rat(long long n, long long d) : q(static_cast<long>(n), static_cast<long>(d)) {
    q.canonicalize();
  }
  explicit Rat(const mpq_class& x) : q(x) { q.canonicalize(); }

  Rat zero() const { return Rat(0); }
  Rat one() const { return Rat(1); }
  bool is_zero() const { return q == 0; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q + b.q)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q - b.q)); }
  Rat operator-() const { return Rat(mpq_class(-q)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q * b.q)); }
  Rat inv() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(1 / q));
  }
  friend Rat operator/(const Rat& a, const Rat& b) { return a * b.inv(); }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q == b.q; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q != b.q; }

  std::string str() const { return q.get_str(); }
};

/// Default modulus for all decomposition-dependent computation. Larger than
/// every total dimension arising in the suite, so the trace form on an
/// endomorphism ring detects its radical.
inline constexpr std::uint64_t kDefaultPrime = 1000003;

/// Fallback primes for the rare case a decomposition needs a fresh field.
inline constexpr std::uint64_t kRetryPrimes[] = {1000003, 1000033, 1000037,
                                                 1000039, 1000081};

template <class F>
concept Field = requires(F a, F b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a.inv() } -> std::convertible_to<F>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.zero() } -> std::convertible_to<F>;
  { a.one() } -> std::convertible_to<F>;
};

}  // namespace qrt
