#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace quivermod {

// Prime field F_p for p < 2^31.  Stateless apart from the modulus, so field
// objects are freely copyable and comparable.
struct FpField {
  using value_type = std::uint32_t;

  std::uint32_t p = 32003;

  FpField() = default;
  explicit FpField(std::uint32_t prime) : p(prime) {
    if (p < 2 || !probably_prime(p))
      throw input_error("field modulus " + std::to_string(p) + " is not prime");
  }

  static bool probably_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return s >= p ? value_type(s - p) : value_type(s);
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : value_type(a + p - b);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const {
    return value_type(std::uint64_t(a) * b % p);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw input_error("division by zero in F_p");
    // Extended Euclid.
    std::int64_t t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
      std::int64_t q = r / newr;
      t -= q * newt;
      std::swap(t, newt);
      r -= q * newr;
      std::swap(r, newr);
    }
    if (t < 0) t += p;
    return value_type(t);
  }
  value_type from_int(Int x) const {
    Int m = x % Int(p);
    if (m < 0) m += p;
    return value_type(m);
  }
  // Uniform-ish sample from the raw generator output; the tiny modulo bias is
  // irrelevant here, determinism across platforms is what matters.
  value_type sample(std::mt19937_64& rng) const {
    return value_type(rng() % p);
  }
  std::string str(value_type a) const { return std::to_string(a); }

  friend bool operator==(const FpField& a, const FpField& b) {
    return a.p == b.p;
  }
};

// Exact rationals (arbitrary precision), for certification reruns.
struct QField {
  using value_type = boost::multiprecision::cpp_rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return a == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw input_error("division by zero");
    return 1 / a;
  }
  value_type from_int(Int x) const { return value_type(x); }
  // Small integers; collisions are as unlikely as the use cases need.
  value_type sample(std::mt19937_64& rng) const {
    return value_type(Int(rng() % 2001) - 1000);
  }
  std::string str(const value_type& a) const { return a.str(); }

  friend bool operator==(const QField&, const QField&) { return true; }
};

}  // namespace quivermod
