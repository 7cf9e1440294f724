#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sptlab/errors.hpp"

namespace sptlab {

/// Runtime description of a coefficient ring: exact integers or Z/mZ.
struct CoeffRing {
  enum class Kind { exact_integer, residue };

  Kind kind = Kind::exact_integer;
  std::uint64_t modulus = 0;  // residue kind only

  static CoeffRing integers() { return {}; }
  static CoeffRing residues(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("residue ring modulus must be >= 2");
    return {Kind::residue, m};
  }

  /// "Z" or "Zmod:<m>", as used in cache headers.
  std::string to_string() const {
    return kind == Kind::exact_integer ? std::string("Z") : "Zmod:" + std::to_string(modulus);
  }

  static CoeffRing parse(std::string_view text) {
    if (text == "Z") return integers();
    constexpr std::string_view prefix = "Zmod:";
    if (text.substr(0, prefix.size()) == prefix) {
      const std::string digits(text.substr(prefix.size()));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad ring descriptor: " + std::string(text));
      return residues(std::stoull(digits));
    }
    throw std::invalid_argument("bad ring descriptor: " + std::string(text));
  }

  bool operator==(const CoeffRing&) const = default;
};

/// Exact integers backed by GMP.
class IntegerRing {
 public:
  using value_type = mpz_class;
  static constexpr bool is_exact = true;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return mpz_class(static_cast<long>(v)); }
  value_type from_mpz(const mpz_class& v) const { return v; }

  void add_in_place(value_type& a, const value_type& b) const { a += b; }
  void sub_in_place(value_type& a, const value_type& b) const { a -= b; }
  void addmul(value_type& acc, const value_type& a, const value_type& b) const {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  void submul(value_type& acc, const value_type& a, const value_type& b) const {
    mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type mul_int(const value_type& a, std::int64_t k) const { return a * static_cast<long>(k); }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
  value_type unit_inverse(const value_type& a) const {
    if (!is_unit(a)) throw not_a_unit("integer " + a.get_str() + " is not +-1");
    return a;
  }

  /// a / k when k divides a exactly.
  value_type div_exact_int(const value_type& a, std::int64_t k) const {
    const mpz_class kk(static_cast<long>(k));
    if (!mpz_divisible_p(a.get_mpz_t(), kk.get_mpz_t()))
      throw not_a_unit(a.get_str() + " is not divisible by " + std::to_string(k));
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), kk.get_mpz_t());
    return q;
  }

  value_type pow_int(std::int64_t base, std::uint64_t e) const {
    mpz_class r;
    mpz_class b(static_cast<long>(base));
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
  }

  mpz_class to_integer(const value_type& a) const { return a; }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  CoeffRing descriptor() const { return CoeffRing::integers(); }

  bool operator==(const IntegerRing&) const { return true; }
};

/// Z/mZ with m up to a machine word. Elements are kept in [0, m).
class ResidueRing {
 public:
  using value_type = std::uint64_t;
  static constexpr bool is_exact = false;

  explicit ResidueRing(std::uint64_t m) : m_(m) {
    if (m < 2) throw std::invalid_argument("residue ring modulus must be >= 2");
  }

  std::uint64_t modulus() const { return m_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const {
    const __int128 r = static_cast<__int128>(v) % static_cast<__int128>(m_);
    return static_cast<value_type>(r < 0 ? r + m_ : r);
  }
  value_type from_mpz(const mpz_class& v) const {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(v.get_mpz_t(), m_);
  }

  value_type add(value_type a, value_type b) const {
    const value_type s = a + b;
    return (s >= m_ || s < a) ? s - m_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (m_ - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : m_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % m_);
  }
  value_type mul_int(value_type a, std::int64_t k) const { return mul(a, from_int(k)); }

  void add_in_place(value_type& a, value_type b) const { a = add(a, b); }
  void sub_in_place(value_type& a, value_type b) const { a = sub(a, b); }
  void addmul(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }
  void submul(value_type& acc, value_type a, value_type b) const { acc = sub(acc, mul(a, b)); }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return std::gcd(a, m_) == 1; }

  value_type unit_inverse(value_type a) const {
    // extended Euclid on (a, m)
    __int128 r0 = m_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
      const __int128 q = r0 / r1;
      __int128 tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    if (r0 != 1)
      throw not_a_unit(std::to_string(a) + " is not a unit modulo " + std::to_string(m_));
    if (t0 < 0) t0 += m_;
    return static_cast<value_type>(t0);
  }

  value_type div_exact_int(value_type a, std::int64_t k) const {
    return mul(a, unit_inverse(from_int(k)));
  }

  value_type pow_int(std::int64_t base, std::uint64_t e) const {
    value_type r = 1 % m_;
    value_type b = from_int(base);
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  mpz_class to_integer(value_type a) const { return mpz_class(static_cast<unsigned long>(a)); }
  std::string to_string(value_type a) const { return std::to_string(a); }
  CoeffRing descriptor() const { return CoeffRing::residues(m_); }

  bool operator==(const ResidueRing& o) const { return m_ == o.m_; }

 private:
  std::uint64_t m_;
};

template <class Ring>
inline void require_same_ring(const Ring& a, const Ring& b) {
  if (!(a == b))
    throw ring_mismatch("coefficient rings differ: " + a.descriptor().to_string() + " vs " +
                        b.descriptor().to_string());
}

}  // namespace sptlab
