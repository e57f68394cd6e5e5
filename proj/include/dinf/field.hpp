#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dinf {

using Coeff = std::uint32_t;

/// Arithmetic in the prime field F_p. Coefficients are stored as plain
/// residues in [0, p) and every operation goes through the field object.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = 5);

  std::uint32_t prime() const { return p_; }

  Coeff add(Coeff a, Coeff b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Coeff inv(Coeff a) const;
  Coeff pow(Coeff a, std::uint64_t e) const;

  /// Reduce a signed integer into [0, p).
  Coeff from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Coeff>(r < 0 ? r + p_ : r);
  }

  /// Symmetric representative in (-p/2, p/2], used for printing.
  long long to_signed(Coeff a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dinf
