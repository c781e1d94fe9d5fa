#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace planecycles {

enum class FieldErrorCode {
  NonPrimeCharacteristic,
  DegreeZero,
  OrderTooLarge,
  DivisionByZero,
  ForeignElement,
};

class FieldError : public std::runtime_error {
 public:
  FieldError(FieldErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  FieldErrorCode code() const noexcept { return code_; }

 private:
  FieldErrorCode code_;
};

/// Element of GF(p^k). `index` packs the coefficients c_0..c_{k-1} of
/// c_0 + c_1 x + ... as base-p digits, c_0 least significant.
struct FieldElement {
  std::uint32_t index = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
};

inline constexpr std::uint32_t kDefaultFieldCeiling = 1u << 16;

/// GF(p^k) realised as GF(p)[x] / (modulus).
///
/// Immutable once built; copies share the arithmetic tables. Full addition,
/// multiplication and inverse tables are kept for q <= 256, larger fields
/// fall back to polynomial arithmetic per call.
class FieldSpec {
 public:
  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t k() const noexcept { return k_; }
  std::uint32_t q() const noexcept { return q_; }
  /// k+1 coefficients, low degree first; the last one is 1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  bool has_tables() const noexcept { return tables_ != nullptr; }

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }
  FieldElement element(std::uint32_t index) const;
  /// All q elements in index order.
  std::vector<FieldElement> elements() const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement inv(FieldElement a) const;

  std::string to_string(FieldElement a) const;
  std::string modulus_string() const;

 private:
  friend FieldSpec make_field(std::uint32_t, std::uint32_t, std::uint32_t);

  struct Tables {
    std::vector<std::uint16_t> add;
    std::vector<std::uint16_t> mul;
    std::vector<std::uint16_t> neg;
    std::vector<std::uint16_t> inv;
  };

  void check(FieldElement a) const;
  std::uint32_t raw_add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t raw_neg(std::uint32_t a) const;
  std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t raw_inv(std::uint32_t a) const;

  std::uint32_t p_ = 0;
  std::uint32_t k_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::shared_ptr<const Tables> tables_;
};

bool is_prime(std::uint32_t n);

/// True iff the monic polynomial `poly` (low degree first) has no monic factor
/// of degree 1..deg/2 over GF(p).
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);

/// Lexicographically smallest monic irreducible polynomial of degree k over
/// GF(p), comparing coefficients from the constant term upwards.
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t k);

FieldSpec make_field(std::uint32_t p, std::uint32_t k,
                     std::uint32_t ceiling = kDefaultFieldCeiling);

/// Splits a prime power q into (p, k). Throws FieldError when q is not one.
std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint32_t q);

}  // namespace planecycles
