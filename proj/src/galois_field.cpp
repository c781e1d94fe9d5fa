#include "planecycles/galois_field.hpp"

#include <sstream>

namespace planecycles {
namespace {

using Poly = std::vector<std::uint32_t>;

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime and small, Fermat is plenty.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m, coefficients mod p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint32_t lead = a.back();
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - (lead * m[i]) % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly digits(std::uint32_t index, std::uint32_t p, std::uint32_t k) {
  Poly out(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    out[i] = index % p;
    index /= p;
  }
  return out;
}

std::uint32_t undigits(const Poly& a, std::uint32_t p, std::uint32_t k) {
  std::uint32_t index = 0;
  for (std::uint32_t i = k; i-- > 0;) {
    index = index * p + (i < a.size() ? a[i] : 0);
  }
  return index;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  if (poly.size() < 2 || poly.back() != 1) return false;
  const std::size_t degree = poly.size() - 1;
  if (degree == 1) return true;
  for (std::size_t d = 1; d <= degree / 2; ++d) {
    std::uint32_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t n = 0; n < count; ++n) {
      Poly divisor = digits(n, p, static_cast<std::uint32_t>(d));
      divisor.push_back(1);
      if (poly_mod(poly, divisor, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};
  std::uint32_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint32_t n = 0; n < count; ++n) {
    // Constant term is the most significant digit of the enumeration.
    Poly candidate(k + 1, 0);
    std::uint32_t rest = n;
    for (std::uint32_t i = k; i-- > 0;) {
      candidate[i] = rest % p;
      rest /= p;
    }
    candidate[k] = 1;
    if (is_irreducible(candidate, p)) return candidate;
  }
  throw FieldError(FieldErrorCode::DegreeZero, "no irreducible polynomial found");
}

std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint32_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) break;
    std::uint32_t k = 0, rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    if (rest == 1) return {p, k};
    break;
  }
  throw FieldError(FieldErrorCode::NonPrimeCharacteristic,
                   std::to_string(q) + " is not a prime power");
}

FieldSpec make_field(std::uint32_t p, std::uint32_t k, std::uint32_t ceiling) {
  if (!is_prime(p)) {
    throw FieldError(FieldErrorCode::NonPrimeCharacteristic,
                     "characteristic " + std::to_string(p) + " is not prime");
  }
  if (k == 0) throw FieldError(FieldErrorCode::DegreeZero, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > ceiling) {
      throw FieldError(FieldErrorCode::OrderTooLarge,
                       "field order exceeds ceiling " + std::to_string(ceiling));
    }
  }

  FieldSpec f;
  f.p_ = p;
  f.k_ = k;
  f.q_ = static_cast<std::uint32_t>(q);
  f.modulus_ = smallest_irreducible(p, k);

  if (f.q_ <= 256) {
    auto tables = std::make_shared<FieldSpec::Tables>();
    const std::uint32_t n = f.q_;
    tables->add.resize(n * n);
    tables->mul.resize(n * n);
    tables->neg.resize(n);
    tables->inv.resize(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
      tables->neg[a] = static_cast<std::uint16_t>(f.raw_neg(a));
      for (std::uint32_t b = 0; b < n; ++b) {
        tables->add[a * n + b] = static_cast<std::uint16_t>(f.raw_add(a, b));
        const std::uint32_t prod = f.raw_mul(a, b);
        tables->mul[a * n + b] = static_cast<std::uint16_t>(prod);
        if (prod == 1) tables->inv[a] = static_cast<std::uint16_t>(b);
      }
    }
    f.tables_ = std::move(tables);
  }
  return f;
}

FieldElement FieldSpec::element(std::uint32_t index) const {
  FieldElement e{index};
  check(e);
  return e;
}

std::vector<FieldElement> FieldSpec::elements() const {
  std::vector<FieldElement> out;
  out.reserve(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out.push_back({i});
  return out;
}

void FieldSpec::check(FieldElement a) const {
  if (a.index >= q_) {
    throw FieldError(FieldErrorCode::ForeignElement,
                     "element index " + std::to_string(a.index) + " outside GF(" +
                         std::to_string(q_) + ")");
  }
}

std::uint32_t FieldSpec::raw_add(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldSpec::raw_neg(std::uint32_t a) const {
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldSpec::raw_mul(std::uint32_t a, std::uint32_t b) const {
  const Poly x = digits(a, p_, k_), y = digits(b, p_, k_);
  Poly prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    for (std::uint32_t j = 0; j < k_; ++j) {
      prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    }
  }
  return undigits(poly_mod(prod, modulus_, p_), p_, k_);
}

std::uint32_t FieldSpec::raw_inv(std::uint32_t a) const {
  if (k_ == 1) return inverse_mod(a, p_);
  std::uint32_t result = 1, base = a;
  for (std::uint32_t e = q_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = raw_mul(result, base);
    base = raw_mul(base, base);
  }
  return result;
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  if (tables_) return {tables_->add[a.index * q_ + b.index]};
  return {raw_add(a.index, b.index)};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const {
  return add(a, neg(b));
}

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  if (tables_) return {tables_->mul[a.index * q_ + b.index]};
  return {raw_mul(a.index, b.index)};
}

FieldElement FieldSpec::neg(FieldElement a) const {
  check(a);
  if (tables_) return {tables_->neg[a.index]};
  return {raw_neg(a.index)};
}

FieldElement FieldSpec::inv(FieldElement a) const {
  check(a);
  if (a.index == 0) throw FieldError(FieldErrorCode::DivisionByZero, "inverse of zero");
  if (tables_) return {tables_->inv[a.index]};
  return {raw_inv(a.index)};
}

namespace {

std::string poly_string(const Poly& c) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c[i] != 1) os << c[i];
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace

std::string FieldSpec::to_string(FieldElement a) const {
  check(a);
  return poly_string(digits(a.index, p_, k_));
}

std::string FieldSpec::modulus_string() const { return poly_string(modulus_); }

}  // namespace planecycles
