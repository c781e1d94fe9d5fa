#include <doctest.h>

#include "planecycles/galois_field.hpp"

using namespace planecycles;

namespace {

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kSmallFields = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}};

}  // namespace

TEST_CASE("field axioms hold exhaustively for every q <= 16") {
  for (auto [p, k] : kSmallFields) {
    const FieldSpec f = make_field(p, k);
    CAPTURE(f.q());
    const auto els = f.elements();
    REQUIRE(els.size() == f.q());
    for (auto a : els) {
      CHECK(f.add(a, f.zero()) == a);
      CHECK(f.mul(a, f.one()) == a);
      CHECK(f.add(a, f.neg(a)) == f.zero());
      if (!(a == f.zero())) CHECK(f.mul(a, f.inv(a)) == f.one());
      for (auto b : els) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.sub(f.add(a, b), b) == a);
        for (auto c : els) {
          REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        }
      }
    }
  }
}

TEST_CASE("no zero divisors") {
  for (auto [p, k] : kSmallFields) {
    const FieldSpec f = make_field(p, k);
    for (auto a : f.elements()) {
      for (auto b : f.elements()) {
        if (!(a == f.zero()) && !(b == f.zero())) CHECK_FALSE(f.mul(a, b) == f.zero());
      }
    }
  }
}

TEST_CASE("prime field arithmetic is modular") {
  const FieldSpec f = make_field(7, 1);
  for (std::uint32_t a = 0; a < 7; ++a) {
    for (std::uint32_t b = 0; b < 7; ++b) {
      CHECK(f.add(f.element(a), f.element(b)).index == (a + b) % 7);
      CHECK(f.mul(f.element(a), f.element(b)).index == (a * b) % 7);
    }
  }
  const FieldSpec g2 = make_field(2, 1);
  CHECK(g2.add(g2.one(), g2.one()) == g2.zero());
}

TEST_CASE("moduli are the smallest irreducible polynomials") {
  CHECK(make_field(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(make_field(2, 2).modulus_string() == "x^2 + x + 1");
  CHECK(make_field(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(make_field(2, 3).modulus() == std::vector<std::uint32_t>{1, 0, 1, 1});
  CHECK(make_field(2, 4).modulus() == std::vector<std::uint32_t>{1, 0, 0, 1, 1});
}

TEST_CASE("GF(4): x * x = x + 1") {
  const FieldSpec f = make_field(2, 2);
  const FieldElement x = f.element(2);
  CHECK(f.mul(x, x).index == 3);
  CHECK(f.to_string(f.mul(x, x)) == "x + 1");
  CHECK(f.inv(f.one()) == f.one());
}

TEST_CASE("irreducibility test against a brute-force root and factor scan") {
  // Over GF(3), a monic quadratic is irreducible iff it has no root.
  for (std::uint32_t c0 = 0; c0 < 3; ++c0) {
    for (std::uint32_t c1 = 0; c1 < 3; ++c1) {
      bool root = false;
      for (std::uint32_t x = 0; x < 3; ++x) root = root || (c0 + c1 * x + x * x) % 3 == 0;
      CHECK(is_irreducible({c0, c1, 1}, 3) == !root);
    }
  }
  CHECK(is_irreducible({1, 1, 0, 0, 1}, 2));      // x^4 + x + 1
  CHECK_FALSE(is_irreducible({1, 0, 1, 0, 1}, 2));  // (x^2 + x + 1)^2
}

TEST_CASE("field construction errors") {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const FieldError& e) {
      return e.code();
    }
    FAIL("expected FieldError");
    return FieldErrorCode::ForeignElement;
  };
  CHECK(code_of([] { make_field(4, 1); }) == FieldErrorCode::NonPrimeCharacteristic);
  CHECK(code_of([] { make_field(3, 0); }) == FieldErrorCode::DegreeZero);
  CHECK(code_of([] { make_field(2, 10, 512); }) == FieldErrorCode::OrderTooLarge);
  const FieldSpec f = make_field(5, 1);
  CHECK(code_of([&] { f.inv(f.zero()); }) == FieldErrorCode::DivisionByZero);
  CHECK(code_of([&] { f.element(5); }) == FieldErrorCode::ForeignElement);
}

TEST_CASE("large fields fall back to polynomial arithmetic") {
  const FieldSpec f = make_field(2, 9);
  CHECK_FALSE(f.has_tables());
  const FieldElement a = f.element(300);
  CHECK(f.mul(a, f.inv(a)) == f.one());
  CHECK(f.add(a, a) == f.zero());
}

TEST_CASE("prime power factoring") {
  CHECK(factor_prime_power(9) == std::pair<std::uint32_t, std::uint32_t>{3, 2});
  CHECK(factor_prime_power(13) == std::pair<std::uint32_t, std::uint32_t>{13, 1});
  CHECK(factor_prime_power(64) == std::pair<std::uint32_t, std::uint32_t>{2, 6});
  CHECK_THROWS_AS(factor_prime_power(12), FieldError);
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}
