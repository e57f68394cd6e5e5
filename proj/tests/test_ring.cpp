#include <random>

#include "doctest.h"
#include "dinf/ring.hpp"

using namespace dinf;

namespace {

const PrimeField F5(5);

SElem random_selem(std::mt19937& rng, unsigned max_deg) {
  SElem s(F5);
  std::uniform_int_distribution<unsigned> coeff(0, 4);
  for (auto m : basis_upto(max_deg + 1)) s = s + SElem::monomial(F5, m, coeff(rng));
  return s;
}

}  // namespace

TEST_CASE("prime field rejects composite moduli") {
  CHECK_THROWS_AS(PrimeField(6), AlgebraError);
  CHECK_NOTHROW(PrimeField(7));
  CHECK(F5.mul(F5.inv(3), 3) == 1);
}

TEST_CASE("normal form kills x^2 y") {
  CHECK(nf("x^2*y", F5).is_zero());
  CHECK(nf("x*y^3", F5).to_string() == "x*y^3");
  SElem sq = nf("(x+y)^2", F5);
  CHECK(sq.coeff({2, 0}) == 1);
  CHECK(sq.coeff({1, 1}) == 2);
  CHECK(sq.coeff({0, 2}) == 1);
  CHECK(sq.terms().size() == 3);
  CHECK(nf("x^3*y^2 + 7", F5).to_string() == "2");
  CHECK(nf("x/2", F5).coeff({1, 0}) == 3);
}

TEST_CASE("malformed polynomial input is rejected") {
  CHECK_THROWS_AS(nf("x/5", F5), AlgebraError);
  CHECK_THROWS_AS(nf("x + ", F5), AlgebraError);
  CHECK_THROWS_AS(nf("x*z", F5), AlgebraError);
  CHECK_THROWS_AS(nf("x/y", F5), AlgebraError);
}

TEST_CASE("basis_upto matches brute-force enumeration") {
  CHECK(basis_upto(2).size() == 3);
  auto b3 = basis_upto(3);
  REQUIRE(b3.size() == 6);
  CHECK(to_string(b3[0]) == "1");
  CHECK(to_string(b3[1]) == "x");
  CHECK(to_string(b3[2]) == "y");
  CHECK(to_string(b3[3]) == "x^2");
  CHECK(to_string(b3[4]) == "x*y");
  CHECK(to_string(b3[5]) == "y^2");
  for (unsigned d = 2; d < 20; ++d) {
    std::size_t brute = 0;
    for (unsigned a = 0; a < d; ++a)
      for (unsigned b = 0; a + b < d; ++b)
        if (!(a >= 2 && b >= 1)) ++brute;
    CHECK(basis_upto(d).size() == brute);
    CHECK(brute == 3 * d - 3);
  }
}

TEST_CASE("ring identities in the localization") {
  for (unsigned t : {5u, 8u}) {
    auto u = qs::u(F5, t);
    auto e = qs::e(F5, t);
    CHECK(loc_is_zero(u.pow(2) - u.pow(3)) == Truth::True);
    CHECK(loc_is_zero(e * SElem::y(F5)) == Truth::True);
    auto rhs = qs::parse("y*(2*x+y)", 2, F5, t);
    CHECK(loc_is_zero((qs::one(F5, t) - e) - rhs) == Truth::True);
    CHECK(loc_is_zero(e * e - e) == Truth::True);
    CHECK(loc_is_zero(u) == Truth::False);
  }
  // e = u^2 by definition, and z = x u.
  auto z = qs::z(F5, 6);
  CHECK(loc_is_zero(z - qs::u(F5, 6) * SElem::x(F5)) == Truth::True);
  // n_k = n_{k+1} * y since n_{k+1} * x = 0.
  CHECK(loc_is_zero(qs::n(F5, 2, 8) - qs::n(F5, 3, 8) * SElem::y(F5)) == Truth::True);
  CHECK(loc_is_zero(qs::n(F5, 3, 8) * SElem::x(F5)) == Truth::True);
}

TEST_CASE("zero test reports indeterminate above the depth bound") {
  LocElem deep(nf("y^7", F5), 0, 5);
  CHECK(loc_is_zero(deep) == Truth::Indeterminate);
  LocElem shallow(nf("y^7 + y^2", F5), 0, 5);
  CHECK(loc_is_zero(shallow) == Truth::False);
}

TEST_CASE("reduction cancels exact (x+y) factors") {
  LocElem a(x_plus_y_pow(F5, 3) * SElem::y(F5), 5, 10);
  auto r = a.reduced();
  CHECK(r.denom_power() == 2);
  CHECK(r.numerator() == SElem::y(F5));
  CHECK_FALSE(divide_by_x_plus_y(SElem::x(F5)).has_value());
}

TEST_CASE("socle dimensions of finite quotient models") {
  CHECK(model_s_mod_x_plus_y(F5).socle_dim() == 1);
  CHECK(model_s_mod_x_plus_y(F5).dim() == 3);
  CHECK(model_sprime_mod_x_plus_y(F5).socle_dim() == 2);
  CHECK(model_residue_field(F5).socle_dim() == 1);
  QuotientRingModel cubic(F5, {"x"}, {"x^3"});
  CHECK(cubic.socle_dim() == 1);
  QuotientRingModel two(F5, {"x", "z"}, {"z^2", "z*x", "x^2"});
  CHECK(two.socle_dim() == 2);
}

TEST_CASE("property: S arithmetic is a commutative ring with idempotent normal form") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    SElem a = random_selem(rng, 5), b = random_selem(rng, 5), c = random_selem(rng, 5);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(nf(a.to_string(), F5) == a);
    LocElem la(a, 1, 12), lb(b, 2, 12);
    CHECK(loc_is_zero(la - lb) == loc_is_zero(lb - la));
  }
}

TEST_CASE("property: multiplication by x+y is injective") {
  for (unsigned d = 2; d < 12; ++d) {
    auto src = basis_upto(d - 1);
    auto dst = basis_upto(d);
    Mat m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      SElem img = SElem::monomial(F5, src[j]) * x_plus_y_pow(F5, 1);
      for (std::size_t i = 0; i < dst.size(); ++i) m.at(i, j) = img.coeff(dst[i]);
    }
    CHECK(rank(F5, m) == src.size());
  }
}

TEST_CASE("SElem JSON round trip") {
  SElem a = nf("3*x^2 - x*y^4 + 1", F5);
  CHECK(SElem::from_json(F5, a.to_json()) == a);
  CHECK(a.to_string() == "1 - 2*x^2 - x*y^4");
}
