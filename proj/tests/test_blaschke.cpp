#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "projprod/blaschke.hpp"
#include "projprod/errors.hpp"
#include "projprod/random.hpp"
#include "support.hpp"

using namespace projprod;
using namespace projprod::hardy;
using namespace testing;
using namespace std::complex_literals;

namespace {

BlaschkeProduct z_pow(std::size_t k) { return BlaschkeProduct::from_zeros(std::vector<Complex>(k, 0.0)); }
BlaschkeProduct b(std::vector<Complex> zeros) { return BlaschkeProduct::from_zeros(std::move(zeros)); }

bool same_zeros(const BlaschkeProduct& a, const std::vector<Complex>& zeros) {
  return zeros_match(a.zeros(), zeros, 1e-12);
}

}  // namespace

TEST_CASE("BlaschkeProduct validation") {
  CHECK(BlaschkeProduct().is_constant());
  CHECK_THROWS_AS(BlaschkeProduct::make(Complex(2, 0), {}), InputError);
  CHECK_THROWS_AS(b({0.96}), InputError);
  CHECK_NOTHROW(BlaschkeProduct::make(Complex(1, 0), {0.96}, 0.99));
  CHECK_THROWS_AS(BlaschkeProduct::make(Complex(1, 0), {1.0}, 1.0), InputError);
  CHECK_THROWS_AS(b({Complex(std::nan(""), 0)}), InputError);
  const BlaschkeProduct rotated = BlaschkeProduct::make(std::polar(1.0, 0.7), {0.2});
  CHECK(std::abs(rotated.constant() - std::polar(1.0, 0.7)) < 1e-15);
}

TEST_CASE("blaschke_eval examples") {
  CHECK(std::abs(blaschke_eval(z_pow(1), 0.3) - Complex(0.3)) < 1e-15);
  CHECK(std::abs(blaschke_eval(b({0.5}), 0.0) - Complex(-0.5)) < 1e-15);
  const Complex at_one = blaschke_eval(b({0.5}), 1.0);
  CHECK(std::abs(at_one - Complex(1.0)) < 1e-15);
  CHECK_THROWS_AS(blaschke_eval(b({0.5}), 1.5), DomainError);
}

TEST_CASE("blaschke_eval is unimodular on the circle") {
  const BlaschkeProduct p = BlaschkeProduct::make(std::polar(1.0, -1.1),
                                                  {0.3 + 0.4i, -0.6, 0.8 * std::polar(1.0, 1.0), 0.0});
  for (int k = 0; k < 64; ++k) {
    const Complex z = std::polar(1.0, 2.0 * M_PI * k / 64.0);
    CHECK(std::abs(std::abs(blaschke_eval(p, z)) - 1.0) < 1e-12);
  }
}

TEST_CASE("blaschke_taylor examples") {
  const HardyTruncation trunc{64};
  ComplexVector zc = blaschke_taylor(z_pow(1), trunc);
  CHECK(std::abs(zc(1) - Complex(1.0)) < 1e-15);
  CHECK(zc.norm() == doctest::Approx(1.0));

  const ComplexVector half = blaschke_taylor(b({0.5}), trunc);
  CHECK(std::abs(half(0) + 0.5) < 1e-15);
  CHECK(std::abs(half(1) - 0.75) < 1e-15);
  CHECK(std::abs(half(2) - 0.375) < 1e-15);
  CHECK(std::abs(half(3) - 0.1875) < 1e-15);
  for (Index k = 1; k < 64; ++k) {
    CHECK(std::abs(half(k) - 0.75 * std::pow(0.5, static_cast<double>(k - 1))) < 1e-15);
  }

  const Complex c = std::polar(1.0, 0.4);
  const ComplexVector constant = blaschke_taylor(BlaschkeProduct::make(c, {}), trunc);
  CHECK(std::abs(constant(0) - c) < 1e-15);
  CHECK(constant.tail(63).isZero());
}

TEST_CASE("blaschke_taylor agrees with evaluation inside the disc") {
  const BlaschkeProduct p = b({0.3 + 0.4i, -0.6, 0.2 - 0.5i});
  const ComplexVector c = blaschke_taylor(p, HardyTruncation{256});
  // inner functions have unit H² norm
  CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (Complex z : {Complex(0.1, 0.2), Complex(-0.5, 0.3), Complex(0.0, -0.7)}) {
    Complex series = 0.0;
    Complex pw = 1.0;
    for (Index k = 0; k < c.size(); ++k) {
      series += c(k) * pw;
      pw *= z;
    }
    CHECK(std::abs(series - blaschke_eval(p, z)) < 1e-12);
  }
}

TEST_CASE("truncation adequacy") {
  HardyTruncation small{4};
  CHECK_THROWS_AS(small.require_adequate(z_pow(3)), TruncationError);
  try {
    small.require_adequate(b({0.5}));
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    // 0.5^N < 1e-12 needs N ≥ 40
    CHECK(e.suggested_order() == 40);
  }
  CHECK_NOTHROW(HardyTruncation{40}.require_adequate(b({0.5})));
  CHECK_NOTHROW(HardyTruncation{6}.require_adequate(z_pow(3)));
  CHECK_THROWS_AS(blaschke_taylor(b({0.9}), HardyTruncation{64}), TruncationError);
}

TEST_CASE("divides examples") {
  CHECK(divides(z_pow(1), b({0.0, 0.5})));
  CHECK_FALSE(divides(b({0.5}), z_pow(2)));
  CHECK_FALSE(divides(z_pow(2), z_pow(1)));
  CHECK(divides(BlaschkeProduct(), b({0.5})));
  CHECK(divides(b({0.5}), b({0.5 + 1e-10})));
  CHECK_FALSE(divides(b({0.5}), b({0.5 + 1e-6})));
}

TEST_CASE("lcm and gcd examples") {
  CHECK(same_zeros(blaschke_lcm(z_pow(1), b({0.5})), {0.0, 0.5}));
  CHECK(blaschke_gcd(z_pow(1), b({0.5})).is_constant());
  CHECK(same_zeros(blaschke_lcm(z_pow(2), z_pow(1)), {0.0, 0.0}));
  CHECK(same_zeros(blaschke_gcd(z_pow(2), z_pow(1)), {0.0}));
  const BlaschkeProduct a = b({0.0, 0.5});
  const BlaschkeProduct c = b({0.0, 1.0 / 3.0});
  CHECK(same_zeros(blaschke_lcm(a, c), {0.0, 0.5, 1.0 / 3.0}));
  CHECK(same_zeros(blaschke_gcd(a, c), {0.0}));
  // constants are normalized away
  const BlaschkeProduct rotated = BlaschkeProduct::make(-1.0, {0.5});
  CHECK(std::abs(blaschke_lcm(rotated, rotated).constant() - Complex(1.0)) < 1e-15);
}

TEST_CASE("blaschke_multiply concatenates zeros and multiplies constants") {
  const BlaschkeProduct m = blaschke_multiply(BlaschkeProduct::make(1i, {0.5}),
                                              BlaschkeProduct::make(1i, {0.0, 0.5}));
  CHECK(same_zeros(m, {0.5, 0.0, 0.5}));
  CHECK(std::abs(m.constant() + 1.0) < 1e-15);
}

TEST_CASE("cluster_zeros groups nearby points") {
  const auto clusters = cluster_zeros({0.5, 0.5 + 1e-10, 0.0, -0.3, 0.0}, 1e-8);
  REQUIRE(clusters.size() == 3);
  std::size_t total = 0;
  for (const auto& c : clusters) total += c.multiplicity;
  CHECK(total == 5);
}

TEST_CASE("property: lattice laws on random zero multisets") {
  const std::vector<Complex> pool = {0.0, 0.5, -0.4i, 0.3 + 0.3i, -0.7};
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng = trial_rng(55, i);
    auto draw = [&] {
      std::uniform_int_distribution<std::size_t> len(0, 5);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      std::vector<Complex> zs(len(rng));
      for (auto& z : zs) z = pool[pick(rng)];
      return b(zs);
    };
    const BlaschkeProduct b1 = draw();
    const BlaschkeProduct b2 = draw();
    const BlaschkeProduct l = blaschke_lcm(b1, b2);
    const BlaschkeProduct g = blaschke_gcd(b1, b2);
    CAPTURE(i);
    CHECK(divides(b1, l));
    CHECK(divides(b2, l));
    CHECK(divides(g, b1));
    CHECK(divides(g, b2));
    CHECK(l.degree() + g.degree() == b1.degree() + b2.degree());
    CHECK(zeros_match(blaschke_multiply(l, g).zeros(), blaschke_multiply(b1, b2).zeros(), 1e-12));
    CHECK(divides(b1, b2) == (g.degree() == b1.degree()));
    CHECK(divides(b1, b2) == zeros_match(l.zeros(), b2.zeros(), 1e-12));
  }
}
