#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rsphere/arith.hpp"
#include "rsphere/characters.hpp"
#include "rsphere/lfunctions.hpp"

using namespace rsphere;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCatalan = 0.915965594177219015054603514932;
constexpr double kZeta3 = 1.202056903159594285399738161511;
constexpr double kZeta5 = 1.036927755143369926331365486457;

double zeta6() { return std::pow(kPi, 6) / 945.0; }
double zeta4() { return std::pow(kPi, 4) / 90.0; }

}  // namespace

TEST_CASE("l_value examples") {
  CHECK(std::fabs(l_value(DirichletCharacter::principal(1), 2.0) - kPi * kPi / 6) < 1e-12);
  CHECK(std::fabs(l_value(omega(-1), 2.0) - kCatalan) < 1e-12);
  for (const auto& chi : {DirichletCharacter::principal(1), omega(-1), omega(5), omega(-3)}) {
    CHECK(std::fabs(l_value(chi, 50.0) - 1.0) < 1e-12);
  }
  CHECK(std::fabs(l_value(LRequest{omega(-1), 2.0, 1e-10}) - kCatalan) < 1e-10);
}

TEST_CASE("l_value against closed forms") {
  CHECK(std::fabs(zeta(3.0) - kZeta3) < 1e-12);
  CHECK(std::fabs(zeta(4.0) - zeta4()) < 1e-12);
  // L(omega_{-1}, 3) = pi^3 / 32
  CHECK(std::fabs(l_value(omega(-1), 3.0) - std::pow(kPi, 3) / 32) < 1e-12);
  // L(omega_{-3}, 2) via its standard value 0.78130241289648...
  CHECK(std::fabs(l_value(omega(-3), 2.0) - 0.781302412896486296867187429624) < 1e-12);
  // principal mod 6: zeta(2)(1 - 1/4)(1 - 1/9)
  CHECK(std::fabs(l_value(DirichletCharacter::principal(6), 2.0) - kPi * kPi / 6 * 0.75 * (8.0 / 9)) < 1e-12);
}

TEST_CASE("l_value rejects bad input") {
  CHECK_THROWS_AS(l_value(omega(-1), 1.0), InvalidArgument);
  CHECK_THROWS_AS(l_value(omega(-1), 0.5), InvalidArgument);
  CHECK_THROWS_AS(l_value(omega(-1), 2.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(l_value(omega(-1), std::nan("")), InvalidArgument);
}

TEST_CASE("l_value reports non-convergence instead of guessing") {
  // Near s = 1 the class tails are enormous and cancel; a 1e-15 absolute
  // request cannot be certified in long double.
  CHECK_THROWS_AS(l_value(omega(-1), 1.0 + 1e-9, 1e-15), NotConverged);
}

TEST_CASE("hurwitz zeta") {
  CHECK(std::fabs(static_cast<double>(hurwitz_zeta(2.0L, 1.0L, 1e-15L)) - kPi * kPi / 6) < 1e-13);
  // zeta(s, 1/2) = (2^s - 1) zeta(s)
  CHECK(std::fabs(static_cast<double>(hurwitz_zeta(3.0L, 0.5L, 1e-15L)) - 7 * kZeta3) < 1e-12);
  long double err = -1;
  hurwitz_zeta(2.5L, 0.25L, 1e-12L, &err);
  CHECK(err >= 0);
  CHECK(err <= 1e-12L);
}

TEST_CASE("l_value_restricted examples") {
  const auto trivial = DirichletCharacter::principal(1);
  CHECK(std::fabs(l_value_restricted(trivial, 3.0, 2) - 1.0517997902646449) < 1e-12);
  CHECK(std::fabs(l_value_restricted(trivial, 3.0, 2) - kZeta3 * 7 / 8) < 1e-12);
  CHECK(l_value_restricted(omega(-1), 2.0, 1) == l_value(omega(-1), 2.0));
  CHECK(std::fabs(l_value_restricted(omega(-1), 2.0, 4) - l_value(omega(-1), 2.0)) < 1e-15);
  CHECK_THROWS_AS(l_value_restricted(trivial, 2.0, 0), InvalidArgument);
}

TEST_CASE("skt_constant examples") {
  const auto trivial = DirichletCharacter::principal(1);
  const double expected2 = kZeta5 * kZeta3 / (5 * zeta6());
  CHECK(std::fabs(skt_constant(trivial, trivial, 2) - expected2) < 1e-11);
  CHECK(std::fabs(skt_constant(trivial, trivial, 2) - 0.2450) < 1e-4);

  const double expected1 = kZeta3 * (kPi * kPi / 6) / (3 * zeta4());
  CHECK(std::fabs(skt_constant(trivial, trivial, 1) - expected1) < 1e-11);
  // chi2 = omega_{-1} has principal square mod 4
  const auto w = omega(-1);
  const auto chi0 = DirichletCharacter::principal(4);
  const double expected_w = l_value(chi0, 3) * l_value(w, 2) / (3 * l_value(chi0, 4));
  CHECK(std::fabs(skt_constant(trivial, w, 1) - expected_w) < 1e-11);

  const double composed = (2.0 / 12) * l_value(chi0, 3) * l_value(char_product(w, chi0), 2) / l_value(chi0, 4);
  CHECK(std::fabs(skt_constant(w, chi0, 1) - composed) < 1e-11);
  CHECK_THROWS_AS(skt_constant(trivial, trivial, 0), InvalidArgument);
}

TEST_CASE("bkt_constant examples") {
  const auto trivial = DirichletCharacter::principal(1);
  const double z2_4 = zeta4() * (1 - 1.0 / 16);
  const double z2_3 = kZeta3 * (1 - 1.0 / 8);
  CHECK(std::fabs(bkt_constant(HalfInteger(5)) - z2_4 / (8 * z2_3)) < 1e-12);
  const double z2_6 = zeta6() * (1 - 1.0 / 64);
  const double l2 = l_value_restricted(omega(-1), 4.0, 2);
  CHECK(std::fabs(bkt_constant(HalfInteger(7)) - z2_6 / (12 * l2)) < 1e-12);
  for (int twice : {5, 7, 9}) CHECK(bkt_constant(HalfInteger(twice)) > 0);
  CHECK_THROWS_AS(bkt_constant(HalfInteger(3)), InvalidArgument);
  CHECK_THROWS_AS(HalfInteger(4), InvalidArgument);
  (void)trivial;
}

TEST_CASE("half-integer weights") {
  const HalfInteger k(7);
  CHECK(k.value() == 3.5);
  CHECK(k.sign() == -1);
  CHECK(HalfInteger(5).sign() == 1);
  CHECK(HalfInteger(9).sign() == 1);
}

TEST_CASE("c2 constants") {
  const auto c = c2_constant();
  CHECK(c.c2 > 0);
  CHECK(std::fabs(c.c2 - 1.6376) < 1e-3);
  CHECK(std::fabs(c.c2 - 3 / (2 * kCatalan)) < 1e-12);
  CHECK(c.c2_star / c.c2 == doctest::Approx(zeta(2.0)).epsilon(1e-15));
}

TEST_CASE("inverse Euler product") {
  const std::int64_t limit = 100000;
  const auto mu = mobius_sieve(limit);
  for (const auto& chi : {DirichletCharacter::principal(1), omega(-1)}) {
    double partial = 0;
    for (std::int64_t n = limit; n >= 1; --n) partial += mu[static_cast<std::size_t>(n)] * chi(n) / (double(n) * n);
    // the tail of sum mu chi n^-2 beyond N is below 1/N
    CHECK(std::fabs(partial * l_value(chi, 2.0) - 1.0) < 2.0 / limit);
  }
}

TEST_CASE("squarefree ratio identity") {
  const std::int64_t limit = 100000;
  const auto mu = mobius_sieve(limit);
  for (const auto& chi : {DirichletCharacter::principal(1), omega(-1)}) {
    double partial = 0;
    for (std::int64_t n = limit; n >= 1; --n) {
      partial += std::abs(mu[static_cast<std::size_t>(n)]) * chi(n) / (double(n) * n);
    }
    const double ratio = l_value(chi, 2.0) / l_value(char_product(chi, chi), 4.0);
    CHECK(std::fabs(partial - ratio) < 2.0 / limit);
  }
}

TEST_CASE("zeta decreases in s") {
  double previous = 1e300;
  for (double s : {1.5, 2.0, 3.0, 5.0}) {
    const double v = zeta(s);
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("cached values are reproducible") {
  const double a = l_value(omega(5), 2.5);
  const double b = l_value(omega(5), 2.5);
  CHECK(a == b);
}
