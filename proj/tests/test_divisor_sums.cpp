#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rsphere/analysis.hpp"
#include "rsphere/divisor_sums.hpp"

using namespace rsphere;

namespace {

std::int64_t divisor_function_sum(std::int64_t x) {
  std::int64_t total = 0;
  for (std::int64_t b = 1; b <= x; ++b) {
    for (std::int64_t c = 1; b * c <= x; ++c) ++total;
  }
  return total;
}

template <class V>
V dirichlet_at(const CMFunction<V>& f, const CMFunction<V>& g, std::int64_t n) {
  V total{};
  for (std::int64_t d : divisors(n)) total += f(d) * g(n / d);
  return total;
}

// Completely multiplicative function with random prime values from `choices`.
template <class V>
CompletelyMultiplicative<V> random_cm(std::int64_t limit, std::mt19937_64& rng, const std::vector<V>& choices) {
  std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
  std::vector<V> at(static_cast<std::size_t>(limit) + 1);
  for (auto& v : at) v = choices[pick(rng)];
  return CompletelyMultiplicative<V>(limit, [at](std::int64_t p) { return at[static_cast<std::size_t>(p)]; });
}

struct Gaussian {
  Int128 re = 0, im = 0;
};

Gaussian gaussian_times(Gaussian a, Gaussian b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

}  // namespace

TEST_CASE("sigma examples") {
  CHECK(sigma_twisted({DirichletCharacter::principal(1), DirichletCharacter::principal(1), 1}, 4) == 7);
  CHECK(sigma_twisted({omega(-1), DirichletCharacter::principal(1), 1}, 15) == -12);
  CHECK(sigma_twisted({DirichletCharacter::principal(1), DirichletCharacter::principal(1), 0}, 12) == 6);
  CHECK(sigma_twisted({DirichletCharacter::principal(1), omega(-1), 0}, 5) == 2);
}

TEST_CASE("sigma is multiplicative") {
  const DivisorSumSpec spec{omega(-1), omega(5), 2};
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::int64_t> dist(1, 3000);
  for (int i = 0; i < 300; ++i) {
    const auto m = dist(rng), n = dist(rng);
    if (std::gcd(m, n) != 1) continue;
    CHECK(sigma_twisted(spec, m * n) == sigma_twisted(spec, m) * sigma_twisted(spec, n));
  }
}

TEST_CASE("direct S_k examples") {
  const auto one = DirichletCharacter::principal(1);
  // sigma_1(1) + sigma_1(4) + sigma_1(9) = 1 + 7 + 13
  CHECK(sum_sigma_squares_direct({one, one, 1}, 3) == 21);
  CHECK_THROWS_AS(sum_sigma_squares_direct({one, one, 1}, 0), InvalidArgument);
  CHECK(sum_sigma_squares({one, one, 1}, 3) == 21);
}

TEST_CASE("hyperbola examples") {
  auto one = [](std::int64_t) { return std::int64_t{1}; };
  auto floor_sum = [](std::int64_t y) { return y; };
  CHECK(hyperbola_sum<std::int64_t>(floor_sum, floor_sum, one, one, 10.0) == 27);
  CHECK(hyperbola_sum<std::int64_t>(floor_sum, floor_sum, one, one, 1.0) == 1);
  CHECK(hyperbola_sum<std::int64_t>(floor_sum, floor_sum, one, one, 13.9) == 37);
  CHECK(hyperbola_sum<std::int64_t>(floor_sum, floor_sum, one, one, 0.5) == 0);
}

TEST_CASE("hyperbola matches the double loop") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::int64_t> xdist(1, 3000);
  std::uniform_int_distribution<int> vdist(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t x = xdist(rng);
    std::vector<std::int64_t> f(static_cast<std::size_t>(x) + 1), g(f.size()), fp(f.size()), gp(f.size());
    for (std::size_t i = 1; i < f.size(); ++i) {
      f[i] = vdist(rng);
      g[i] = vdist(rng);
      fp[i] = fp[i - 1] + f[i];
      gp[i] = gp[i - 1] + g[i];
    }
    std::int64_t expected = 0;
    for (std::int64_t b = 1; b <= x; ++b) {
      for (std::int64_t c = 1; b * c <= x; ++c) expected += f[b] * g[c];
    }
    auto at = [](const std::vector<std::int64_t>& v) { return [&v](std::int64_t i) { return v[static_cast<std::size_t>(i)]; }; };
    CHECK(hyperbola_sum<std::int64_t>(at(fp), at(gp), at(f), at(g), static_cast<double>(x)) == expected);
  }
  CHECK(divisor_function_sum(13) == 37);
}

TEST_CASE("square identity with integer-valued functions") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::int64_t> tdist(1, 400);
  const std::int64_t limit = 400 * 400;
  for (int trial = 0; trial < 50; ++trial) {
    const auto fcm = random_cm<std::int64_t>(limit, rng, {-1, 0, 1, 2});
    const auto gcm = random_cm<std::int64_t>(limit, rng, {-1, 0, 1, 2});
    const CMFunction<std::int64_t> f = [&](std::int64_t n) { return fcm(n); };
    const CMFunction<std::int64_t> g = [&](std::int64_t n) { return gcm(n); };
    const std::int64_t T = tdist(rng);
    std::int64_t direct = 0;
    for (std::int64_t q = 1; q <= T; ++q) direct += dirichlet_at(f, g, q * q);
    CHECK(convolution_sum_squares<std::int64_t>(f, g, T) == direct);
  }
}

TEST_CASE("square identity with real-valued functions") {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::int64_t> tdist(1, 300);
  const std::int64_t limit = 300 * 300;
  for (int trial = 0; trial < 50; ++trial) {
    const auto fcm = random_cm<double>(limit, rng, {-0.75, 0.0, 0.5, 1.25});
    const auto gcm = random_cm<double>(limit, rng, {-1.5, 0.25, 1.0});
    const CMFunction<double> f = [&](std::int64_t n) { return fcm(n); };
    const CMFunction<double> g = [&](std::int64_t n) { return gcm(n); };
    const std::int64_t T = tdist(rng);
    double direct = 0, scale = 0;
    for (std::int64_t q = 1; q <= T; ++q) {
      for (std::int64_t d : divisors(q * q)) {
        const double term = f(d) * g(q * q / d);
        direct += term;
        scale += std::fabs(term);
      }
    }
    CHECK(std::fabs(convolution_sum_squares<double>(f, g, T) - direct) <= 1e-9 * (1 + scale));
  }
}

TEST_CASE("completely multiplicative tabulation") {
  const CompletelyMultiplicative<std::int64_t> id(1000, [](std::int64_t p) { return p; });
  for (std::int64_t n = 1; n <= 1000; ++n) CHECK(id(n) == n);
  const CMFunction<std::int64_t> f = [&](std::int64_t n) { return id(n); };
  CHECK(spot_check_multiplicative<std::int64_t>(f, {{2, 3}, {4, 6}, {10, 10}}));
  const CMFunction<std::int64_t> not_cm = [](std::int64_t n) { return n == 4 ? std::int64_t{5} : n; };
  CHECK_FALSE(spot_check_multiplicative<std::int64_t>(not_cm, {{2, 2}}));
  CHECK(id.limit() == 1000);
}

TEST_CASE("fast S_k equals direct S_k") {
  const std::vector<DirichletCharacter> chars = {DirichletCharacter::principal(1), DirichletCharacter::principal(2),
                                                 omega(-1), omega(-3), omega(5)};
  for (const auto& a : chars) {
    for (const auto& b : chars) {
      for (int k : {0, 1, 2, 3}) {
        const DivisorSumSpec spec{a, b, k};
        for (std::int64_t T : {1, 2, 17, 250}) CHECK(sum_sigma_squares(spec, T) == sum_sigma_squares_direct(spec, T));
      }
    }
  }
  const DivisorSumSpec one{DirichletCharacter::principal(1), DirichletCharacter::principal(1), 1};
  CHECK(to_string(sum_sigma_squares(one, 1000)) == "609858290");
  CHECK(sum_sigma_squares(one, 5000) == sum_sigma_squares_direct(one, 5000));
}

TEST_CASE("S_k overflow guard") {
  const DivisorSumSpec big{DirichletCharacter::principal(1), DirichletCharacter::principal(1), 6};
  CHECK_THROWS_AS(sum_sigma_squares(big, 100000), BudgetExceeded);
}

TEST_CASE("quartic character") {
  const auto chi = QuarticCharacter::from_powers({-1, 0, 1, 3, 2});
  CHECK(chi.modulus() == 5);
  CHECK(chi.power(2) == 1);
  CHECK(chi.real(4) == -1);
  CHECK(chi.imag(2) == 1);
  CHECK(chi.imag(3) == -1);
  CHECK(chi.power(10) == -1);
  CHECK(chi.square() == omega(5));
  CHECK_THROWS_AS(QuarticCharacter::from_powers({-1, 0, 2, 3, 2}), InvalidArgument);  // not multiplicative
  CHECK_THROWS_AS(QuarticCharacter::from_powers({0, 0}), InvalidArgument);          // 0 is not a unit mod 2
}

TEST_CASE("quartic S_k equals a direct Gaussian sum") {
  const auto chi = QuarticCharacter::from_powers({-1, 0, 1, 3, 2});
  const Gaussian unit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& chi2 : {DirichletCharacter::principal(1), omega(-1)}) {
    for (int k : {1, 2}) {
      for (std::int64_t T : {1, 9, 120}) {
        Gaussian direct;
        for (std::int64_t q = 1; q <= T; ++q) {
          for (std::int64_t d : divisors(q * q)) {
            const int e = chi.power(d);
            const int c2 = chi2(q * q / d);
            if (e < 0 || c2 == 0) continue;
            const Gaussian term = gaussian_times(unit[e], {c2 * ipow(d, k), 0});
            direct.re += term.re;
            direct.im += term.im;
          }
        }
        const auto fast = sum_sigma_squares(chi, chi2, k, T);
        CHECK(fast.re == direct.re);
        CHECK(fast.im == direct.im);
      }
    }
  }
}

TEST_CASE("beta examples") {
  CHECK(beta_exact(HalfInteger(5), 1) == 1);
  CHECK(beta_exact(HalfInteger(5), 3) == 25);
  CHECK(beta_exact(HalfInteger(7), 3) == 253);
  CHECK(sum_beta(HalfInteger(5), 4) == 26);
  CHECK(beta(HalfInteger(7), 3) == 253);
  CHECK_THROWS_AS(beta_exact(HalfInteger(5), 4), InvalidArgument);
  CHECK_THROWS_AS(beta_exact(HalfInteger(3), 3), InvalidArgument);
}

TEST_CASE("beta is multiplicative on odd coprime arguments") {
  for (int twice : {5, 7, 9}) {
    const HalfInteger k(twice);
    for (std::int64_t m = 1; m <= 201; m += 2) {
      for (std::int64_t n = 1; n <= 61; n += 2) {
        if (std::gcd(m, n) != 1) continue;
        CHECK(beta_exact(k, m * n) == beta_exact(k, m) * beta_exact(k, n));
      }
    }
  }
}

TEST_CASE("sum_beta matches summing beta_exact") {
  for (int twice : {5, 7, 9}) {
    const HalfInteger k(twice);
    Int128 exact = 0;
    for (std::int64_t m = 1; m <= 5001; m += 2) exact += beta_exact(k, m);
    const long double fast = sum_beta(k, 5001);
    CHECK(std::fabs(static_cast<double>((fast - static_cast<long double>(exact)) / static_cast<long double>(exact))) <
          1e-15);
  }
}
