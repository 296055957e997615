#include "rsphere/divisor_sums.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace rsphere {

namespace {

// Keeps |value| comfortably below 2^127 ~ 1.7e38.
constexpr double kInt128Digits = 37.0;

void check_power_sum_range(int exponent, std::int64_t bound) {
  if (exponent < 0) throw InvalidArgument("divisor-sum exponent must be >= 0");
  if (bound < 1) throw InvalidArgument("divisor-sum bound T must be >= 1");
  // sum_{q<=T} sigma_s(q^2) <= T * d(q^2) * T^(2s); the divisor count is
  // absorbed by the margin below the 128-bit ceiling.
  const double digits = (2.0 * exponent + 1.0) * std::log10(static_cast<double>(bound)) + 1.0;
  if (digits > kInt128Digits) {
    throw BudgetExceeded("T", "divisor sum with exponent " + std::to_string(exponent) + " at T = " +
                                  std::to_string(bound) + " exceeds 128-bit range");
  }
}

Factorization square_of(const Factorization& f) {
  Factorization sq;
  sq.value = f.value * f.value;
  sq.factors = f.factors;
  for (auto& pp : sq.factors) pp.exponent *= 2;
  return sq;
}

Int128 sigma_over(const DivisorSumSpec& spec, const Factorization& n) {
  Int128 total = 0;
  for (std::int64_t d : divisors(n)) {
    const int w = spec.chi1(d) * spec.chi2(n.value / d);
    if (w != 0) total += w * ipow(d, spec.exponent);
  }
  return total;
}

struct Neumaier {
  long double sum = 0.0L;
  long double compensation = 0.0L;

  void add(long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  long double value() const { return sum + compensation; }
};

void check_beta_range(HalfInteger k, std::int64_t m) {
  const double digits = (k.twice() - 2) * std::log10(static_cast<double>(m)) + 2.0;
  if (digits > kInt128Digits) {
    throw BudgetExceeded("m", "beta_k(m) for 2k = " + std::to_string(k.twice()) + " at m = " + std::to_string(m) +
                                  " exceeds 128-bit range");
  }
}

}  // namespace

Int128 sigma_twisted(const DivisorSumSpec& spec, std::int64_t n) {
  if (n < 1) throw InvalidArgument("sigma_twisted requires n >= 1");
  if (spec.exponent < 0) throw InvalidArgument("divisor-sum exponent must be >= 0");
  return sigma_over(spec, factorize(n));
}

Int128 sum_sigma_squares_direct(const DivisorSumSpec& spec, std::int64_t bound) {
  check_power_sum_range(spec.exponent, bound);
  const SmallestPrimeFactorSieve sieve(bound);
  Int128 total = 0;
  for (std::int64_t q = 1; q <= bound; ++q) total += sigma_over(spec, square_of(sieve.factorize(q)));
  return total;
}

Int128 sum_sigma_squares(const DivisorSumSpec& spec, std::int64_t bound) {
  check_power_sum_range(spec.exponent, bound);
  const int k = spec.exponent;
  const DirichletCharacter& chi1 = spec.chi1;
  const DirichletCharacter& chi2 = spec.chi2;
  return square_convolution_sum<Int128>(
      [&](std::int64_t a) { return static_cast<Int128>(chi1(a) * chi2(a)) * ipow(a, k); },
      [&](std::int64_t b) { return static_cast<Int128>(chi1(b) * chi1(b)) * ipow(b, 2 * k); },
      [&](std::int64_t c) { return static_cast<Int128>(chi2(c) * chi2(c)); }, bound);
}

QuarticCharacter QuarticCharacter::from_powers(std::vector<std::int8_t> powers) {
  const auto n = static_cast<std::int64_t>(powers.size());
  if (n < 1 || n > 4096) throw InvalidArgument("quartic character modulus must be in [1, 4096]");
  for (std::int64_t r = 0; r < n; ++r) {
    const int e = powers[static_cast<std::size_t>(r)];
    const bool unit = std::gcd(r, n) == 1;
    if (e < -1 || e > 3 || (e == -1) == unit) throw InvalidArgument("quartic character table is not a character");
  }
  if (powers[static_cast<std::size_t>(1 % n)] != 0) throw InvalidArgument("quartic character needs chi(1) = 1");
  for (std::int64_t a = 1; a < n; ++a) {
    for (std::int64_t b = 1; b < n; ++b) {
      const int ea = powers[static_cast<std::size_t>(a)];
      const int eb = powers[static_cast<std::size_t>(b)];
      if (ea < 0 || eb < 0) continue;
      if (powers[static_cast<std::size_t>(a * b % n)] != (ea + eb) % 4) {
        throw InvalidArgument("quartic character table is not multiplicative");
      }
    }
  }
  QuarticCharacter chi;
  chi.powers_ = std::move(powers);
  return chi;
}

int QuarticCharacter::power(std::int64_t n) const {
  const std::int64_t m = modulus();
  return powers_[static_cast<std::size_t>(((n % m) + m) % m)];
}

int QuarticCharacter::real(std::int64_t n) const {
  const int e = power(n);
  return e == 0 ? 1 : e == 2 ? -1 : 0;
}

int QuarticCharacter::imag(std::int64_t n) const {
  const int e = power(n);
  return e == 1 ? 1 : e == 3 ? -1 : 0;
}

DirichletCharacter QuarticCharacter::square() const {
  std::vector<std::int8_t> table(powers_.size());
  for (std::size_t r = 0; r < powers_.size(); ++r) {
    table[r] = powers_[r] < 0 ? 0 : ((2 * powers_[r]) % 4 == 0 ? 1 : -1);
  }
  return DirichletCharacter::from_table(std::move(table));
}

GaussianInt128 sum_sigma_squares(const QuarticCharacter& chi1, const DirichletCharacter& chi2, int exponent,
                                 std::int64_t bound) {
  check_power_sum_range(exponent, bound);
  const DirichletCharacter chi1_sq = chi1.square();
  auto f_sq = [&](std::int64_t b) { return static_cast<Int128>(chi1_sq(b)) * ipow(b, 2 * exponent); };
  auto g_sq = [&](std::int64_t c) { return static_cast<Int128>(chi2(c) * chi2(c)); };
  GaussianInt128 total;
  total.re = square_convolution_sum<Int128>(
      [&](std::int64_t a) { return static_cast<Int128>(chi1.real(a) * chi2(a)) * ipow(a, exponent); }, f_sq, g_sq,
      bound);
  total.im = square_convolution_sum<Int128>(
      [&](std::int64_t a) { return static_cast<Int128>(chi1.imag(a) * chi2(a)) * ipow(a, exponent); }, f_sq, g_sq,
      bound);
  return total;
}

Int128 beta_exact(HalfInteger k, std::int64_t m) {
  if (k.twice() < 5) throw InvalidArgument("beta requires k >= 5/2");
  if (m < 1 || m % 2 == 0) throw InvalidArgument("beta requires odd m >= 1, got " + std::to_string(m));
  check_beta_range(k, m);
  const int a_power = (k.twice() - 3) / 2;  // k - 3/2
  const int c_power = k.twice() - 2;        // 2k - 2
  const Factorization fm = factorize(m);
  Int128 total = 0;
  for (std::int64_t a : divisors(fm)) {
    const int twist = mobius(a) * kronecker_shimura(k.sign(), a);
    if (twist == 0) continue;
    Int128 inner = 0;
    for (std::int64_t c : divisors(m / a)) inner += ipow(c, c_power);
    total += twist * ipow(a, a_power) * inner;
  }
  return total;
}

long double beta(HalfInteger k, std::int64_t m) { return static_cast<long double>(beta_exact(k, m)); }

long double sum_beta(HalfInteger k, std::int64_t bound) {
  if (k.twice() < 5) throw InvalidArgument("sum_beta requires k >= 5/2");
  if (bound < 1) throw InvalidArgument("sum_beta requires T >= 1");
  if (bound > kDefaultSieveBudget) throw BudgetExceeded("T", "sum_beta bound exceeds sieve budget");
  check_beta_range(k, bound);

  const int a_power = (k.twice() - 3) / 2;
  const int c_power = k.twice() - 2;
  const SmallestPrimeFactorSieve sieve(bound);
  constexpr std::int64_t kGrain = 4096;
  const auto chunks = static_cast<std::size_t>((bound + kGrain - 1) / kGrain);
  std::vector<Neumaier> partial(chunks);

  // beta_k is multiplicative; at an odd prime power
  //   beta_k(p^e) = sum_{j<=e} p^(j c) - (s_k/p) p^a sum_{j<e} p^(j c).
  parallel_chunks(chunks, [&](std::size_t chunk) {
    const std::int64_t lo = 1 + static_cast<std::int64_t>(chunk) * kGrain;
    const std::int64_t hi = std::min(bound, lo + kGrain - 1);
    Neumaier acc;
    for (std::int64_t m = lo | 1; m <= hi; m += 2) {
      Int128 value = 1;
      for (const auto& [p, e] : sieve.factorize(m).factors) {
        const Int128 step = ipow(p, c_power);
        Int128 full = 0;
        Int128 term = 1;
        for (int j = 0; j <= e; ++j, term *= step) full += term;
        const Int128 shorter = full - term / step;
        value *= full - kronecker_shimura(k.sign(), p) * ipow(p, a_power) * shorter;
      }
      acc.add(static_cast<long double>(value));
    }
    partial[chunk] = acc;
  });

  Neumaier total;
  for (const auto& p : partial) {
    total.add(p.sum);
    total.add(p.compensation);
  }
  return total.value();
}

}  // namespace rsphere
