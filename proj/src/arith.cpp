#include "rsphere/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rsphere {

std::string to_string(Int128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work with negative remainders so INT128_MIN does not overflow.
  std::string digits;
  while (value != 0) {
    const int r = static_cast<int>(value % 10);
    digits.push_back(static_cast<char>('0' + (r < 0 ? -r : r)));
    value /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

namespace {

constexpr std::uint32_t kPrimeTableLimit = 10'000'000;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  __extension__ typedef unsigned __int128 U128;
  return static_cast<std::uint64_t>(static_cast<U128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return result;
}

void push_factor(Factorization& f, std::int64_t p, int e) {
  if (e > 0) f.factors.push_back({p, e});
}

}  // namespace

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw InvalidArgument("isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  // squares compared in 128 bits: (r + 1)^2 can pass INT64_MAX
  while (r > 0 && Int128{r} * r > n) --r;
  while (Int128{r + 1} * (r + 1) <= n) ++r;
  return r;
}

Int128 ipow(Int128 base, int exponent) {
  Int128 result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kPrimeTableLimit + 1, false);
    std::vector<std::uint32_t> out;
    out.reserve(700'000);
    for (std::uint32_t i = 2; i <= kPrimeTableLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kPrimeTableLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These bases are a proven deterministic witness set for n < 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Factorization factorize(std::int64_t n) {
  if (n <= 0) throw InvalidArgument("factorize requires n >= 1, got " + std::to_string(n));
  Factorization f;
  f.value = n;
  std::int64_t rest = n;
  const auto& primes = small_primes();
  for (std::uint32_t p32 : primes) {
    const std::int64_t p = p32;
    if (p * p > rest) break;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    push_factor(f, p, e);
  }
  if (rest == 1) return f;

  const std::int64_t table_end = std::int64_t{kPrimeTableLimit};
  if (rest <= table_end * table_end || is_prime(static_cast<std::uint64_t>(rest))) {
    push_factor(f, rest, 1);
    return f;
  }
  // rest is a composite with every prime factor above 1e7.
  for (std::int64_t d = table_end + 1; d * d <= rest; d += 2) {
    int e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    push_factor(f, d, e);
  }
  if (rest > 1) push_factor(f, rest, 1);
  return f;
}

std::vector<std::int64_t> divisors(const Factorization& f) {
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) { return divisors(factorize(n)); }

int mobius(const Factorization& f) {
  int sign = 1;
  for (const auto& pp : f.factors) {
    if (pp.exponent >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

int mobius(std::int64_t n) { return mobius(factorize(n)); }

std::int64_t totient(const Factorization& f) {
  std::int64_t result = f.value;
  for (const auto& pp : f.factors) result = result / pp.prime * (pp.prime - 1);
  return result;
}

std::int64_t totient(std::int64_t n) { return totient(factorize(n)); }

std::int64_t divisor_count(const Factorization& f) {
  std::int64_t count = 1;
  for (const auto& pp : f.factors) count *= pp.exponent + 1;
  return count;
}

std::vector<std::int8_t> mobius_sieve(std::int64_t limit, std::int64_t max_entries) {
  if (limit < 1) throw InvalidArgument("mobius_sieve requires limit >= 1");
  if (limit > max_entries) {
    throw BudgetExceeded("limit", "mobius_sieve limit " + std::to_string(limit) +
                                      " exceeds memory budget of " + std::to_string(max_entries) + " entries");
  }
  const auto size = static_cast<std::size_t>(limit) + 1;
  std::vector<std::int8_t> mu(size, 1);
  std::vector<bool> composite(size, false);
  mu[0] = 0;
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t j = p; j <= limit; j += p) {
      if (j > p) composite[static_cast<std::size_t>(j)] = true;
      mu[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(-mu[static_cast<std::size_t>(j)]);
    }
    if (p <= limit / p) {
      for (std::int64_t j = p * p; j <= limit; j += p * p) mu[static_cast<std::size_t>(j)] = 0;
    }
  }
  return mu;
}

SmallestPrimeFactorSieve::SmallestPrimeFactorSieve(std::int64_t limit, std::int64_t max_entries)
    : limit_(limit) {
  if (limit < 1) throw InvalidArgument("prime-factor sieve requires limit >= 1");
  if (limit > max_entries || limit > std::int64_t{UINT32_MAX}) {
    throw BudgetExceeded("limit", "prime-factor sieve limit " + std::to_string(limit) + " exceeds budget");
  }
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  if (limit >= 1) spf_[1] = 1;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf_[static_cast<std::size_t>(i)] != 0) continue;
    for (std::int64_t j = i; j <= limit; j += i) {
      if (spf_[static_cast<std::size_t>(j)] == 0) spf_[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(i);
    }
  }
}

Factorization SmallestPrimeFactorSieve::factorize(std::int64_t n) const {
  if (n < 1 || n > limit_) throw InvalidArgument("value outside sieve range: " + std::to_string(n));
  Factorization f;
  f.value = n;
  while (n > 1) {
    const std::int64_t p = spf_[static_cast<std::size_t>(n)];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  return f;
}

}  // namespace rsphere
