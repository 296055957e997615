#pragma once

#include <cstdint>
#include <vector>

#include "rsphere/types.hpp"

namespace rsphere {

struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition. Primes strictly increasing, exponents >= 1,
/// and the product of prime^exponent equals `value`. `factorize(1)` has no
/// factors.
struct Factorization {
  std::int64_t value = 1;
  std::vector<PrimePower> factors;
};

/// Trial division by a lazily built table of primes up to 1e7. A residue
/// above 1e14 that survives is checked with deterministic Miller-Rabin and
/// split by continued trial division if composite.
Factorization factorize(std::int64_t n);

/// Ascending list of all positive divisors.
std::vector<std::int64_t> divisors(std::int64_t n);
std::vector<std::int64_t> divisors(const Factorization& f);

int mobius(std::int64_t n);
int mobius(const Factorization& f);

std::int64_t totient(std::int64_t n);
std::int64_t totient(const Factorization& f);

std::int64_t divisor_count(const Factorization& f);

/// Default cap on sieve sizes, in table entries.
inline constexpr std::int64_t kDefaultSieveBudget = std::int64_t{1} << 30;

/// Index-aligned Möbius table: entry i holds mu(i) for 1 <= i <= limit and
/// entry 0 is 0. Throws BudgetExceeded when limit > max_entries.
std::vector<std::int8_t> mobius_sieve(std::int64_t limit,
                                      std::int64_t max_entries = kDefaultSieveBudget);

/// Smallest-prime-factor table for batch factorization of 1..limit.
class SmallestPrimeFactorSieve {
 public:
  explicit SmallestPrimeFactorSieve(std::int64_t limit,
                                    std::int64_t max_entries = kDefaultSieveBudget);

  std::int64_t limit() const noexcept { return limit_; }
  std::int64_t smallest_factor(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }
  Factorization factorize(std::int64_t n) const;

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> spf_;
};

/// Primes below 1e7, built once on first use.
const std::vector<std::uint32_t>& small_primes();

bool is_prime(std::uint64_t n);

/// floor(sqrt(n)) for n >= 0.
std::int64_t isqrt(std::int64_t n);

Int128 ipow(Int128 base, int exponent);

}  // namespace rsphere
