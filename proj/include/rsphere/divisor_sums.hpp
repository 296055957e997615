#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rsphere/arith.hpp"
#include "rsphere/characters.hpp"
#include "rsphere/lfunctions.hpp"
#include "rsphere/parallel.hpp"
#include "rsphere/types.hpp"

namespace rsphere {

/// An arithmetic function promised to be completely multiplicative
/// (f(ab) = f(a) f(b) for all a, b and f(1) = 1). The promise is not checked
/// on every call; see `spot_check_multiplicative`.
template <class V>
using CMFunction = std::function<V(std::int64_t)>;

/// Completely multiplicative function determined by its values at primes,
/// tabulated on 1..limit through a smallest-prime-factor sieve.
template <class V>
class CompletelyMultiplicative {
 public:
  CompletelyMultiplicative(std::int64_t limit, const std::function<V(std::int64_t)>& at_prime)
      : values_(static_cast<std::size_t>(limit) + 1, V{}) {
    const SmallestPrimeFactorSieve sieve(limit);
    if (limit >= 1) values_[1] = V{1};
    for (std::int64_t n = 2; n <= limit; ++n) {
      const std::int64_t p = sieve.smallest_factor(n);
      const V fp = (p == n) ? at_prime(p) : values_[static_cast<std::size_t>(p)];
      values_[static_cast<std::size_t>(n)] = fp * values_[static_cast<std::size_t>(n / p)];
    }
  }

  std::int64_t limit() const { return static_cast<std::int64_t>(values_.size()) - 1; }
  V operator()(std::int64_t n) const { return values_.at(static_cast<std::size_t>(n)); }

 private:
  std::vector<V> values_;
};

/// Checks f(1) = 1 and f(ab) = f(a) f(b) on the given pairs.
template <class V>
bool spot_check_multiplicative(const CMFunction<V>& f,
                               const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
  if (f(1) != V{1}) return false;
  for (const auto& [a, b] : pairs) {
    if (f(a * b) != f(a) * f(b)) return false;
  }
  return true;
}

/// The three pieces of the hyperbola split of sum_{bc <= X} f(b) g(c):
/// `first` runs over c <= sqrt(X), `second` over b <= sqrt(X), and
/// `overlap` is the doubly counted square b, c <= sqrt(X).
template <class V>
struct HyperbolaParts {
  V first{};
  V second{};
  V overlap{};
  V total() const { return first + second - overlap; }
};

/// `f_partial(Y)` and `g_partial(Y)` must return the exact sums over 1..Y.
/// Costs O(sqrt(X)) oracle calls.
template <class V, class FPartial, class GPartial, class F, class G>
HyperbolaParts<V> hyperbola_parts(const FPartial& f_partial, const GPartial& g_partial, const F& f, const G& g,
                                  std::int64_t x) {
  HyperbolaParts<V> parts;
  if (x < 1) return parts;
  const std::int64_t root = isqrt(x);
  for (std::int64_t c = 1; c <= root; ++c) parts.first += static_cast<V>(g(c)) * static_cast<V>(f_partial(x / c));
  for (std::int64_t b = 1; b <= root; ++b) parts.second += static_cast<V>(f(b)) * static_cast<V>(g_partial(x / b));
  parts.overlap = static_cast<V>(f_partial(root)) * static_cast<V>(g_partial(root));
  return parts;
}

template <class V, class FPartial, class GPartial, class F, class G>
V hyperbola_sum(const FPartial& f_partial, const GPartial& g_partial, const F& f, const G& g, double x) {
  if (!(x >= 1.0)) return V{};
  return hyperbola_parts<V>(f_partial, g_partial, f, g, static_cast<std::int64_t>(x)).total();
}

/// sum_{a <= T} |mu(a)| outer(a) sum_{bc <= T/a} f_sq(b) g_sq(c).
///
/// The inner sums go through hyperbola_parts with prefix tables of f_sq and
/// g_sq; the outer range is cut into fixed chunks reduced in order, so
/// floating-point results do not depend on the thread count.
template <class V, class Outer, class FSq, class GSq>
V square_convolution_sum(const Outer& outer, const FSq& f_sq, const GSq& g_sq, std::int64_t bound) {
  if (bound < 1) return V{};
  const auto size = static_cast<std::size_t>(bound) + 1;
  std::vector<V> f_table(size, V{}), g_table(size, V{}), f_prefix(size, V{}), g_prefix(size, V{});
  for (std::size_t i = 1; i < size; ++i) {
    f_table[i] = static_cast<V>(f_sq(static_cast<std::int64_t>(i)));
    g_table[i] = static_cast<V>(g_sq(static_cast<std::int64_t>(i)));
    f_prefix[i] = f_prefix[i - 1] + f_table[i];
    g_prefix[i] = g_prefix[i - 1] + g_table[i];
  }
  const auto mu = mobius_sieve(bound);
  auto fp = [&](std::int64_t y) { return f_prefix[static_cast<std::size_t>(y)]; };
  auto gp = [&](std::int64_t y) { return g_prefix[static_cast<std::size_t>(y)]; };
  auto fv = [&](std::int64_t y) { return f_table[static_cast<std::size_t>(y)]; };
  auto gv = [&](std::int64_t y) { return g_table[static_cast<std::size_t>(y)]; };

  constexpr std::int64_t kGrain = 2048;
  const auto chunks = static_cast<std::size_t>((bound + kGrain - 1) / kGrain);
  std::vector<V> partial(chunks, V{});
  parallel_chunks(chunks, [&](std::size_t chunk) {
    const std::int64_t lo = 1 + static_cast<std::int64_t>(chunk) * kGrain;
    const std::int64_t hi = std::min(bound, lo + kGrain - 1);
    V acc{};
    for (std::int64_t a = lo; a <= hi; ++a) {
      if (mu[static_cast<std::size_t>(a)] == 0) continue;
      const V w = static_cast<V>(outer(a));
      if (w == V{}) continue;
      acc += w * hyperbola_parts<V>(fp, gp, fv, gv, bound / a).total();
    }
    partial[chunk] = acc;
  });
  V total{};
  for (const V& p : partial) total += p;
  return total;
}

/// Right-hand side of the square-argument identity
///   sum_{q<=T} (f*g)(q^2) = sum_{a<=T} |mu(a)| f(a) g(a) sum_{bc<=T/a} f(b)^2 g(c)^2
/// for completely multiplicative f, g.
template <class V>
V convolution_sum_squares(const CMFunction<V>& f, const CMFunction<V>& g, std::int64_t bound) {
  return square_convolution_sum<V>([&](std::int64_t a) { return f(a) * g(a); },
                                   [&](std::int64_t b) {
                                     const V v = f(b);
                                     return v * v;
                                   },
                                   [&](std::int64_t c) {
                                     const V v = g(c);
                                     return v * v;
                                   },
                                   bound);
}

struct DivisorSumSpec {
  DirichletCharacter chi1 = DirichletCharacter::principal(1);
  DirichletCharacter chi2 = DirichletCharacter::principal(1);
  int exponent = 0;
};

/// sigma_s(chi1, chi2, n) = sum_{d | n} chi1(d) chi2(n/d) d^s (exact).
Int128 sigma_twisted(const DivisorSumSpec& spec, std::int64_t n);

/// sum_{q <= T} sigma_s(chi1, chi2, q^2) by enumerating the divisors of
/// every q^2. Reference path.
Int128 sum_sigma_squares_direct(const DivisorSumSpec& spec, std::int64_t bound);

/// Same sum through the square-convolution identity with
/// f(m) = chi1(m) m^s and g = chi2; roughly O(T) work.
Int128 sum_sigma_squares(const DivisorSumSpec& spec, std::int64_t bound);

/// Character with values in {0, 1, i, -1, -i}, stored as a period table of
/// exponents of i with -1 marking non-units. Its square is a real character,
/// which is what makes S_k with a non-real chi1 reachable through the real
/// hyperbola machinery.
class QuarticCharacter {
 public:
  static QuarticCharacter from_powers(std::vector<std::int8_t> powers);

  std::int64_t modulus() const noexcept { return static_cast<std::int64_t>(powers_.size()); }
  /// Exponent e with chi(n) = i^e, or -1 when gcd(n, N) > 1.
  int power(std::int64_t n) const;
  int real(std::int64_t n) const;
  int imag(std::int64_t n) const;
  DirichletCharacter square() const;

 private:
  std::vector<std::int8_t> powers_;
};

struct GaussianInt128 {
  Int128 re = 0;
  Int128 im = 0;
};

/// S_k for a quartic chi1 and a real chi2, split into real and imaginary parts.
GaussianInt128 sum_sigma_squares(const QuarticCharacter& chi1, const DirichletCharacter& chi2, int exponent,
                                 std::int64_t bound);

/// beta_k(m) for odd m, in the integral form
///   sum_{a c | m} mu(a) (s_k/a) a^(k-3/2) c^(2k-2)
/// obtained by writing m = abc.
Int128 beta_exact(HalfInteger k, std::int64_t m);
long double beta(HalfInteger k, std::int64_t m);

/// sum over odd m <= T of beta_k(m) with compensated summation.
long double sum_beta(HalfInteger k, std::int64_t bound);

}  // namespace rsphere
