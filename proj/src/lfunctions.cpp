#include "rsphere/lfunctions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "rsphere/arith.hpp"
#include "rsphere/types.hpp"

namespace rsphere {

namespace {

// B_{2i} / (2i)! for i = 1..15.
constexpr std::array<long double, 15> kScaledBernoulli = {
    1.0L / 6 / 2,
    -1.0L / 30 / 24,
    1.0L / 42 / 720,
    -1.0L / 30 / 40320,
    5.0L / 66 / 3628800,
    -691.0L / 2730 / 479001600,
    7.0L / 6 / 87178291200.0L,
    -3617.0L / 510 / 20922789888000.0L,
    43867.0L / 798 / 6402373705728000.0L,
    -174611.0L / 330 / 2432902008176640000.0L,
    854513.0L / 138 / 1.1240007277776077e21L,
    -236364091.0L / 2730 / 6.2044840173323943936e23L,
    8553103.0L / 6 / 4.03291461126605635584e26L,
    -23749461029.0L / 870 / 3.04888344611713860501504e29L,
    8615841276005.0L / 14322 / 2.6525285981219105863630848e32L,
};

constexpr long double kRoundoff = std::numeric_limits<long double>::epsilon();

struct CacheKey {
  std::vector<std::int8_t> table;
  double s;
  double tol;
  bool operator<(const CacheKey& o) const { return std::tie(table, s, tol) < std::tie(o.table, o.s, o.tol); }
};

std::mutex g_cache_mutex;
std::map<CacheKey, double>& cache() {
  static std::map<CacheKey, double> values;
  return values;
}

void check_s(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw InvalidArgument("L-values require real s > 1, got " + std::to_string(s));
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
}

double compute_l_value(const DirichletCharacter& chi, double s, double tol) {
  const long double sl = s;
  const std::int64_t n = chi.modulus();
  if (chi.is_principal()) {
    long double euler = 1.0L;
    for (const auto& pp : factorize(n).factors) euler *= 1.0L - std::pow(static_cast<long double>(pp.prime), -sl);
    return static_cast<double>(hurwitz_zeta(sl, 1.0L, tol / 2) * euler);
  }

  // sum_r chi(r) sum_{j>=0} (r + jN)^-s = sum_r chi(r) [r^-s + N^-s zeta(s, r/N + 1)]
  std::int64_t units = 0;
  for (std::int64_t r = 1; r <= n; ++r) units += chi(r) != 0 ? 1 : 0;
  const long double scale = std::pow(static_cast<long double>(n), -sl);
  const long double per_class_tol = tol / (4.0L * static_cast<long double>(units) * scale);

  long double total = 0.0L;
  long double truncation = 0.0L;
  long double magnitude = 0.0L;
  for (std::int64_t r = 1; r <= n; ++r) {
    const int v = chi(r);
    if (v == 0) continue;
    long double err = 0.0L;
    const long double head = std::pow(static_cast<long double>(r), -sl);
    const long double tail = scale * hurwitz_zeta(sl, static_cast<long double>(r) / n + 1.0L, per_class_tol, &err);
    total += v * (head + tail);
    truncation += scale * err;
    magnitude += head + tail;
  }
  const long double roundoff = 8.0L * kRoundoff * magnitude * static_cast<long double>(units);
  if (truncation + roundoff > tol) {
    throw NotConverged("cannot certify L-value to tolerance " + std::to_string(tol) + " at s = " + std::to_string(s));
  }
  return static_cast<double>(total);
}

}  // namespace

HalfInteger::HalfInteger(int twice) : twice_(twice) {
  if (twice < 3 || twice % 2 == 0) {
    throw InvalidArgument("half-integral weight needs an odd 2k >= 3, got " + std::to_string(twice));
  }
}

long double hurwitz_zeta(long double s, long double a, long double tol, long double* error_bound) {
  if (!(s > 1.0L)) throw InvalidArgument("hurwitz_zeta requires s > 1");
  if (!(a > 0.0L)) throw InvalidArgument("hurwitz_zeta requires a > 0");
  const long double target = tol > 0 ? tol : 1e-30L;

  // Shift the Euler-Maclaurin cut far enough out that the corrections
  // decay geometrically; push it further if that is not enough.
  long double start = std::max(12.0L, s);
  for (int attempt = 0; attempt < 8; ++attempt, start *= 4) {
    long double sum = 0.0L;
    long double x = a;
    while (x < start) {
      sum += std::pow(x, -s);
      x += 1.0L;
    }
    sum += std::pow(x, 1.0L - s) / (s - 1.0L) + 0.5L * std::pow(x, -s);

    long double rising = s;  // s (s+1) ... (s + 2i - 2)
    long double power = std::pow(x, -s - 1.0L);
    const long double inv_x2 = 1.0L / (x * x);
    for (std::size_t i = 0; i < kScaledBernoulli.size(); ++i) {
      const long double term = kScaledBernoulli[i] * rising * power;
      if (std::fabs(term) <= target * 1e-2L) {
        if (error_bound) *error_bound = std::fabs(term);
        return sum;
      }
      sum += term;
      const auto j = static_cast<long double>(2 * i + 1);
      rising *= (s + j) * (s + j + 1.0L);
      power *= inv_x2;
    }
  }
  throw NotConverged("hurwitz_zeta: Euler-Maclaurin corrections did not reach tolerance");
}

double zeta(double s, double tol) {
  check_s(s);
  check_tol(tol);
  return l_value(DirichletCharacter::principal(1), s, tol);
}

double l_value(const LRequest& request) { return l_value(request.character, request.s, request.abs_tol); }

double l_value(const DirichletCharacter& chi, double s, double abs_tol) {
  check_s(s);
  check_tol(abs_tol);
  CacheKey key{std::vector<std::int8_t>(chi.values().begin(), chi.values().end()), s, abs_tol};
  {
    std::lock_guard lock(g_cache_mutex);
    if (auto it = cache().find(key); it != cache().end()) return it->second;
  }
  const double value = compute_l_value(chi, s, abs_tol);
  std::lock_guard lock(g_cache_mutex);
  cache().emplace(std::move(key), value);
  return value;
}

double l_value_restricted(const DirichletCharacter& chi, double s, std::int64_t restrict_to, double abs_tol) {
  if (restrict_to < 1) throw InvalidArgument("restricted L-value needs M >= 1");
  long double factor = 1.0L;
  for (const auto& pp : factorize(restrict_to).factors) {
    if (chi.modulus() % pp.prime == 0) continue;
    factor *= 1.0L - chi(pp.prime) * std::pow(static_cast<long double>(pp.prime), -static_cast<long double>(s));
  }
  // |factor| <= 2^omega(M); shrink the inner tolerance so the product keeps abs_tol.
  const double inner_tol = abs_tol / std::max(1.0L, std::fabs(factor) * 2.0L);
  return static_cast<double>(l_value(chi, s, inner_tol) * factor);
}

double skt_constant(const DirichletCharacter& chi1, const DirichletCharacter& chi2, int k) {
  if (k < 1) throw InvalidArgument("skt_constant requires k >= 1");
  const auto chi2_sq = char_product(chi2, chi2);
  const auto chi12 = char_product(chi1, chi2);
  const auto chi12_sq = char_product(chi12, chi12);
  const std::int64_t n1 = chi1.modulus();
  const long double density = static_cast<long double>(totient(n1)) / static_cast<long double>(n1);
  const long double num = static_cast<long double>(l_value(chi2_sq, 2.0 * k + 1)) * l_value(chi12, k + 1.0);
  const long double den = l_value(chi12_sq, 2.0 * k + 2);
  return static_cast<double>(density / (2 * k + 1) * num / den);
}

double bkt_constant(HalfInteger k) {
  if (k.twice() < 5) throw InvalidArgument("bkt_constant requires k >= 5/2");
  const double kv = k.value();
  const double zeta2 = l_value_restricted(DirichletCharacter::principal(1), 2 * kv - 1, 2);
  const double l2 = l_value_restricted(omega(k.sign()), kv + 0.5, 2);
  return zeta2 / ((4 * kv - 2) * l2);
}

C2Constants c2_constant() {
  const double l = l_value(omega(-1), 2.0);
  const double z2 = zeta(2.0);
  C2Constants c;
  c.c2 = 3.0 / (2.0 * l);
  c.c2_star = c.c2 * z2;
  return c;
}

}  // namespace rsphere
