#include "rsphere/theta.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rsphere/arith.hpp"
#include "rsphere/characters.hpp"
#include "rsphere/parallel.hpp"
#include "rsphere/types.hpp"

namespace rsphere {

namespace {

constexpr std::int64_t kBlock = std::int64_t{1} << 14;
constexpr double kBruteForceBudget = 2e9;
constexpr long double kEntryCeiling = 4.6e18L;  // 2^62

void check_dimension(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    throw InvalidArgument(std::string(what) + ": dimension " + std::to_string(n) + " outside [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
  }
}

// Number of lattice points in the cube [-sqrt(M), sqrt(M)]^n; bounds every
// r_n(m) and every partial sum of them for m <= M.
long double cube_count(int n, std::int64_t max_m) {
  return std::pow(2.0L * static_cast<long double>(isqrt(max_m)) + 1.0L, n);
}

std::int64_t checked_int64(Int128 value, const char* parameter) {
  if (value > INT64_MAX || value < INT64_MIN) {
    throw BudgetExceeded(parameter, std::string("count exceeds the 64-bit range; reduce ") + parameter);
  }
  return static_cast<std::int64_t>(value);
}

// out(m) = in(m) + 2 sum_{s >= 1, s^2 <= m} in(m - s^2)
std::vector<std::int64_t> convolve_with_squares(const std::vector<std::int64_t>& in) {
  const auto size = static_cast<std::int64_t>(in.size());
  std::vector<std::int64_t> out(in.size());
  parallel_range(0, size, kBlock, [&](std::int64_t lo, std::int64_t hi) {
    std::int64_t* dst = out.data();
    const std::int64_t* src = in.data();
    for (std::int64_t m = lo; m < hi; ++m) dst[m] = src[m];
    for (std::int64_t s = 1; s * s < hi; ++s) {
      const std::int64_t sq = s * s;
      const std::int64_t start = std::max(lo, sq);
      const std::int64_t* shifted = src - sq;
      for (std::int64_t m = start; m < hi; ++m) dst[m] += 2 * shifted[m];
    }
  });
  return out;
}

std::vector<std::int64_t> theta_one(std::int64_t max_m) {
  std::vector<std::int64_t> r(static_cast<std::size_t>(max_m) + 1, 0);
  r[0] = 1;
  for (std::int64_t s = 1; s * s <= max_m; ++s) r[static_cast<std::size_t>(s * s)] = 2;
  return r;
}

void enumerate_tuples(int pos, int n, std::int64_t remaining, std::int64_t max_part, std::vector<std::int64_t>& parts,
                      Int128& total) {
  auto add_weighted = [&] {
    // signed permutations of a non-increasing tuple: n! / prod(mult!) * 2^(nonzero)
    Int128 weight = 1;
    for (int i = 2; i <= n; ++i) weight *= i;
    int run = 1;
    for (int i = 1; i <= n; ++i) {
      if (i < n && parts[static_cast<std::size_t>(i)] == parts[static_cast<std::size_t>(i - 1)]) {
        ++run;
        continue;
      }
      for (int j = 2; j <= run; ++j) weight /= j;
      run = 1;
    }
    for (int i = 0; i < n; ++i) {
      if (parts[static_cast<std::size_t>(i)] != 0) weight *= 2;
    }
    total += weight;
  };

  if (pos == n - 1) {
    const std::int64_t x = isqrt(remaining);
    if (x * x == remaining && x <= max_part) {
      parts[static_cast<std::size_t>(pos)] = x;
      add_weighted();
    }
    return;
  }
  const int left = n - pos;
  for (std::int64_t x = std::min(max_part, isqrt(remaining)); x >= 0; --x) {
    if (x * x * left < remaining) break;
    parts[static_cast<std::size_t>(pos)] = x;
    enumerate_tuples(pos + 1, n, remaining - x * x, x, parts, total);
  }
}

class VectorSource final : public SquareCoefficientSource {
 public:
  VectorSource(int n, std::vector<std::int64_t> values) : n_(n), values_(std::move(values)) {}
  int sphere_dimension() const override { return n_; }
  std::int64_t max_q() const override { return static_cast<std::int64_t>(values_.size()) - 1; }
  std::int64_t at(std::int64_t q) const override {
    if (q < 1 || q > max_q()) throw InvalidArgument("square-coefficient source queried outside 1.." + std::to_string(max_q()));
    return values_[static_cast<std::size_t>(q)];
  }

 private:
  int n_;
  std::vector<std::int64_t> values_;
};

std::vector<std::int64_t> table_square_values(int n, std::int64_t max_q) {
  std::vector<std::int64_t> values(static_cast<std::size_t>(max_q) + 1, 0);
  if (max_q < 1) return values;
  if (static_cast<long double>(max_q) * max_q > kThetaMaxEntries) {
    throw BudgetExceeded("T", "table path needs r_" + std::to_string(n) + " up to T^2 = " + std::to_string(max_q) +
                                   "^2, above the " + std::to_string(kThetaMaxEntries) + "-entry budget");
  }
  if (cube_count(n + 1, max_q * max_q) > kEntryCeiling) {
    throw BudgetExceeded("T", "theta coefficients would overflow 64 bits");
  }
  const CoefficientTable table = r_table(n, max_q * max_q);
  parallel_range(1, max_q + 1, 256, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t q = lo; q < hi; ++q) {
      const std::int64_t q2 = q * q;
      std::int64_t acc = table[q2];
      for (std::int64_t s = 1; s <= q; ++s) acc += 2 * table[q2 - s * s];
      values[static_cast<std::size_t>(q)] = acc;
    }
  });
  return values;
}

// r_3(q^2) / 6 is multiplicative: 1 at powers of 2, and at odd p^e
// sum_{j<=e} p^j - omega_{-1}(p) sum_{j<e} p^j.
std::vector<std::int64_t> hurwitz_square_values(std::int64_t max_q) {
  std::vector<std::int64_t> values(static_cast<std::size_t>(max_q) + 1, 0);
  if (max_q < 1) return values;
  const SmallestPrimeFactorSieve sieve(max_q);
  parallel_range(1, max_q + 1, 4096, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t q = lo; q < hi; ++q) {
      std::int64_t g = 1;
      for (const auto& [p, e] : sieve.factorize(q).factors) {
        if (p == 2) continue;
        const std::int64_t w = (p % 4 == 1) ? 1 : -1;
        std::int64_t full = 0;
        std::int64_t pk = 1;
        for (int j = 0; j <= e; ++j, pk *= p) full += pk;
        const std::int64_t shorter = full - pk / p;
        g *= full - w * shorter;
      }
      values[static_cast<std::size_t>(q)] = 6 * g;
    }
  });
  return values;
}

// r_4(q^2) = 8 * (3 if q even else 1) * prod_{odd p^e || q} (p^(2e+1) - 1)/(p - 1)
std::vector<std::int64_t> jacobi_square_values(std::int64_t max_q) {
  std::vector<std::int64_t> values(static_cast<std::size_t>(max_q) + 1, 0);
  if (max_q < 1) return values;
  const SmallestPrimeFactorSieve sieve(max_q);
  parallel_range(1, max_q + 1, 4096, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t q = lo; q < hi; ++q) {
      Int128 value = 8;
      for (const auto& [p, e] : sieve.factorize(q).factors) {
        if (p == 2) {
          value *= 3;
          continue;
        }
        Int128 geometric = 0;
        Int128 pk = 1;
        for (int j = 0; j <= 2 * e; ++j, pk *= p) geometric += pk;
        value *= geometric;
      }
      values[static_cast<std::size_t>(q)] = checked_int64(value, "T");
    }
  });
  return values;
}

}  // namespace

CoefficientTable r_table(int n, std::int64_t max_m) {
  check_dimension(n, 1, 64, "r_table");
  if (max_m < 0) throw InvalidArgument("r_table requires M >= 0");
  if (max_m + 1 > kThetaMaxEntries) {
    throw BudgetExceeded("M", "r_table size " + std::to_string(max_m) + " exceeds " + std::to_string(kThetaMaxEntries));
  }
  const double work = (n - 1) * static_cast<double>(max_m) * std::sqrt(static_cast<double>(max_m));
  if (work > kThetaComputeBudget) {
    throw BudgetExceeded("M", "r_table work n*M^1.5 = " + std::to_string(work) + " exceeds compute budget");
  }
  if (cube_count(n, max_m) > kEntryCeiling) {
    throw BudgetExceeded("M", "r_" + std::to_string(n) + " entries up to " + std::to_string(max_m) +
                                  " may overflow 64 bits");
  }

  CoefficientTable table;
  table.dim = n;
  table.limit = max_m;
  table.counts = theta_one(max_m);
  for (int j = 1; j < n; ++j) table.counts = convolve_with_squares(table.counts);
  return table;
}

std::int64_t r_bruteforce(int n, std::int64_t m) {
  check_dimension(n, 1, 6, "r_bruteforce");
  if (m < 0) throw InvalidArgument("r_bruteforce requires m >= 0");
  if (m == 0) return 1;
  double cost = std::pow(std::sqrt(static_cast<double>(m)) + 1.0, n - 1);
  for (int i = 2; i < n; ++i) cost /= i;
  if (cost > kBruteForceBudget) {
    throw BudgetExceeded("m", "brute-force enumeration for n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                                  " exceeds budget");
  }
  std::vector<std::int64_t> parts(static_cast<std::size_t>(n), 0);
  Int128 total = 0;
  enumerate_tuples(0, n, m, isqrt(m), parts, total);
  return checked_int64(total, "m");
}

std::int64_t hurwitz_r3sq(std::int64_t q) {
  if (q < 1) throw InvalidArgument("hurwitz_r3sq requires q >= 1");
  static const DirichletCharacter omega_m1 = omega(-1);
  static const DirichletCharacter chi0 = DirichletCharacter::principal(2);
  const Factorization fq = factorize(q);
  Int128 sum = 0;
  for (std::int64_t c : divisors(fq)) {
    const int twist = mobius(c) * omega_m1(c);
    if (twist == 0) continue;
    for (std::int64_t b : divisors(q / c)) sum += static_cast<Int128>(twist) * chi0(b) * b;
  }
  return checked_int64(6 * sum, "q");
}

std::int64_t jacobi_r4(std::int64_t m) {
  if (m < 1) throw InvalidArgument("jacobi_r4 requires m >= 1");
  Int128 sum = 0;
  for (std::int64_t d : divisors(m)) {
    if (d % 4 != 0) sum += d;
  }
  return checked_int64(8 * sum, "m");
}

void write_table_csv(std::ostream& out, const CoefficientTable& table) {
  out << "m,count\n";
  for (std::int64_t m = 0; m <= table.limit; ++m) out << m << ',' << table[m] << '\n';
}

CoefficientTable read_table_csv(std::istream& in, int dim) {
  std::string line;
  if (!std::getline(in, line) || line != "m,count") throw InvalidArgument("coefficient CSV must start with 'm,count'");
  CoefficientTable table;
  table.dim = dim;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::int64_t m = -1;
    std::int64_t count = 0;
    char comma = 0;
    if (!(row >> m >> comma >> count) || comma != ',' || m != static_cast<std::int64_t>(table.counts.size())) {
      throw InvalidArgument("malformed coefficient CSV row: '" + line + "'");
    }
    table.counts.push_back(count);
  }
  if (table.counts.empty()) throw InvalidArgument("coefficient CSV has no rows");
  table.limit = static_cast<std::int64_t>(table.counts.size()) - 1;
  return table;
}

std::unique_ptr<SquareCoefficientSource> make_source(int n, std::int64_t max_q, CountPath path) {
  check_dimension(n, 1, 64, "make_source");
  if (max_q < 0) throw InvalidArgument("bound must be non-negative");
  const bool closed_available = n == 2 || n == 3;
  if (path == CountPath::kAuto) {
    path = closed_available && max_q <= kClosedFormMaxT ? CountPath::kClosed : CountPath::kTable;
  }
  if (path == CountPath::kClosed) {
    if (!closed_available) throw InvalidArgument("closed-form counting exists only for n = 2 and n = 3");
    if (max_q > kClosedFormMaxT) {
      throw BudgetExceeded("T", "closed-form path is limited to T <= " + std::to_string(kClosedFormMaxT));
    }
    return std::make_unique<VectorSource>(n, n == 2 ? hurwitz_square_values(max_q) : jacobi_square_values(max_q));
  }
  return std::make_unique<VectorSource>(n, table_square_values(n, max_q));
}

std::int64_t primitive_count(int n, std::int64_t q, const SquareCoefficientSource& source) {
  if (q < 1) throw InvalidArgument("primitive_count requires q >= 1");
  if (source.sphere_dimension() != n) throw InvalidArgument("source dimension does not match n");
  const Factorization fq = factorize(q);
  Int128 total = 0;
  for (std::int64_t d : divisors(fq)) {
    const int mu = mobius(d);
    if (mu != 0) total += static_cast<Int128>(mu) * source.at(q / d);
  }
  return checked_int64(total, "q");
}

SphereCounter::SphereCounter(const SquareCoefficientSource& source)
    : dim_(source.sphere_dimension()), max_q_(source.max_q()) {
  const auto size = static_cast<std::size_t>(max_q_) + 1;
  std::vector<std::int64_t> coeff(size, 0);
  for (std::int64_t q = 1; q <= max_q_; ++q) coeff[static_cast<std::size_t>(q)] = source.at(q);

  std::vector<Int128> primitive(size, 0);
  if (max_q_ >= 1) {
    const auto mu = mobius_sieve(max_q_);
    for (std::int64_t d = 1; d <= max_q_; ++d) {
      const int m = mu[static_cast<std::size_t>(d)];
      if (m == 0) continue;
      for (std::int64_t e = 1, q = d; q <= max_q_; ++e, q += d) primitive[static_cast<std::size_t>(q)] += m * static_cast<Int128>(coeff[static_cast<std::size_t>(e)]);
    }
  }

  primitive_.assign(size, 0);
  sphere_prefix_.assign(size, 0);
  theta_prefix_.assign(size, 0);
  Int128 sphere = 0;
  Int128 theta = 0;
  for (std::size_t q = 1; q < size; ++q) {
    primitive_[q] = checked_int64(primitive[q], "T");
    sphere += primitive[q];
    theta += coeff[q];
    sphere_prefix_[q] = checked_int64(sphere, "T");
    theta_prefix_[q] = checked_int64(theta, "T");
  }
}

std::int64_t SphereCounter::index(double bound) const {
  const std::int64_t t = floor_bound(bound);
  if (t > max_q_) {
    throw InvalidArgument("bound " + std::to_string(bound) + " exceeds counter range " + std::to_string(max_q_));
  }
  return t;
}

std::int64_t SphereCounter::sphere(double bound) const { return sphere_prefix_[static_cast<std::size_t>(index(bound))]; }

std::int64_t SphereCounter::theta(double bound) const { return theta_prefix_[static_cast<std::size_t>(index(bound))]; }

std::int64_t SphereCounter::primitive(std::int64_t q) const {
  if (q < 1 || q > max_q_) throw InvalidArgument("primitive count queried outside counter range");
  return primitive_[static_cast<std::size_t>(q)];
}

std::int64_t floor_bound(double bound) {
  if (!std::isfinite(bound) || bound < 0) throw InvalidArgument("bound T must be finite and >= 0");
  if (bound > 9.0e15) throw BudgetExceeded("T", "bound T is too large");
  return static_cast<std::int64_t>(std::floor(bound));
}

SphereCount count_sphere(int n, double bound) {
  check_dimension(n, 2, 64, "count_sphere");
  const auto source = make_source(n, floor_bound(bound), CountPath::kTable);
  return {n, bound, SphereCounter(*source).sphere(bound)};
}

std::int64_t count_theta(int n, double bound) {
  check_dimension(n, 2, 64, "count_theta");
  const auto source = make_source(n, floor_bound(bound), CountPath::kTable);
  return SphereCounter(*source).theta(bound);
}

SphereCount count_sphere_fast(int n, double bound) {
  check_dimension(n, 2, 3, "count_sphere_fast");
  const auto source = make_source(n, floor_bound(bound), CountPath::kClosed);
  return {n, bound, SphereCounter(*source).sphere(bound)};
}

}  // namespace rsphere
