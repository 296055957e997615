#include "rsphere/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsphere/arith.hpp"

namespace rsphere {

namespace {

void check_grid(const std::vector<std::int64_t>& grid) {
  if (grid.empty()) throw InvalidArgument("grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw InvalidArgument("grid values must be >= 1");
    if (i > 0 && grid[i] <= grid[i - 1]) throw InvalidArgument("grid must be strictly increasing");
  }
}

std::int64_t narrow(Int128 value, const char* parameter) {
  if (value > INT64_MAX || value < INT64_MIN) throw BudgetExceeded(parameter, "value exceeds the 64-bit range");
  return static_cast<std::int64_t>(value);
}

struct LineFit {
  long double intercept = 0;
  long double slope = 0;
  long double residual_norm = 0;
};

// Ordinary least squares y = intercept + slope x, centred for conditioning.
LineFit fit_line(const std::vector<long double>& x, const std::vector<long double>& y) {
  const auto n = static_cast<long double>(x.size());
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double sxx = 0, sxy = 0, scale = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    scale = std::max(scale, std::fabs(x[i]));
  }
  if (!(sxx > 1e-24L * std::max(1.0L, scale * scale) * n)) throw InvalidArgument("degenerate grid: cannot separate fit terms");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  long double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double r = y[i] - fit.intercept - fit.slope * x[i];
    ss += r * r;
  }
  fit.residual_norm = std::sqrt(ss);
  return fit;
}

}  // namespace

Lemma31Residuals verify_lemma31(int n, double bound, CountPath path) {
  if (n < 2 || n > 5) throw InvalidArgument("verify_lemma31 supports 2 <= n <= 5");
  const std::int64_t t = floor_bound(bound);
  const auto source = make_source(n, t, path);
  const SphereCounter counter(*source);
  const auto mu = mobius_sieve(std::max<std::int64_t>(t, 1));

  Int128 layered = 0;
  Int128 inverted = 0;
  for (std::int64_t d = 1; d <= t; ++d) {
    layered += counter.sphere(static_cast<double>(t / d));
    inverted += mu[static_cast<std::size_t>(d)] * static_cast<Int128>(counter.theta(static_cast<double>(t / d)));
  }
  Lemma31Residuals r;
  r.theta_from_sphere = narrow(counter.theta(static_cast<double>(t)) - layered, "T");
  r.sphere_from_theta = narrow(counter.sphere(static_cast<double>(t)) - inverted, "T");
  return r;
}

int remainder_log_power(int n) {
  if (n < 2) throw InvalidArgument("remainder_log_power requires n >= 2");
  if (n == 2) return 3;
  if (n == 3) return 1;
  return n % 2 == 1 ? 0 : 1;
}

std::vector<std::int64_t> scan_counts(int n, const std::vector<std::int64_t>& grid) {
  check_grid(grid);
  const auto source = make_source(n, grid.back(), CountPath::kAuto);
  const SphereCounter counter(*source);
  std::vector<std::int64_t> counts;
  counts.reserve(grid.size());
  for (std::int64_t t : grid) counts.push_back(counter.sphere(static_cast<double>(t)));
  return counts;
}

FitResult fit_main_constant(int n, const std::vector<std::int64_t>& grid, const std::vector<std::int64_t>& counts) {
  check_grid(grid);
  if (counts.size() != grid.size()) throw InvalidArgument("counts and grid differ in length");
  if (grid.size() < 4) throw InvalidArgument("fit_main_constant needs at least 4 grid points");
  if (grid.back() < 10 * grid.front()) throw InvalidArgument("fit_main_constant needs largest T >= 10x smallest T");
  const int alpha = remainder_log_power(n);

  // Scaled model N / T^(n-1) = c T + b log^alpha T; normal equations in two unknowns.
  long double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  std::vector<long double> x1(grid.size()), x2(grid.size()), y(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto t = static_cast<long double>(grid[i]);
    x1[i] = t;
    x2[i] = std::pow(std::log(t), alpha);
    y[i] = static_cast<long double>(counts[i]) / std::pow(t, n - 1);
    s11 += x1[i] * x1[i];
    s12 += x1[i] * x2[i];
    s22 += x2[i] * x2[i];
    r1 += x1[i] * y[i];
    r2 += x2[i] * y[i];
  }
  const long double det = s11 * s22 - s12 * s12;
  if (!(det > 1e-12L * s11 * s22)) throw InvalidArgument("degenerate grid: cannot separate fit terms");
  FitResult fit;
  const long double c = (r1 * s22 - r2 * s12) / det;
  const long double b = (s11 * r2 - s12 * r1) / det;
  long double ss = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const long double r = y[i] - c * x1[i] - b * x2[i];
    ss += r * r;
  }
  fit.constant = static_cast<double>(c);
  fit.correction = static_cast<double>(b);
  fit.residual_norm = static_cast<double>(std::sqrt(ss));
  fit.points = grid.size();
  return fit;
}

FitResult fit_main_constant(int n, const std::vector<std::int64_t>& grid) {
  return fit_main_constant(n, grid, scan_counts(n, grid));
}

std::vector<std::int64_t> dense_fit_grid(std::int64_t cap) {
  if (cap < 20) throw InvalidArgument("dense fit grid needs cap >= 20");
  std::vector<std::int64_t> grid;
  for (std::int64_t t = std::max<std::int64_t>(2, cap / 100); t <= cap; ++t) grid.push_back(t);
  return grid;
}

double scan_constant(int n, const std::vector<std::int64_t>& grid, std::optional<double> constant) {
  check_grid(grid);
  double c = 0;
  if (constant) {
    c = *constant;
  } else if (n == 2) {
    c = c2_constant().c2;
  } else {
    c = fit_main_constant(n, dense_fit_grid(grid.back())).constant;
  }
  if (!(c > 0) || !std::isfinite(c)) throw InvalidArgument("main-term constant must be positive");
  return c;
}

namespace {

ScanRecord make_record(int n, std::int64_t t, std::int64_t count, double c) {
  const auto tl = static_cast<long double>(t);
  const long double main = c * std::pow(tl, n);
  ScanRecord r;
  r.n = n;
  r.T = t;
  r.count = count;
  r.main_term = static_cast<double>(main);
  r.remainder = static_cast<double>(static_cast<long double>(count) - main);
  r.normalized = r.remainder / std::pow(static_cast<double>(t), n - 1);
  return r;
}

}  // namespace

std::vector<ScanRecord> scan_remainder(int n, const std::vector<std::int64_t>& grid, std::optional<double> constant) {
  const double c = scan_constant(n, grid, constant);
  const std::vector<std::int64_t> counts = scan_counts(n, grid);
  std::vector<ScanRecord> records;
  records.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) records.push_back(make_record(n, grid[i], counts[i], c));
  return records;
}

std::vector<ScanRecord> scan_remainder_peaks(int n, const std::vector<std::int64_t>& grid,
                                             std::optional<double> constant) {
  const double c = scan_constant(n, grid, constant);
  const auto source = make_source(n, grid.back(), CountPath::kAuto);
  const SphereCounter counter(*source);
  std::vector<ScanRecord> records;
  std::int64_t lo = grid.front();
  for (std::int64_t hi : grid) {
    ScanRecord best = make_record(n, hi, counter.sphere(static_cast<double>(hi)), c);
    for (std::int64_t t = lo; t < hi; ++t) {
      const ScanRecord r = make_record(n, t, counter.sphere(static_cast<double>(t)), c);
      if (std::fabs(r.remainder) > std::fabs(best.remainder)) best = r;
    }
    records.push_back(best);
    lo = hi + 1;
  }
  return records;
}

ExponentFit fit_remainder_exponent(const std::vector<ScanRecord>& records) {
  if (records.size() < 4) throw InvalidArgument("fit_remainder_exponent needs at least 4 records");
  const std::size_t take = std::max<std::size_t>(4, (records.size() + 1) / 2);
  std::vector<long double> x, y;
  for (std::size_t i = records.size() - take; i < records.size(); ++i) {
    if (records[i].remainder == 0.0) continue;
    x.push_back(std::log(static_cast<long double>(records[i].T)));
    y.push_back(std::log(std::fabs(static_cast<long double>(records[i].remainder))));
  }
  ExponentFit fit;
  fit.points = x.size();
  if (x.empty()) {
    fit.exact = true;
    return fit;
  }
  if (x.size() < 2) throw InvalidArgument("too few nonzero remainders to fit an exponent");
  const LineFit line = fit_line(x, y);
  fit.exponent = static_cast<double>(line.slope);
  fit.residual_norm = static_cast<double>(line.residual_norm);
  return fit;
}

double verify_skt(const DirichletCharacter& chi1, const DirichletCharacter& chi2, int k, std::int64_t bound) {
  if (!char_product(chi1, chi1).is_principal()) {
    throw InvalidArgument("verify_skt needs chi1^2 principal; otherwise there is no main term");
  }
  if (bound < 1) throw InvalidArgument("verify_skt requires T >= 1");
  const Int128 s = sum_sigma_squares(DivisorSumSpec{chi1, chi2, k}, bound);
  const long double ratio = static_cast<long double>(s) / std::pow(static_cast<long double>(bound), 2 * k + 1);
  const long double c = skt_constant(chi1, chi2, k);
  return static_cast<double>(std::fabs(ratio - c) / c);
}

double verify_bkt(HalfInteger k, std::int64_t bound) {
  if (k.twice() < 5 || k.twice() > 9) throw InvalidArgument("verify_bkt supports k in {5/2, 7/2, 9/2}");
  if (bound < 1) throw InvalidArgument("verify_bkt requires T >= 1");
  const long double b = sum_beta(k, bound);
  const long double ratio = b / std::pow(static_cast<long double>(bound), k.twice() - 1);
  const long double c = bkt_constant(k);
  return static_cast<double>(std::fabs(ratio - c) / c);
}

std::vector<DivisorScanRecord> divisor_scan_skt(const DirichletCharacter& chi1, const DirichletCharacter& chi2, int k,
                                                const std::vector<std::int64_t>& grid) {
  check_grid(grid);
  if (!char_product(chi1, chi1).is_principal()) {
    throw InvalidArgument("S_k scan needs chi1^2 principal; otherwise there is no main term");
  }
  const double c = skt_constant(chi1, chi2, k);
  std::vector<DivisorScanRecord> records;
  for (std::int64_t t : grid) {
    DivisorScanRecord r;
    r.T = t;
    r.exact = true;
    r.exact_sum = sum_sigma_squares(DivisorSumSpec{chi1, chi2, k}, t);
    r.sum = static_cast<long double>(r.exact_sum);
    r.normalized = static_cast<double>(r.sum / std::pow(static_cast<long double>(t), 2 * k + 1));
    r.constant = c;
    r.relative_error = std::fabs(r.normalized - c) / c;
    records.push_back(r);
  }
  return records;
}

std::vector<DivisorScanRecord> divisor_scan_bkt(HalfInteger k, const std::vector<std::int64_t>& grid) {
  check_grid(grid);
  const double c = bkt_constant(k);
  std::vector<DivisorScanRecord> records;
  for (std::int64_t t : grid) {
    DivisorScanRecord r;
    r.T = t;
    r.sum = sum_beta(k, t);
    r.normalized = static_cast<double>(r.sum / std::pow(static_cast<long double>(t), k.twice() - 1));
    r.constant = c;
    r.relative_error = std::fabs(r.normalized - c) / c;
    records.push_back(r);
  }
  return records;
}

std::vector<std::int64_t> geometric_grid(std::int64_t start, std::int64_t stop, double ratio) {
  if (start < 1 || stop < start) throw InvalidArgument("grid needs 1 <= start <= stop");
  if (!(ratio > 1.0) || !std::isfinite(ratio)) throw InvalidArgument("grid ratio must be > 1");
  std::vector<std::int64_t> grid;
  for (long double x = static_cast<long double>(stop);; x /= ratio) {
    const auto v = static_cast<std::int64_t>(std::llround(x));
    if (v < start) break;
    if (grid.empty() || grid.back() != v) grid.push_back(v);
  }
  std::reverse(grid.begin(), grid.end());
  return grid;
}

HyperbolaParts<Int128> hurwitz_inner_parts(std::int64_t y) {
  auto a_partial = [](std::int64_t v) { return static_cast<Int128>(v); };
  auto odd_partial = [](std::int64_t v) {
    const Int128 j = (v + 1) / 2;
    return j * j;
  };
  auto one = [](std::int64_t) { return Int128{1}; };
  auto odd_weight = [](std::int64_t b) { return static_cast<Int128>(b % 2 == 1 ? b : 0); };
  return hyperbola_parts<Int128>(a_partial, odd_partial, one, odd_weight, y);
}

std::int64_t hurwitz_theta_sum(double bound) {
  const std::int64_t t = floor_bound(bound);
  if (t < 1) return 0;
  const auto mu = mobius_sieve(t);
  const DirichletCharacter w = omega(-1);
  Int128 total = 0;
  for (std::int64_t c = 1; c <= t; ++c) {
    const int twist = mu[static_cast<std::size_t>(c)] * w(c);
    if (twist != 0) total += twist * hurwitz_inner_parts(t / c).total();
  }
  return narrow(6 * total, "T");
}

}  // namespace rsphere
