#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsphere/characters.hpp"
#include "rsphere/divisor_sums.hpp"
#include "rsphere/lfunctions.hpp"
#include "rsphere/theta.hpp"
#include "rsphere/types.hpp"

namespace rsphere {

/// Both directions of the gcd-layer identity between the theta sum and the
/// sphere count. Exact integers; zero means the identity holds.
struct Lemma31Residuals {
  std::int64_t theta_from_sphere = 0;  // theta(T) - sum_d sphere(T/d)
  std::int64_t sphere_from_theta = 0;  // sphere(T) - sum_d mu(d) theta(T/d)

  bool exact() const { return theta_from_sphere == 0 && sphere_from_theta == 0; }
};

/// 2 <= n <= 5. The source is built once up to floor(T); both sides reuse it.
Lemma31Residuals verify_lemma31(int n, double bound, CountPath path = CountPath::kTable);

struct ScanRecord {
  int n = 0;
  std::int64_t T = 0;
  std::int64_t count = 0;
  double main_term = 0;
  double remainder = 0;
  double normalized = 0;
};

/// Exponent of log T in the remainder of N(S^n; T):
/// 3 for n = 2, 1 for n = 3, 0 for odd n >= 5, 1 for even n >= 4.
int remainder_log_power(int n);

/// Exact N(S^n; T) at every grid point through the fastest path for n.
std::vector<std::int64_t> scan_counts(int n, const std::vector<std::int64_t>& grid);

struct FitResult {
  double constant = 0;    // c in N ~ c T^n
  double correction = 0;  // b in the b T^(n-1) log^alpha T term
  double residual_norm = 0;
  std::size_t points = 0;
};

/// Least squares for N(T) = c T^n + b T^(n-1) log^alpha(T), each point
/// scaled by 1 / T^(n-1) so remainders of the expected size weigh the same
/// at every T. Needs at least four strictly increasing points with the
/// largest >= 10x the smallest.
FitResult fit_main_constant(int n, const std::vector<std::int64_t>& grid, const std::vector<std::int64_t>& counts);
FitResult fit_main_constant(int n, const std::vector<std::int64_t>& grid);

/// Every integer in [max(2, cap / 100), cap]; the default fitting grid.
std::vector<std::int64_t> dense_fit_grid(std::int64_t cap);

/// With no constant: c2_constant for n = 2, otherwise fitted on
/// dense_fit_grid(grid.back()).
double scan_constant(int n, const std::vector<std::int64_t>& grid, std::optional<double> constant);

std::vector<ScanRecord> scan_remainder(int n, const std::vector<std::int64_t>& grid,
                                       std::optional<double> constant = std::nullopt);

/// One record per grid window (T_{i-1}, T_i] (the first window is T_0
/// alone): the row with the largest |remainder|. The remainder changes sign
/// irregularly, so its size is read off these window peaks.
std::vector<ScanRecord> scan_remainder_peaks(int n, const std::vector<std::int64_t>& grid,
                                             std::optional<double> constant = std::nullopt);

struct ExponentFit {
  bool exact = false;  // every remainder in the fitted range is zero
  double exponent = 0;
  double residual_norm = 0;
  std::size_t points = 0;
};

/// Slope of log|remainder| against log T over the upper half of the records
/// (never fewer than four). Zero remainders are skipped.
ExponentFit fit_remainder_exponent(const std::vector<ScanRecord>& records);

/// |S_k(T)/T^(2k+1) - skt_constant| / skt_constant. Requires chi1^2 principal.
double verify_skt(const DirichletCharacter& chi1, const DirichletCharacter& chi2, int k, std::int64_t bound);

/// |B_k(T)/T^(2k-1) - bkt_constant| / bkt_constant for 2k in {5, 7, 9}.
double verify_bkt(HalfInteger k, std::int64_t bound);

/// One row of a divisor-sum scan. S_k rows carry the exact integer sum;
/// B_k rows only the compensated floating sum.
struct DivisorScanRecord {
  std::int64_t T = 0;
  bool exact = false;
  Int128 exact_sum = 0;  // valid when exact
  long double sum = 0;
  double normalized = 0;  // sum / T^(2k+1) or sum / T^(2k-1)
  double constant = 0;
  double relative_error = 0;
};

std::vector<DivisorScanRecord> divisor_scan_skt(const DirichletCharacter& chi1, const DirichletCharacter& chi2, int k,
                                                const std::vector<std::int64_t>& grid);
std::vector<DivisorScanRecord> divisor_scan_bkt(HalfInteger k, const std::vector<std::int64_t>& grid);

/// Geometric grid ending exactly at stop: stop, stop/ratio, stop/ratio^2, ...
/// rounded, deduplicated and kept while >= start; returned ascending.
std::vector<std::int64_t> geometric_grid(std::int64_t start, std::int64_t stop, double ratio);

/// Inner sum for the three-dimensional theta sum,
///   S(Y) = sum_{ab <= Y} chi_0(b) b   (chi_0 principal mod 2),
/// split by the hyperbola method with A(Y) = floor(Y) and
/// B(Y) = sum of odd b <= Y = ((floor(Y) + 1) / 2)^2.
HyperbolaParts<Int128> hurwitz_inner_parts(std::int64_t y);

/// sum_{q <= T} r_3(q^2) = 6 sum_{c <= T} mu(c) omega_{-1}(c) S(T/c).
std::int64_t hurwitz_theta_sum(double bound);

}  // namespace rsphere
