#pragma once

#include <cstdint>

#include "rsphere/characters.hpp"

namespace rsphere {

inline constexpr double kDefaultTolerance = 1e-12;

struct LRequest {
  DirichletCharacter character = DirichletCharacter::principal(1);
  double s = 2.0;
  double abs_tol = kDefaultTolerance;
};

/// Weight parameter k in 1/2 + N, stored as the odd integer 2k.
class HalfInteger {
 public:
  explicit HalfInteger(int twice);

  int twice() const noexcept { return twice_; }
  double value() const noexcept { return twice_ / 2.0; }
  /// s_k = (-1)^(k - 1/2).
  int sign() const noexcept { return ((twice_ - 1) / 2) % 2 == 0 ? 1 : -1; }
  /// k - 1/2 and k - 3/2 as integers.
  int floor() const noexcept { return (twice_ - 1) / 2; }

 private:
  int twice_;
};

/// Hurwitz zeta(s, a) for real s > 1, a > 0, by Euler-Maclaurin summation.
/// `error_bound` receives the certified truncation bound (first omitted
/// correction term, which dominates the remainder for real s).
long double hurwitz_zeta(long double s, long double a, long double tol, long double* error_bound = nullptr);

double zeta(double s, double tol = kDefaultTolerance);

/// L(chi, s) to within abs_tol. Principal characters reduce to zeta(s) times
/// the Euler factors at p | N. Otherwise the series is split into residue
/// classes mod N: the first period is summed directly and each class's tail
/// is a Hurwitz zeta value. Results are memoized per process.
/// Throws NotConverged when round-off prevents certifying abs_tol (s -> 1).
double l_value(const LRequest& request);
double l_value(const DirichletCharacter& chi, double s, double abs_tol = kDefaultTolerance);

/// L_M(chi, s) = L(chi, s) * prod_{p | M, p not dividing N} (1 - chi(p) p^-s).
double l_value_restricted(const DirichletCharacter& chi, double s, std::int64_t restrict_to,
                          double abs_tol = kDefaultTolerance);

/// Main-term constant of sum_{q<=T} sigma_k(chi1, chi2, q^2) ~ C T^(2k+1):
/// phi(N1)/((2k+1) N1) * L(chi2^2, 2k+1) L(chi1 chi2, k+1) / L(chi1^2 chi2^2, 2k+2).
double skt_constant(const DirichletCharacter& chi1, const DirichletCharacter& chi2, int k);

/// Main-term constant of the odd-m sum of beta_k(m) ~ C T^(2k-1):
/// zeta_2(2k-1) / ((4k-2) L_2(omega_{s_k}, k+1/2)). Requires k >= 5/2.
double bkt_constant(HalfInteger k);

struct C2Constants {
  double c2_star = 0;  // 3 zeta(2) / (2 L(omega_{-1}, 2)), theta-sum constant
  double c2 = 0;       // c2_star / zeta(2), sphere-count constant
};

C2Constants c2_constant();

}  // namespace rsphere
