#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

namespace rsphere {

/// r_n(m) = #{v in Z^n : |v|^2 = m} for 0 <= m <= limit.
struct CoefficientTable {
  int dim = 0;
  std::int64_t limit = 0;
  std::vector<std::int64_t> counts;

  std::int64_t operator[](std::int64_t m) const { return counts[static_cast<std::size_t>(m)]; }
};

/// Caps for r_table: (n-1) M^{3/2} elementary steps and M + 1 entries.
inline constexpr double kThetaComputeBudget = 5e10;
inline constexpr std::int64_t kThetaMaxEntries = 100'000'000;

/// Builds r_n(0..M) by n-1 convolutions with the one-dimensional theta
/// sequence (1 at 0, 2 at each positive square). Output blocks are filled in
/// parallel; every entry is an exact integer. Throws BudgetExceeded when the
/// work, the table size, or the int64 range of the entries would be exceeded.
CoefficientTable r_table(int n, std::int64_t max_m);

/// Independent oracle: enumerates non-increasing non-negative tuples with
/// square sum m and weights each by its signed permutations. 1 <= n <= 6;
/// guarded by an enumeration-size estimate rather than a fixed bound on m.
std::int64_t r_bruteforce(int n, std::int64_t m);

/// r_3(q^2) = 6 sum_{abc = q} mu(c) omega_{-1}(c) chi_0(b) b, with chi_0 the
/// principal character mod 2. Evaluated term by term over divisors of q.
std::int64_t hurwitz_r3sq(std::int64_t q);

/// r_4(m) = 8 sum_{d | m, 4 not dividing d} d.
std::int64_t jacobi_r4(std::int64_t m);

/// "m,count" CSV with a header row.
void write_table_csv(std::ostream& out, const CoefficientTable& table);
CoefficientTable read_table_csv(std::istream& in, int dim);

/// Supplies r_{n+1}(q^2) for 1 <= q <= max_q, the input to every primitive
/// point count on S^n.
class SquareCoefficientSource {
 public:
  virtual ~SquareCoefficientSource() = default;
  /// Sphere dimension n (the lattice has dimension n + 1).
  virtual int sphere_dimension() const = 0;
  virtual std::int64_t max_q() const = 0;
  virtual std::int64_t at(std::int64_t q) const = 0;
};

enum class CountPath {
  kTable,   // iterated-convolution table, any n
  kClosed,  // Hurwitz (n = 2) or Jacobi (n = 3) closed forms
  kAuto,    // closed form when available and within its budget
};

/// Largest T accepted by the closed-form paths.
inline constexpr std::int64_t kClosedFormMaxT = 1'000'000;

std::unique_ptr<SquareCoefficientSource> make_source(int n, std::int64_t max_q, CountPath path = CountPath::kAuto);

/// #{p in Z^{n+1} : |p|^2 = q^2, gcd(p, q) = 1} = sum_{d | q} mu(d) r_{n+1}((q/d)^2).
std::int64_t primitive_count(int n, std::int64_t q, const SquareCoefficientSource& source);

/// Prefix tables over 1..max_q answering N(S^n; x) and N_k(Theta_{n+1}; x)
/// for any 0 <= x < max_q + 1 in O(1). The sphere side is built from the
/// Möbius layer sum_{d|q} mu(d) R(q/d), never from the theta prefix.
class SphereCounter {
 public:
  explicit SphereCounter(const SquareCoefficientSource& source);

  int sphere_dimension() const noexcept { return dim_; }
  std::int64_t max_q() const noexcept { return max_q_; }

  std::int64_t sphere(double bound) const;
  std::int64_t theta(double bound) const;
  std::int64_t primitive(std::int64_t q) const;

 private:
  std::int64_t index(double bound) const;

  int dim_;
  std::int64_t max_q_;
  std::vector<std::int64_t> primitive_;
  std::vector<std::int64_t> sphere_prefix_;
  std::vector<std::int64_t> theta_prefix_;
};

struct SphereCount {
  int dim = 0;
  double bound = 0;
  std::int64_t value = 0;
};

/// Validates T >= 0 (finite) and returns floor(T).
std::int64_t floor_bound(double bound);

/// N(S^n; T) through r_table. n >= 2.
SphereCount count_sphere(int n, double bound);
/// sum_{q <= T} r_{n+1}(q^2) through r_table.
std::int64_t count_theta(int n, double bound);
/// N(S^n; T) through the closed forms, n in {2, 3}, T <= 1e6.
SphereCount count_sphere_fast(int n, double bound);

}  // namespace rsphere
