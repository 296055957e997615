#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rsphere {

/// A real Dirichlet character stored as its value table over one period.
///
/// Entry i holds chi(i mod N) in {-1, 0, +1}. The table is validated on
/// construction: chi(i) = 0 exactly when gcd(i, N) > 1, chi(1) = 1, and chi is
/// completely multiplicative modulo N. The principal flag and the conductor
/// are derived from the table, never supplied by the caller.
class DirichletCharacter {
 public:
  /// Principal character mod N (N = 1 gives the constant function 1).
  static DirichletCharacter principal(std::int64_t modulus);
  /// Validates and wraps a value table. Throws InvalidArgument on a table
  /// that is not a real Dirichlet character modulo its length.
  static DirichletCharacter from_table(std::vector<std::int8_t> values);

  std::int64_t modulus() const noexcept { return static_cast<std::int64_t>(values_.size()); }
  bool is_principal() const noexcept { return principal_; }
  std::int64_t conductor() const noexcept { return conductor_; }
  std::span<const std::int8_t> values() const noexcept { return values_; }

  int operator()(std::int64_t n) const noexcept {
    std::int64_t r = n % modulus();
    if (r < 0) r += modulus();
    return values_[static_cast<std::size_t>(r)];
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.values_ == b.values_;
  }

 private:
  explicit DirichletCharacter(std::vector<std::int8_t> values);

  std::vector<std::int8_t> values_;
  bool principal_ = true;
  std::int64_t conductor_ = 1;
};

/// Jacobi symbol (c/d) for odd d, with Shimura's extension to negative d:
/// (c/d) = sign(c) (c/-d) for c != 0, and (0/d) = 1 iff d = +-1.
/// Throws InvalidArgument for even d.
int kronecker_shimura(std::int64_t c, std::int64_t d);

/// Signed squarefree kernel: m = squarefree_part(m) * s^2.
std::int64_t squarefree_part(std::int64_t m);

/// The primitive character omega_m agreeing with (m/d) for every d coprime
/// to 4m. Built at modulus 4|m*| (m* the squarefree part) and re-tabulated at
/// its conductor.
DirichletCharacter omega(std::int64_t m);

int char_eval(const DirichletCharacter& chi, std::int64_t n);

/// Pointwise product, tabulated modulo lcm(N1, N2).
DirichletCharacter char_product(const DirichletCharacter& a, const DirichletCharacter& b);

/// Smallest f | N such that chi(a) = chi(b) whenever a = b (mod f) and both
/// are units mod N.
std::int64_t conductor_of(std::span<const std::int8_t> values);

/// "principal:N", "omega:m" or a bare integer m (meaning omega_m).
DirichletCharacter parse_character(std::string_view selector);

}  // namespace rsphere
