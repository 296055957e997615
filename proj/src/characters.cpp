#include "rsphere/characters.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <string>

#include "rsphere/arith.hpp"
#include "rsphere/types.hpp"

namespace rsphere {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 24;
constexpr std::int64_t kFullMultiplicativityCheck = 2048;

int jacobi(std::int64_t a, std::int64_t n) {
  // n odd and positive.
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::int64_t r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::vector<std::int8_t> values) : values_(std::move(values)) {
  const std::int64_t n = modulus();
  principal_ = true;
  for (std::int64_t i = 0; i < n; ++i) {
    if (std::gcd(i, n) == 1 && values_[static_cast<std::size_t>(i)] != 1) {
      principal_ = false;
      break;
    }
  }
  conductor_ = principal_ ? 1 : conductor_of(values_);
}

DirichletCharacter DirichletCharacter::principal(std::int64_t modulus) {
  if (modulus < 1 || modulus > kMaxModulus) {
    throw InvalidArgument("principal character modulus out of range: " + std::to_string(modulus));
  }
  std::vector<std::int8_t> values(static_cast<std::size_t>(modulus));
  for (std::int64_t i = 0; i < modulus; ++i) values[static_cast<std::size_t>(i)] = std::gcd(i, modulus) == 1 ? 1 : 0;
  return DirichletCharacter(std::move(values));
}

DirichletCharacter DirichletCharacter::from_table(std::vector<std::int8_t> values) {
  const auto n = static_cast<std::int64_t>(values.size());
  if (n < 1 || n > kMaxModulus) throw InvalidArgument("character table length out of range");
  for (std::int64_t i = 0; i < n; ++i) {
    const int v = values[static_cast<std::size_t>(i)];
    if (v < -1 || v > 1) throw InvalidArgument("character values must lie in {-1,0,1}");
    if ((v == 0) != (std::gcd(i, n) != 1)) {
      throw InvalidArgument("character must vanish exactly on non-units (index " + std::to_string(i) + ")");
    }
  }
  if (values[1 % n] != 1) throw InvalidArgument("character must satisfy chi(1) = 1");

  const std::int64_t b_limit = n <= kFullMultiplicativityCheck ? n : 64;
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < std::min(n, b_limit); ++b) {
      const int lhs = values[static_cast<std::size_t>(static_cast<std::int64_t>((static_cast<Int128>(a) * b) % n))];
      if (lhs != values[static_cast<std::size_t>(a)] * values[static_cast<std::size_t>(b)]) {
        throw InvalidArgument("character table is not completely multiplicative");
      }
    }
  }
  return DirichletCharacter(std::move(values));
}

int kronecker_shimura(std::int64_t c, std::int64_t d) {
  if ((d & 1) == 0) throw InvalidArgument("kronecker_shimura requires odd d, got " + std::to_string(d));
  if (d > 0) return jacobi(c, d);
  if (c == 0) return d == -1 ? 1 : 0;
  const int sign = c > 0 ? 1 : -1;
  return sign * jacobi(c, -d);
}

std::int64_t squarefree_part(std::int64_t m) {
  if (m == 0) throw InvalidArgument("squarefree part of 0 is undefined");
  if (m == INT64_MIN) throw InvalidArgument("value out of range");
  std::int64_t kernel = 1;
  for (const auto& pp : factorize(m < 0 ? -m : m).factors) {
    if (pp.exponent % 2 == 1) kernel *= pp.prime;
  }
  return m < 0 ? -kernel : kernel;
}

std::int64_t conductor_of(std::span<const std::int8_t> values) {
  const auto n = static_cast<std::int64_t>(values.size());
  if (n < 1) throw InvalidArgument("empty character table");
  for (std::int64_t f : divisors(n)) {
    // seen[r] holds the value shared by units congruent to r mod f (2 = none yet).
    std::vector<std::int8_t> seen(static_cast<std::size_t>(f), 2);
    bool periodic = true;
    for (std::int64_t a = 0; a < n && periodic; ++a) {
      const std::int8_t v = values[static_cast<std::size_t>(a)];
      if (std::gcd(a, n) != 1) continue;
      auto& slot = seen[static_cast<std::size_t>(a % f)];
      if (slot == 2) {
        slot = v;
      } else if (slot != v) {
        periodic = false;
      }
    }
    if (periodic) return f;
  }
  return n;
}

DirichletCharacter omega(std::int64_t m) {
  if (m == 0) throw InvalidArgument("omega requires m != 0");
  const std::int64_t kernel = squarefree_part(m);
  const std::int64_t abs_kernel = kernel < 0 ? -kernel : kernel;
  if (abs_kernel > kMaxModulus / 4) throw InvalidArgument("omega: |m| too large for a dense table");
  const std::int64_t big = 4 * abs_kernel;

  std::vector<std::int8_t> wide(static_cast<std::size_t>(big), 0);
  for (std::int64_t d = 1; d < big; d += 2) {
    if (std::gcd(d, big) == 1) wide[static_cast<std::size_t>(d)] = static_cast<std::int8_t>(kronecker_shimura(kernel, d));
  }
  const std::int64_t f = conductor_of(wide);

  std::vector<std::int8_t> primitive(static_cast<std::size_t>(f), 0);
  for (std::int64_t r = 0; r < f; ++r) {
    if (std::gcd(r, f) != 1) continue;
    std::int64_t lift = r;
    while (std::gcd(lift, big) != 1) lift += f;
    primitive[static_cast<std::size_t>(r)] = wide[static_cast<std::size_t>(lift % big)];
  }
  return DirichletCharacter::from_table(std::move(primitive));
}

int char_eval(const DirichletCharacter& chi, std::int64_t n) { return chi(n); }

DirichletCharacter char_product(const DirichletCharacter& a, const DirichletCharacter& b) {
  const std::int64_t n = std::lcm(a.modulus(), b.modulus());
  if (n > kMaxModulus) throw InvalidArgument("character product modulus too large");
  std::vector<std::int8_t> values(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(a(i) * b(i));
  return DirichletCharacter::from_table(std::move(values));
}

DirichletCharacter parse_character(std::string_view selector) {
  constexpr std::string_view kPrincipal = "principal:";
  constexpr std::string_view kOmega = "omega:";
  if (selector.starts_with(kPrincipal)) {
    return DirichletCharacter::principal(parse_int(selector.substr(kPrincipal.size()), "modulus"));
  }
  if (selector.starts_with(kOmega)) selector.remove_prefix(kOmega.size());
  return omega(parse_int(selector, "character selector"));
}

}  // namespace rsphere
