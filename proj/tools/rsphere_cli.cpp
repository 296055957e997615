#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsphere/rsphere.h"

namespace {

constexpr int kExitCompute = 1;
constexpr int kExitUsage = 2;

// Failure raised while running a subcommand; carries the exit code.
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(rs_status status) {
  std::string message = std::string(rs_status_string(status)) + ": " + rs_last_error();
  const std::string parameter = rs_last_error_parameter();
  if (status == RS_BUDGET_EXCEEDED && !parameter.empty()) {
    message = "budget exceeded for parameter " + parameter + ": " + rs_last_error();
  }
  const int code = status == RS_INVALID_ARGUMENT ? kExitUsage : kExitCompute;
  throw Failure{code, message};
}

void check(rs_status status) {
  if (status != RS_OK) fail(status);
}

struct CharacterDeleter {
  void operator()(rs_character* chi) const { rs_character_free(chi); }
};
struct RecordsDeleter {
  void operator()(rs_records* r) const { rs_records_free(r); }
};
using CharacterPtr = std::unique_ptr<rs_character, CharacterDeleter>;
using RecordsPtr = std::unique_ptr<rs_records, RecordsDeleter>;

CharacterPtr parse_character(const std::string& selector) {
  rs_character* chi = nullptr;
  check(rs_character_parse(selector.c_str(), &chi));
  return CharacterPtr(chi);
}

std::vector<int64_t> parse_grid(const std::string& spec) {
  std::vector<int64_t> grid;
  if (spec.find(':') != std::string::npos) {
    std::istringstream in(spec);
    std::string start, stop, ratio;
    if (!std::getline(in, start, ':') || !std::getline(in, stop, ':') || !std::getline(in, ratio)) {
      throw Failure{kExitUsage, "grid must look like start:stop:ratio or a comma list"};
    }
    try {
      const int64_t a = std::stoll(start);
      const int64_t b = std::stoll(stop);
      const double r = std::stod(ratio);
      size_t needed = 0;
      const rs_status status = rs_geometric_grid(a, b, r, nullptr, 0, &needed);
      if (status != RS_OK && status != RS_BUFFER_TOO_SMALL) fail(status);
      grid.resize(needed);
      check(rs_geometric_grid(a, b, r, grid.data(), grid.size(), &needed));
    } catch (const std::logic_error&) {
      throw Failure{kExitUsage, "grid values are not numbers: " + spec};
    }
    return grid;
  }
  std::istringstream in(spec);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      size_t used = 0;
      grid.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Failure{kExitUsage, "grid value is not an integer: " + item};
    }
  }
  for (size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw Failure{kExitUsage, "grid must be strictly increasing"};
  }
  if (grid.empty()) throw Failure{kExitUsage, "grid is empty"};
  return grid;
}

std::string render(const rs_records* records, const std::string& format) {
  auto writer = format == "json" ? rs_records_json : rs_records_csv;
  size_t needed = 0;
  const rs_status status = writer(records, nullptr, 0, &needed);
  if (status != RS_BUFFER_TOO_SMALL && status != RS_OK) fail(status);
  std::string text(needed, '\0');
  check(writer(records, text.data(), text.size(), &needed));
  text.resize(needed - 1);
  return text;
}

rs_path parse_path(const std::string& path) {
  if (path == "table") return RS_PATH_TABLE;
  if (path == "closed") return RS_PATH_CLOSED;
  return RS_PATH_AUTO;
}

std::string integer_text(int n, double T, int64_t value, const char* key, const std::string& format) {
  if (format != "json") return std::to_string(value) + "\n";
  std::ostringstream out;
  out << "{\"n\": " << n << ", \"T\": " << T << ", \"" << key << "\": " << value << "}\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rational-point counts on spheres and the divisor-sum and L-value machinery behind them"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string threads = "max";
  std::string format = "csv";
  std::string out_path;
  std::string path = "auto";
  app.add_option("--threads", threads, "worker threads: a positive integer or 'max'");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write results to this file instead of standard output");
  app.add_option("--path", path, "counting path")->check(CLI::IsMember({"auto", "table", "closed"}));

  int n = 2;
  double T = 0;
  int64_t max_m = 0;
  int k = 1;
  int weight2k = 0;
  std::string kind = "skt";
  std::string chi1 = "principal:1";
  std::string chi2 = "principal:1";
  std::string grid_spec;
  double constant = 0;
  bool peaks = false;

  auto* count = app.add_subcommand("count", "N(S^n; T), points in lowest terms with denominator <= T");
  count->add_option("--n", n, "sphere dimension")->required()->check(CLI::Range(2, 64));
  count->add_option("--T", T, "denominator bound")->required()->check(CLI::NonNegativeNumber);

  auto* theta = app.add_subcommand("theta-sum", "sum of r_{n+1}(q^2) over q <= T");
  theta->add_option("--n", n, "sphere dimension")->required()->check(CLI::Range(2, 64));
  theta->add_option("--T", T, "denominator bound")->required()->check(CLI::NonNegativeNumber);

  auto* identity = app.add_subcommand("identity-check", "gcd-layer identity between theta sums and sphere counts");
  identity->add_option("--n", n, "sphere dimension")->required()->check(CLI::Range(2, 5));
  identity->add_option("--T", T, "denominator bound")->required()->check(CLI::NonNegativeNumber);

  auto* divisor = app.add_subcommand("divisor-scan", "S_k or B_k against T with the predicted constant");
  divisor->add_option("--kind", kind, "skt or bkt")->check(CLI::IsMember({"skt", "bkt"}));
  divisor->add_option("--chi1", chi1, "first character (principal:N, omega:m or m)");
  divisor->add_option("--chi2", chi2, "second character");
  divisor->add_option("--k", k, "integral weight for skt")->check(CLI::Range(1, 16));
  divisor->add_option("--weight2k", weight2k, "twice the half-integral weight for bkt");
  divisor->add_option("--grid", grid_spec, "start:stop:ratio or a comma list")->required();

  auto* constants = app.add_subcommand("constants", "c2, c2*, and optionally S_k / B_k constants");
  auto* constants_k = constants->add_option("--k", k, "integral weight for the S_k constant")->check(CLI::Range(1, 16));
  constants->add_option("--chi1", chi1, "first character");
  constants->add_option("--chi2", chi2, "second character");
  constants->add_option("--weight2k", weight2k, "twice the half-integral weight for the B_k constant");

  auto* remainder = app.add_subcommand("remainder-scan", "N(S^n; T) against c T^n over a grid");
  remainder->add_option("--n", n, "sphere dimension")->required()->check(CLI::Range(2, 64));
  remainder->add_option("--grid", grid_spec, "start:stop:ratio or a comma list")->required();
  auto* constant_opt = remainder->add_option("--constant", constant, "main-term constant (default: c2 or fitted)");
  remainder->add_flag("--peaks", peaks, "report the largest |remainder| in each grid window");

  auto* rtable = app.add_subcommand("rtable", "dump r_n(m) for 0 <= m <= M");
  rtable->add_option("--n", n, "lattice dimension")->required()->check(CLI::Range(1, 64));
  rtable->add_option("--M", max_m, "largest m")->required()->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (threads == "max") {
      check(rs_set_threads(0));
    } else {
      int value = 0;
      try {
        size_t used = 0;
        value = std::stoi(threads, &used);
        if (used != threads.size()) throw std::invalid_argument(threads);
      } catch (const std::logic_error&) {
        throw Failure{kExitUsage, "--threads must be a positive integer or 'max'"};
      }
      if (value < 1) throw Failure{kExitUsage, "--threads must be a positive integer or 'max'"};
      check(rs_set_threads(value));
    }

    std::string text;
    int exit_code = 0;
    if (*count) {
      int64_t value = 0;
      check(rs_count_sphere(n, T, parse_path(path), &value));
      text = integer_text(n, T, value, "count", format);
    } else if (*theta) {
      int64_t value = 0;
      check(rs_count_theta(n, T, parse_path(path), &value));
      text = integer_text(n, T, value, "theta_sum", format);
    } else if (*identity) {
      int64_t a = 0, b = 0;
      const rs_path p = path == "auto" ? RS_PATH_TABLE : parse_path(path);
      check(rs_verify_lemma31(n, T, p, &a, &b));
      const bool exact = a == 0 && b == 0;
      text = std::string("lemma31: ") + (exact ? "exact" : "MISMATCH") + " (" + std::to_string(a) + "," +
             std::to_string(b) + ")\n";
      exit_code = exact ? 0 : kExitCompute;
    } else if (*divisor) {
      const auto grid = parse_grid(grid_spec);
      rs_records* raw = nullptr;
      if (kind == "skt") {
        const auto a = parse_character(chi1);
        const auto b = parse_character(chi2);
        check(rs_divisor_scan_skt(a.get(), b.get(), k, grid.data(), grid.size(), &raw));
      } else {
        if (weight2k == 0) throw Failure{kExitUsage, "--kind bkt needs --weight2k (5, 7 or 9)"};
        check(rs_divisor_scan_bkt(weight2k, grid.data(), grid.size(), &raw));
      }
      const RecordsPtr records(raw);
      text = render(records.get(), format);
    } else if (*constants) {
      rs_records* raw = nullptr;
      if (*constants_k) {
        const auto a = parse_character(chi1);
        const auto b = parse_character(chi2);
        check(rs_constants(a.get(), b.get(), k, weight2k, &raw));
      } else {
        check(rs_constants(nullptr, nullptr, 0, weight2k, &raw));
      }
      const RecordsPtr records(raw);
      text = render(records.get(), format);
    } else if (*remainder) {
      const auto grid = parse_grid(grid_spec);
      rs_records* raw = nullptr;
      check(rs_remainder_scan(n, grid.data(), grid.size(), *constant_opt ? &constant : nullptr, peaks ? 1 : 0, &raw));
      const RecordsPtr records(raw);
      text = render(records.get(), format);
      rs_exponent_fit fit{};
      if (grid.size() >= 4 && rs_fit_remainder_exponent(records.get(), &fit) == RS_OK) {
        if (fit.exact) {
          std::cerr << "remainder exponent: exact (all remainders zero)\n";
        } else {
          std::cerr << "remainder exponent: " << fit.exponent << " over " << fit.points << " rows\n";
        }
      }
    } else if (*rtable) {
      rs_table* table = nullptr;
      check(rs_r_table(n, max_m, &table));
      rs_records* raw = nullptr;
      const rs_status status = rs_table_records(table, &raw);
      rs_table_free(table);
      check(status);
      const RecordsPtr records(raw);
      text = render(records.get(), format);
    }

    if (out_path.empty()) {
      std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
        throw Failure{kExitCompute, "cannot write " + out_path};
      }
    }
    return exit_code;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
}
