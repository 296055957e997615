#include "rsphere/rsphere.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "rsphere/analysis.hpp"
#include "rsphere/characters.hpp"
#include "rsphere/divisor_sums.hpp"
#include "rsphere/io.hpp"
#include "rsphere/lfunctions.hpp"
#include "rsphere/parallel.hpp"
#include "rsphere/theta.hpp"
#include "rsphere/types.hpp"

using namespace rsphere;

struct rs_character {
  DirichletCharacter chi;
};

struct rs_table {
  CoefficientTable table;
};

struct rs_records {
  RecordTable table;
  std::optional<std::vector<ScanRecord>> scan;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_parameter;

template <class F>
rs_status guarded(F&& body) {
  g_error.clear();
  g_parameter.clear();
  try {
    body();
    return RS_OK;
  } catch (const InvalidArgument& e) {
    g_error = e.what();
    return RS_INVALID_ARGUMENT;
  } catch (const BudgetExceeded& e) {
    g_error = e.what();
    g_parameter = e.parameter();
    return RS_BUDGET_EXCEEDED;
  } catch (const NotConverged& e) {
    g_error = e.what();
    return RS_NOT_CONVERGED;
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return RS_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    g_error = e.what();
    return RS_INTERNAL;
  } catch (...) {
    g_error = "unknown failure";
    return RS_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

rs_status copy_text(const std::string& text, char* buf, std::size_t cap, std::size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (cap < text.size() + 1 || buf == nullptr) {
    g_error = "buffer too small";
    return RS_BUFFER_TOO_SMALL;
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return RS_OK;
}

CountPath to_path(rs_path path) {
  switch (path) {
    case RS_PATH_AUTO:
      return CountPath::kAuto;
    case RS_PATH_TABLE:
      return CountPath::kTable;
    case RS_PATH_CLOSED:
      return CountPath::kClosed;
  }
  throw InvalidArgument("unknown counting path");
}

std::vector<std::int64_t> to_grid(const int64_t* grid, std::size_t len) {
  require(grid != nullptr || len == 0, "grid pointer is null");
  return std::vector<std::int64_t>(grid, grid + len);
}

rs_character* wrap(DirichletCharacter chi) { return new rs_character{std::move(chi)}; }

}  // namespace

extern "C" {

const char* rs_status_string(rs_status status) {
  switch (status) {
    case RS_OK:
      return "ok";
    case RS_INVALID_ARGUMENT:
      return "invalid argument";
    case RS_BUDGET_EXCEEDED:
      return "budget exceeded";
    case RS_NOT_CONVERGED:
      return "not converged";
    case RS_BUFFER_TOO_SMALL:
      return "buffer too small";
    case RS_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* rs_last_error(void) { return g_error.c_str(); }
const char* rs_last_error_parameter(void) { return g_parameter.c_str(); }

rs_status rs_set_threads(int threads) {
  return guarded([&] { set_thread_count(threads); });
}

int rs_get_threads(void) { return thread_count(); }

rs_status rs_character_parse(const char* selector, rs_character** out) {
  return guarded([&] {
    require(selector && out, "null argument");
    *out = wrap(parse_character(selector));
  });
}

rs_status rs_character_principal(int64_t modulus, rs_character** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = wrap(DirichletCharacter::principal(modulus));
  });
}

rs_status rs_character_omega(int64_t m, rs_character** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = wrap(omega(m));
  });
}

rs_status rs_character_product(const rs_character* a, const rs_character* b, rs_character** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = wrap(char_product(a->chi, b->chi));
  });
}

int rs_character_eval(const rs_character* chi, int64_t n) { return chi ? chi->chi(n) : 0; }
int64_t rs_character_modulus(const rs_character* chi) { return chi ? chi->chi.modulus() : 0; }
int64_t rs_character_conductor(const rs_character* chi) { return chi ? chi->chi.conductor() : 0; }
int rs_character_is_principal(const rs_character* chi) { return chi && chi->chi.is_principal() ? 1 : 0; }
void rs_character_free(rs_character* chi) { delete chi; }

rs_status rs_count_sphere(int n, double T, rs_path path, int64_t* out) {
  return guarded([&] {
    require(out, "null argument");
    require(n >= 2, "sphere dimension n must be >= 2");
    const auto source = make_source(n, floor_bound(T), to_path(path));
    *out = SphereCounter(*source).sphere(T);
  });
}

rs_status rs_count_theta(int n, double T, rs_path path, int64_t* out) {
  return guarded([&] {
    require(out, "null argument");
    require(n >= 2, "sphere dimension n must be >= 2");
    const auto source = make_source(n, floor_bound(T), to_path(path));
    *out = SphereCounter(*source).theta(T);
  });
}

rs_status rs_verify_lemma31(int n, double T, rs_path path, int64_t* theta_residual, int64_t* sphere_residual) {
  return guarded([&] {
    require(theta_residual && sphere_residual, "null argument");
    const Lemma31Residuals r = verify_lemma31(n, T, to_path(path));
    *theta_residual = r.theta_from_sphere;
    *sphere_residual = r.sphere_from_theta;
  });
}

rs_status rs_hurwitz_r3sq(int64_t q, int64_t* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = hurwitz_r3sq(q);
  });
}

rs_status rs_jacobi_r4(int64_t m, int64_t* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = jacobi_r4(m);
  });
}

rs_status rs_r_bruteforce(int n, int64_t m, int64_t* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = r_bruteforce(n, m);
  });
}

rs_status rs_r_table(int n, int64_t max_m, rs_table** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new rs_table{r_table(n, max_m)};
  });
}

int rs_table_dim(const rs_table* table) { return table ? table->table.dim : 0; }
int64_t rs_table_limit(const rs_table* table) { return table ? table->table.limit : -1; }

rs_status rs_table_get(const rs_table* table, int64_t m, int64_t* out) {
  return guarded([&] {
    require(table && out, "null argument");
    require(m >= 0 && m <= table->table.limit, "index outside the table");
    *out = table->table[m];
  });
}

void rs_table_free(rs_table* table) { delete table; }

rs_status rs_l_value(const rs_character* chi, double s, double abs_tol, double* out) {
  return guarded([&] {
    require(chi && out, "null argument");
    *out = l_value(chi->chi, s, abs_tol);
  });
}

rs_status rs_l_value_restricted(const rs_character* chi, double s, int64_t restrict_to, double abs_tol, double* out) {
  return guarded([&] {
    require(chi && out, "null argument");
    *out = l_value_restricted(chi->chi, s, restrict_to, abs_tol);
  });
}

rs_status rs_skt_constant(const rs_character* chi1, const rs_character* chi2, int k, double* out) {
  return guarded([&] {
    require(chi1 && chi2 && out, "null argument");
    *out = skt_constant(chi1->chi, chi2->chi, k);
  });
}

rs_status rs_bkt_constant(int twice_k, double* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = bkt_constant(HalfInteger(twice_k));
  });
}

rs_status rs_c2_constant(double* c2, double* c2_star) {
  return guarded([&] {
    require(c2 && c2_star, "null argument");
    const C2Constants c = c2_constant();
    *c2 = c.c2;
    *c2_star = c.c2_star;
  });
}

rs_status rs_sum_sigma_squares(const rs_character* chi1, const rs_character* chi2, int k, int64_t T, char* buf,
                               size_t cap, size_t* needed) {
  std::string text;
  const rs_status status = guarded([&] {
    require(chi1 && chi2, "null argument");
    text = to_string(sum_sigma_squares(DivisorSumSpec{chi1->chi, chi2->chi, k}, T));
  });
  return status == RS_OK ? copy_text(text, buf, cap, needed) : status;
}

rs_status rs_sum_beta(int twice_k, int64_t T, double* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = static_cast<double>(sum_beta(HalfInteger(twice_k), T));
  });
}

rs_status rs_remainder_scan(int n, const int64_t* grid, size_t len, const double* constant, int peaks,
                            rs_records** out) {
  return guarded([&] {
    require(out, "null argument");
    const auto g = to_grid(grid, len);
    std::optional<double> c;
    if (constant) c = *constant;
    auto records = peaks ? scan_remainder_peaks(n, g, c) : scan_remainder(n, g, c);
    auto* r = new rs_records{scan_table(records), std::move(records)};
    *out = r;
  });
}

rs_status rs_divisor_scan_skt(const rs_character* chi1, const rs_character* chi2, int k, const int64_t* grid,
                              size_t len, rs_records** out) {
  return guarded([&] {
    require(chi1 && chi2 && out, "null argument");
    *out = new rs_records{divisor_scan_table(divisor_scan_skt(chi1->chi, chi2->chi, k, to_grid(grid, len))), {}};
  });
}

rs_status rs_divisor_scan_bkt(int twice_k, const int64_t* grid, size_t len, rs_records** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new rs_records{divisor_scan_table(divisor_scan_bkt(HalfInteger(twice_k), to_grid(grid, len))), {}};
  });
}

rs_status rs_constants(const rs_character* chi1, const rs_character* chi2, int k, int twice_k, rs_records** out) {
  return guarded([&] {
    require(out, "null argument");
    const C2Constants c = c2_constant();
    std::vector<NamedValue> values{{"c2", c.c2}, {"c2_star", c.c2_star}};
    if (chi1 && chi2 && k > 0) values.push_back({"skt_k" + std::to_string(k), skt_constant(chi1->chi, chi2->chi, k)});
    if (twice_k > 0) {
      values.push_back({"bkt_2k" + std::to_string(twice_k), bkt_constant(HalfInteger(twice_k))});
    }
    *out = new rs_records{constants_table(values), {}};
  });
}

rs_status rs_table_records(const rs_table* table, rs_records** out) {
  return guarded([&] {
    require(table && out, "null argument");
    *out = new rs_records{coefficient_table(table->table), {}};
  });
}

size_t rs_records_count(const rs_records* records) { return records ? records->table.rows.size() : 0; }

rs_status rs_records_csv(const rs_records* records, char* buf, size_t cap, size_t* needed) {
  std::string text;
  const rs_status status = guarded([&] {
    require(records, "null argument");
    text = to_csv(records->table);
  });
  return status == RS_OK ? copy_text(text, buf, cap, needed) : status;
}

rs_status rs_records_json(const rs_records* records, char* buf, size_t cap, size_t* needed) {
  std::string text;
  const rs_status status = guarded([&] {
    require(records, "null argument");
    text = to_json(records->table);
  });
  return status == RS_OK ? copy_text(text, buf, cap, needed) : status;
}

void rs_records_free(rs_records* records) { delete records; }

rs_status rs_geometric_grid(int64_t start, int64_t stop, double ratio, int64_t* buf, size_t cap, size_t* needed) {
  std::vector<std::int64_t> grid;
  const rs_status status = guarded([&] { grid = geometric_grid(start, stop, ratio); });
  if (status != RS_OK) return status;
  if (needed) *needed = grid.size();
  if (cap < grid.size() || (buf == nullptr && !grid.empty())) {
    g_error = "buffer too small";
    return RS_BUFFER_TOO_SMALL;
  }
  std::copy(grid.begin(), grid.end(), buf);
  return RS_OK;
}

rs_status rs_fit_main_constant(int n, const int64_t* grid, size_t len, rs_fit* out) {
  return guarded([&] {
    require(out, "null argument");
    const FitResult f = fit_main_constant(n, to_grid(grid, len));
    *out = rs_fit{f.constant, f.correction, f.residual_norm, f.points};
  });
}

rs_status rs_fit_main_constant_dense(int n, int64_t cap, rs_fit* out) {
  return guarded([&] {
    require(out, "null argument");
    const FitResult f = fit_main_constant(n, dense_fit_grid(cap));
    *out = rs_fit{f.constant, f.correction, f.residual_norm, f.points};
  });
}

rs_status rs_fit_remainder_exponent(const rs_records* records, rs_exponent_fit* out) {
  return guarded([&] {
    require(records && out, "null argument");
    require(records->scan.has_value(), "records do not come from a remainder scan");
    const ExponentFit f = fit_remainder_exponent(*records->scan);
    *out = rs_exponent_fit{f.exact ? 1 : 0, f.exponent, f.residual_norm, f.points};
  });
}

}  // extern "C"
