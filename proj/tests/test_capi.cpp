#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsphere/rsphere.h"

namespace {

std::string records_text(const rs_records* r, bool json) {
  auto writer = json ? rs_records_json : rs_records_csv;
  size_t needed = 0;
  REQUIRE(writer(r, nullptr, 0, &needed) == RS_BUFFER_TOO_SMALL);
  std::string text(needed, 'X');
  REQUIRE(writer(r, text.data(), text.size(), &needed) == RS_OK);
  CHECK(text.back() == '\0');
  text.pop_back();
  return text;
}

}  // namespace

TEST_CASE("counts through the C API") {
  int64_t v = 0;
  CHECK(rs_count_sphere(2, 3, RS_PATH_AUTO, &v) == RS_OK);
  CHECK(v == 30);
  CHECK(rs_count_theta(2, 3, RS_PATH_TABLE, &v) == RS_OK);
  CHECK(v == 42);
  CHECK(rs_count_sphere(2, 1000, RS_PATH_CLOSED, &v) == RS_OK);
  CHECK(v == 1638222);
  CHECK(rs_r_bruteforce(3, 9, &v) == RS_OK);
  CHECK(v == 30);
  CHECK(rs_hurwitz_r3sq(3, &v) == RS_OK);
  CHECK(v == 30);
  CHECK(rs_jacobi_r4(1, &v) == RS_OK);
  CHECK(v == 8);
  int64_t a = -1, b = -1;
  CHECK(rs_verify_lemma31(3, 100, RS_PATH_TABLE, &a, &b) == RS_OK);
  CHECK(a == 0);
  CHECK(b == 0);
}

TEST_CASE("error statuses and messages") {
  int64_t v = 0;
  CHECK(rs_count_sphere(2, -1, RS_PATH_AUTO, &v) == RS_INVALID_ARGUMENT);
  CHECK(std::strlen(rs_last_error()) > 0);
  CHECK(rs_count_sphere(2, 3, RS_PATH_AUTO, nullptr) == RS_INVALID_ARGUMENT);
  CHECK(rs_count_sphere(2, 2e6, RS_PATH_AUTO, &v) == RS_BUDGET_EXCEEDED);
  CHECK(std::string(rs_last_error_parameter()) == "T");
  CHECK(rs_count_sphere(4, 10, RS_PATH_CLOSED, &v) == RS_INVALID_ARGUMENT);
  rs_character* chi = nullptr;
  CHECK(rs_character_parse("nonsense", &chi) == RS_INVALID_ARGUMENT);
  CHECK(chi == nullptr);
  double d = 0;
  CHECK(rs_bkt_constant(4, &d) == RS_INVALID_ARGUMENT);
  CHECK(std::string(rs_status_string(RS_BUFFER_TOO_SMALL)).size() > 0);
  rs_table* table = nullptr;
  CHECK(rs_r_table(3, 1'000'000'000, &table) == RS_BUDGET_EXCEEDED);
  CHECK(std::string(rs_last_error_parameter()) == "M");
}

TEST_CASE("characters and constants") {
  rs_character* w = nullptr;
  REQUIRE(rs_character_omega(-1, &w) == RS_OK);
  CHECK(rs_character_modulus(w) == 4);
  CHECK(rs_character_conductor(w) == 4);
  CHECK(rs_character_eval(w, 3) == -1);
  CHECK_FALSE(rs_character_is_principal(w));
  rs_character* sq = nullptr;
  REQUIRE(rs_character_product(w, w, &sq) == RS_OK);
  CHECK(rs_character_is_principal(sq));

  double value = 0;
  CHECK(rs_l_value(w, 2, 1e-12, &value) == RS_OK);
  CHECK(std::fabs(value - 0.915965594177219) < 1e-12);
  double c2 = 0, c2s = 0;
  CHECK(rs_c2_constant(&c2, &c2s) == RS_OK);
  CHECK(std::fabs(c2 - 1.5 / 0.915965594177219) < 1e-12);

  rs_character* one = nullptr;
  REQUIRE(rs_character_principal(1, &one) == RS_OK);
  size_t needed = 0;
  char small[4];
  CHECK(rs_sum_sigma_squares(one, one, 1, 1000, small, sizeof small, &needed) == RS_BUFFER_TOO_SMALL);
  CHECK(needed == 10);
  std::vector<char> buf(needed);
  CHECK(rs_sum_sigma_squares(one, one, 1, 1000, buf.data(), buf.size(), &needed) == RS_OK);
  CHECK(std::string(buf.data()) == "609858290");
  CHECK(rs_sum_beta(5, 4, &value) == RS_OK);
  CHECK(value == 26);

  rs_character_free(one);
  rs_character_free(sq);
  rs_character_free(w);
}

TEST_CASE("coefficient tables") {
  rs_table* table = nullptr;
  REQUIRE(rs_r_table(3, 4, &table) == RS_OK);
  CHECK(rs_table_dim(table) == 3);
  CHECK(rs_table_limit(table) == 4);
  int64_t v = 0;
  CHECK(rs_table_get(table, 2, &v) == RS_OK);
  CHECK(v == 12);
  CHECK(rs_table_get(table, 5, &v) == RS_INVALID_ARGUMENT);
  rs_records* records = nullptr;
  REQUIRE(rs_table_records(table, &records) == RS_OK);
  CHECK(rs_records_count(records) == 5);
  CHECK(records_text(records, false) == "m,count\n0,1\n1,6\n2,12\n3,8\n4,6\n");
  rs_records_free(records);
  rs_table_free(table);
}

TEST_CASE("remainder scan records") {
  const int64_t grid[] = {10, 20, 40, 80, 160};
  rs_records* records = nullptr;
  REQUIRE(rs_remainder_scan(2, grid, 5, nullptr, 0, &records) == RS_OK);
  CHECK(rs_records_count(records) == 5);
  const std::string csv = records_text(records, false);
  CHECK(csv.rfind("n,T,count,main_term,remainder,normalized\n2,10,", 0) == 0);
  const auto json = nlohmann::json::parse(records_text(records, true));
  REQUIRE(json.size() == 5);
  int64_t count80 = 0;
  REQUIRE(rs_count_sphere(2, 80, RS_PATH_TABLE, &count80) == RS_OK);
  CHECK(json[3]["count"].get<int64_t>() == count80);
  CHECK(json[3]["T"].get<int64_t>() == 80);
  rs_exponent_fit fit{};
  CHECK(rs_fit_remainder_exponent(records, &fit) == RS_OK);
  CHECK(fit.points >= 2);
  rs_records_free(records);

  const int64_t bad[] = {10, 5};
  CHECK(rs_remainder_scan(2, bad, 2, nullptr, 0, &records) == RS_INVALID_ARGUMENT);
  CHECK(rs_remainder_scan(2, grid, 0, nullptr, 0, &records) == RS_INVALID_ARGUMENT);
}

TEST_CASE("constants records") {
  rs_character* one = nullptr;
  REQUIRE(rs_character_principal(1, &one) == RS_OK);
  rs_records* records = nullptr;
  REQUIRE(rs_constants(one, one, 2, 5, &records) == RS_OK);
  CHECK(rs_records_count(records) == 4);
  const auto json = nlohmann::json::parse(records_text(records, true));
  CHECK(json[0]["name"] == "c2");
  CHECK(json[1]["name"] == "c2_star");
  CHECK(json[2]["name"] == "skt_k2");
  CHECK(json[3]["name"] == "bkt_2k5");
  double skt = 0;
  CHECK(rs_skt_constant(one, one, 2, &skt) == RS_OK);
  CHECK(std::fabs(json[2]["value"].get<double>() - skt) <= 1e-11 * skt);

  rs_exponent_fit fit{};
  CHECK(rs_fit_remainder_exponent(records, &fit) == RS_INVALID_ARGUMENT);
  rs_records_free(records);
  rs_character_free(one);
}

TEST_CASE("grids and fits") {
  size_t needed = 0;
  CHECK(rs_geometric_grid(3, 100, 2, nullptr, 0, &needed) == RS_BUFFER_TOO_SMALL);
  CHECK(needed == 6);
  std::vector<int64_t> grid(needed);
  CHECK(rs_geometric_grid(3, 100, 2, grid.data(), grid.size(), &needed) == RS_OK);
  CHECK(grid == std::vector<int64_t>{3, 6, 13, 25, 50, 100});

  rs_fit fit{};
  CHECK(rs_fit_main_constant_dense(3, 2000, &fit) == RS_OK);
  CHECK(std::fabs(fit.constant - 2.0264) < 0.02);
  const int64_t short_grid[] = {10, 20, 30};
  CHECK(rs_fit_main_constant(3, short_grid, 3, &fit) == RS_INVALID_ARGUMENT);
}

TEST_CASE("thread setting does not change results") {
  const int64_t grid[] = {50, 100, 200, 400};
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    REQUIRE(rs_set_threads(i == 0 ? 1 : 4) == RS_OK);
    CHECK(rs_get_threads() == (i == 0 ? 1 : 4));
    rs_records* records = nullptr;
    REQUIRE(rs_divisor_scan_bkt(7, grid, 4, &records) == RS_OK);
    outputs[i] = records_text(records, false);
    rs_records_free(records);
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(rs_set_threads(-1) == RS_INVALID_ARGUMENT);
  CHECK(rs_set_threads(0) == RS_OK);
}
