#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qtomo/qtomo.h"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("qtomo_capi_" + name); }

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("C API: status names and null handling") {
  CHECK(std::string(qtomo_status_name(QTOMO_OK)) == "ok");
  CHECK(std::string(qtomo_status_name(QTOMO_ERR_RECORD_MISMATCH)) == "record_mismatch");
  CHECK(qtomo_state_load(nullptr, nullptr) == QTOMO_ERR_NULL_POINTER);
  CHECK(std::string(qtomo_last_error()).find("null") != std::string::npos);
  qtomo_state_free(nullptr);
  qtomo_records_free(nullptr);
  qtomo_target_free(nullptr);
}

TEST_CASE("C API: invalid states map to status codes with messages") {
  const double not_unit_trace[] = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0};
  qtomo_state_t s = nullptr;
  CHECK(qtomo_state_spin(1, not_unit_trace, &s) == QTOMO_ERR_INVALID_STATE);
  CHECK(s == nullptr);
  CHECK(std::string(qtomo_last_error()).find("trace") != std::string::npos);
  CHECK(qtomo_state_load("/nonexistent/state.json", &s) == QTOMO_ERR_IO);
  CHECK(qtomo_state_coherent(1.0, 0.0, 0, &s) == QTOMO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API: spin simulate, save, load, reconstruct") {
  const double mixed[] = {0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0};
  qtomo_state_t state = nullptr;
  REQUIRE(qtomo_state_spin(1, mixed, &state) == QTOMO_OK);
  int kind = -1, label = 0;
  CHECK(qtomo_state_kind(state, &kind) == QTOMO_OK);
  CHECK(kind == QTOMO_KIND_SPIN);
  CHECK(qtomo_state_size_label(state, &label) == QTOMO_OK);
  CHECK(label == 1);

  qtomo_records_t a = nullptr, b = nullptr;
  REQUIRE(qtomo_simulate(state, 100, 7, 1, &a) == QTOMO_OK);
  REQUIRE(qtomo_simulate(state, 100, 7, 4, &b) == QTOMO_OK);
  const auto pa = scratch("spin_a.jsonl"), pb = scratch("spin_b.jsonl");
  CHECK(qtomo_records_save(a, pa.c_str(), QTOMO_CONVENTION_Y) == QTOMO_OK);
  CHECK(qtomo_records_save(b, pb.c_str(), QTOMO_CONVENTION_Y) == QTOMO_OK);
  CHECK(lines_of(pa).size() == 100);
  CHECK(lines_of(pa) == lines_of(pb));

  qtomo_records_t loaded = nullptr;
  REQUIRE(qtomo_records_load(pa.c_str(), &loaded) == QTOMO_OK);
  std::size_t count = 0;
  CHECK(qtomo_records_count(loaded, &count) == QTOMO_OK);
  CHECK(count == 100);
  double axis[3];
  int two_m = 0;
  CHECK(qtomo_records_spin_get(loaded, 3, axis, &two_m) == QTOMO_OK);
  CHECK(std::abs(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2] - 1.0) <= 1e-12);
  CHECK((two_m == 1 || two_m == -1));
  double phi, y;
  CHECK(qtomo_records_homodyne_get(loaded, 0, &phi, &y) == QTOMO_ERR_RECORD_MISMATCH);
  CHECK(qtomo_records_spin_get(loaded, 100, axis, &two_m) == QTOMO_ERR_INVALID_ARGUMENT);

  qtomo_target_t ident = nullptr, photon = nullptr;
  REQUIRE(qtomo_target_spin_operator("I", &ident) == QTOMO_OK);
  qtomo_estimate_t est;
  REQUIRE(qtomo_reconstruct(loaded, ident, 1, 2, &est) == QTOMO_OK);
  CHECK(std::abs(est.mean_re - 1.0) <= 1e-12);
  CHECK(est.count == 100);
  CHECK(est.stderr_defined == 1);
  REQUIRE(qtomo_target_photon_number(&photon) == QTOMO_OK);
  CHECK(qtomo_reconstruct(loaded, photon, 0, 1, &est) == QTOMO_ERR_RECORD_MISMATCH);

  std::size_t needed = 0;
  CHECK(qtomo_estimate_to_json(ident, &est, nullptr, 0, &needed) == QTOMO_OK);
  std::vector<char> small(4);
  CHECK(qtomo_estimate_to_json(ident, &est, small.data(), small.size(), &needed) == QTOMO_ERR_BUFFER_TOO_SMALL);
  std::vector<char> buf(needed);
  CHECK(qtomo_estimate_to_json(ident, &est, buf.data(), buf.size(), &needed) == QTOMO_OK);
  CHECK(std::string(buf.data()).find("\"observable\": \"I\"") != std::string::npos);

  qtomo_target_free(ident);
  qtomo_target_free(photon);
  qtomo_records_free(loaded);
  qtomo_records_free(a);
  qtomo_records_free(b);
  qtomo_state_free(state);
  fs::remove(pa);
  fs::remove(pb);
}

TEST_CASE("C API: homodyne matrix element on a coherent state") {
  qtomo_state_t state = nullptr;
  REQUIRE(qtomo_state_coherent(0.6, 0.0, 16, &state) == QTOMO_OK);
  qtomo_records_t records = nullptr;
  REQUIRE(qtomo_simulate(state, 20000, 3, 1, &records) == QTOMO_OK);
  qtomo_target_t target = nullptr;
  REQUIRE(qtomo_target_from_json(R"({"kind": "matrix-element", "n": 0, "l": 1})", &target) == QTOMO_OK);
  int kind = -1;
  CHECK(qtomo_target_kind(target, &kind) == QTOMO_OK);
  CHECK(kind == QTOMO_KIND_HOMODYNE);
  qtomo_estimate_t est;
  REQUIRE(qtomo_reconstruct(records, target, 0, 1, &est) == QTOMO_OK);
  // rho_{1,0} = e^{-|a|^2} a for real a
  const double truth = std::exp(-0.36) * 0.6;
  CHECK(std::abs(est.mean_re - truth) <= 4.0 * est.stderr_re);
  CHECK(std::abs(est.mean_im) <= 4.0 * est.stderr_im);
  qtomo_target_free(target);
  qtomo_records_free(records);
  qtomo_state_free(state);
}

TEST_CASE("C API: kernels and export") {
  double re = 0.0, im = 0.0;
  CHECK(qtomo_homodyne_kernel(0, 0, 1.0, 0.0, 0.0, &re, &im) == QTOMO_OK);
  CHECK(re == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(qtomo_homodyne_kernel(-1, 0, 0.0, 0.0, 0.0, &re, &im) == QTOMO_ERR_INVALID_ARGUMENT);
  double pn = 0.0;
  CHECK(qtomo_photon_number_kernel(1.0, &pn) == QTOMO_OK);
  CHECK(pn == 0.5);

  qtomo_target_t jz = nullptr;
  REQUIRE(qtomo_target_spin_operator("Jz", &jz) == QTOMO_OK);
  const double z[3] = {0.0, 0.0, 1.0};
  CHECK(qtomo_spin_kernel(jz, 1, z, 1, &re, &im) == QTOMO_OK);
  CHECK(re == doctest::Approx(1.5));
  CHECK(qtomo_spin_kernel(jz, 1, z, 0, &re, &im) == QTOMO_ERR_INVALID_ARGUMENT);

  const auto csv = scratch("kernel.csv");
  REQUIRE(qtomo_kernel_export(jz, 2, 0.0, 3.0, 4, csv.c_str()) == QTOMO_OK);
  const auto spin_lines = lines_of(csv);
  CHECK(spin_lines.front() == "theta,two_lambda,re,im");
  CHECK(spin_lines.size() == 1 + 4 * 3);
  CHECK(qtomo_kernel_export(jz, 2, 1.0, 0.0, 4, csv.c_str()) == QTOMO_ERR_INVALID_ARGUMENT);

  qtomo_target_t me = nullptr;
  REQUIRE(qtomo_target_matrix_element(1, 1, &me) == QTOMO_OK);
  REQUIRE(qtomo_kernel_export(me, 0, -2.0, 2.0, 5, csv.c_str()) == QTOMO_OK);
  const auto me_lines = lines_of(csv);
  CHECK(me_lines.front() == "y,re,im");
  CHECK(me_lines.size() == 6);
  CHECK(me_lines[3].rfind("0,", 0) == 0);
  CHECK(qtomo_target_matrix_element(1, -2, &me) == QTOMO_ERR_INVALID_ARGUMENT);

  const double bad[] = {0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  qtomo_target_t m = nullptr;
  CHECK(qtomo_target_spin_matrix(2, bad, &m) == QTOMO_ERR_NOT_HERMITIAN);
  qtomo_target_free(me);
  qtomo_target_free(jz);
  fs::remove(csv);
}
