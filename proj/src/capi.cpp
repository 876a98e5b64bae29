#include "qtomo/qtomo.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <string>

#include "qtomo/errors.hpp"
#include "qtomo/io.hpp"
#include "qtomo/observables.hpp"
#include "qtomo/validation.hpp"

struct qtomo_state_s {
  qtomo::StateFile state;
};

struct qtomo_records_s {
  qtomo::RecordSet records;
};

struct qtomo_target_s {
  qtomo::Target target;
};

namespace {

using namespace qtomo;

thread_local std::string g_last_error;

int status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return QTOMO_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotHermitian: return QTOMO_ERR_NOT_HERMITIAN;
    case ErrorCode::NoConvergence: return QTOMO_ERR_NO_CONVERGENCE;
    case ErrorCode::QuadratureFailure: return QTOMO_ERR_QUADRATURE;
    case ErrorCode::InvalidState: return QTOMO_ERR_INVALID_STATE;
    case ErrorCode::RecordMismatch: return QTOMO_ERR_RECORD_MISMATCH;
    case ErrorCode::EmptyStream: return QTOMO_ERR_EMPTY_STREAM;
    case ErrorCode::Io: return QTOMO_ERR_IO;
    case ErrorCode::Format: return QTOMO_ERR_FORMAT;
  }
  return QTOMO_ERR_INTERNAL;
}

int fail(int status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
int guard(const char* func, Fn&& fn) {
  try {
    fn();
    return QTOMO_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), std::string(func) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(QTOMO_ERR_INTERNAL, std::string(func) + ": out of memory");
  } catch (const std::exception& e) {
    return fail(QTOMO_ERR_INTERNAL, std::string(func) + ": " + e.what());
  }
}

#define QTOMO_REQUIRE(p)                                                                   \
  do {                                                                                     \
    if (!(p)) return fail(QTOMO_ERR_NULL_POINTER, std::string(__func__) + ": " #p " is null"); \
  } while (0)

ComplexMatrix matrix_from(std::size_t dim, const double* data) {
  ComplexMatrix m(dim);
  for (std::size_t k = 0; k < dim * dim; ++k) m.data()[k] = cplx(data[2 * k], data[2 * k + 1]);
  return m;
}

int copy_out(const std::string& text, char* buf, std::size_t buf_len, std::size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf) return QTOMO_OK;
  if (buf_len < text.size() + 1) {
    return fail(QTOMO_ERR_BUFFER_TOO_SMALL, "output buffer needs " + std::to_string(text.size() + 1) + " bytes");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return QTOMO_OK;
}

double max_abs_y(const RecordSet& records) {
  double m = 0.0;
  if (const auto* h = std::get_if<std::vector<HomodyneRecord>>(&records)) {
    for (const auto& r : *h) m = std::max(m, std::abs(r.y));
  }
  return m;
}

}  // namespace

extern "C" {

const char* qtomo_status_name(int status) {
  switch (status) {
    case QTOMO_OK: return "ok";
    case QTOMO_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QTOMO_ERR_NOT_HERMITIAN: return "not_hermitian";
    case QTOMO_ERR_NO_CONVERGENCE: return "no_convergence";
    case QTOMO_ERR_QUADRATURE: return "quadrature_failure";
    case QTOMO_ERR_INVALID_STATE: return "invalid_state";
    case QTOMO_ERR_RECORD_MISMATCH: return "record_mismatch";
    case QTOMO_ERR_EMPTY_STREAM: return "empty_stream";
    case QTOMO_ERR_IO: return "io_error";
    case QTOMO_ERR_FORMAT: return "format_error";
    case QTOMO_ERR_NULL_POINTER: return "null_pointer";
    case QTOMO_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    default: return "internal_error";
  }
}

const char* qtomo_last_error(void) { return g_last_error.c_str(); }

// ---- states

int qtomo_state_fock(int n_max, const double* rho, qtomo_state_t* out) {
  QTOMO_REQUIRE(rho);
  QTOMO_REQUIRE(out);
  return guard(__func__, [&] {
    if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
    auto m = matrix_from(static_cast<std::size_t>(n_max) + 1, rho);
    *out = new qtomo_state_s{FockDensityMatrix(n_max, std::move(m))};
  });
}

int qtomo_state_coherent(double alpha_re, double alpha_im, int n_max, qtomo_state_t* out) {
  QTOMO_REQUIRE(out);
  return guard(__func__, [&] {
    *out = new qtomo_state_s{FockDensityMatrix::coherent(cplx(alpha_re, alpha_im), n_max)};
  });
}

int qtomo_state_spin(int two_j, const double* rho, qtomo_state_t* out) {
  QTOMO_REQUIRE(rho);
  QTOMO_REQUIRE(out);
  return guard(__func__, [&] {
    if (two_j < 1) throw Error(ErrorCode::InvalidArgument, "two_j must be >= 1");
    auto m = matrix_from(static_cast<std::size_t>(two_j) + 1, rho);
    *out = new qtomo_state_s{SpinDensityMatrix(two_j, std::move(m))};
  });
}

int qtomo_state_load(const char* path, qtomo_state_t* out) {
  QTOMO_REQUIRE(path);
  QTOMO_REQUIRE(out);
  return guard(__func__, [&] { *out = new qtomo_state_s{read_state(path)}; });
}

int qtomo_state_save(qtomo_state_t state, const char* path) {
  QTOMO_REQUIRE(state);
  QTOMO_REQUIRE(path);
  return guard(__func__, [&] { write_state(path, state->state); });
}

int qtomo_state_kind(qtomo_state_t state, int* kind) {
  QTOMO_REQUIRE(state);
  QTOMO_REQUIRE(kind);
  *kind = std::holds_alternative<FockDensityMatrix>(state->state) ? QTOMO_KIND_HOMODYNE : QTOMO_KIND_SPIN;
  return QTOMO_OK;
}

int qtomo_state_size_label(qtomo_state_t state, int* label) {
  QTOMO_REQUIRE(state);
  QTOMO_REQUIRE(label);
  if (const auto* fock = std::get_if<FockDensityMatrix>(&state->state)) {
    *label = fock->n_max();
  } else {
    *label = std::get<SpinDensityMatrix>(state->state).two_j();
  }
  return QTOMO_OK;
}

void qtomo_state_free(qtomo_state_t state) { delete state; }

// ---- records

int qtomo_simulate(qtomo_state_t state, uint64_t count, uint64_t seed, unsigned workers, qtomo_records_t* out) {
  QTOMO_REQUIRE(state);
  QTOMO_REQUIRE(out);
  return guard(__func__, [&] {
    const unsigned w = workers == 0 ? 1 : workers;
    if (const auto* fock = std::get_if<FockDensityMatrix>(&state->state)) {
      *out = new qtomo_records_s{sample_homodyne(*fock, count, seed, w)};
    } else {
      *out = new qtomo_records_s{sample_spin(std::get<SpinDensityMatrix>(state->state), count, seed, w)};
    }
  });
}

int qtomo_records_load(const char* path, qtomo_records_t* out) {
  QTOMO_REQUIRE(path);
  QTOMO_REQUIRE(out);
  return guard(__func__, [&] { *out = new qtomo_records_s{read_records(std::filesystem::path(path))}; });
}

int qtomo_records_save(qtomo_records_t records, const char* path, int convention) {
  QTOMO_REQUIRE(records);
  QTOMO_REQUIRE(path);
  return guard(__func__, [&] {
    if (convention != QTOMO_CONVENTION_Y && convention != QTOMO_CONVENTION_X) {
      throw Error(ErrorCode::InvalidArgument, "unknown convention");
    }
    write_records(std::filesystem::path(path), records->records,
                  convention == QTOMO_CONVENTION_X ? Convention::X : Convention::Y);
  });
}

int qtomo_records_kind(qtomo_records_t records, int* kind) {
  QTOMO_REQUIRE(records);
  QTOMO_REQUIRE(kind);
  *kind = kind_of(records->records) == RecordKind::Homodyne ? QTOMO_KIND_HOMODYNE : QTOMO_KIND_SPIN;
  return QTOMO_OK;
}

int qtomo_records_count(qtomo_records_t records, size_t* count) {
  QTOMO_REQUIRE(records);
  QTOMO_REQUIRE(count);
  *count = size_of(records->records);
  return QTOMO_OK;
}

int qtomo_records_homodyne_get(qtomo_records_t records, size_t index, double* phi, double* y) {
  QTOMO_REQUIRE(records);
  QTOMO_REQUIRE(phi);
  QTOMO_REQUIRE(y);
  const auto* list = std::get_if<std::vector<HomodyneRecord>>(&records->records);
  if (!list) return fail(QTOMO_ERR_RECORD_MISMATCH, "qtomo_records_homodyne_get: records are spin records");
  if (index >= list->size()) return fail(QTOMO_ERR_INVALID_ARGUMENT, "qtomo_records_homodyne_get: index out of range");
  *phi = (*list)[index].phi;
  *y = (*list)[index].y;
  return QTOMO_OK;
}

int qtomo_records_spin_get(qtomo_records_t records, size_t index, double axis[3], int* two_m) {
  QTOMO_REQUIRE(records);
  QTOMO_REQUIRE(axis);
  QTOMO_REQUIRE(two_m);
  const auto* list = std::get_if<std::vector<SpinRecord>>(&records->records);
  if (!list) return fail(QTOMO_ERR_RECORD_MISMATCH, "qtomo_records_spin_get: records are homodyne records");
  if (index >= list->size()) return fail(QTOMO_ERR_INVALID_ARGUMENT, "qtomo_records_spin_get: index out of range");
  const auto& r = (*list)[index];
  for (int k = 0; k < 3; ++k) axis[k] = r.axis[k];
  *two_m = r.two_m;
  return QTOMO_OK;
}

void qtomo_records_free(qtomo_records_t records) { delete records; }

// ---- targets

int qtomo_target_matrix_element(int n, int l, qtomo_target_t* out) {
  QTOMO_REQUIRE(out);
  if (n < 0 || n + l < 0) {
    return fail(QTOMO_ERR_INVALID_ARGUMENT, "qtomo_target_matrix_element: need n >= 0 and n + l >= 0");
  }
  *out = new qtomo_target_s{MatrixElementTarget{n, l}};
  return QTOMO_OK;
}

int qtomo_target_photon_number(qtomo_target_t* out) {
  QTOMO_REQUIRE(out);
  *out = new qtomo_target_s{PhotonNumberTarget{}};
  return QTOMO_OK;
}

int qtomo_target_spin_operator(const char* name, qtomo_target_t* out) {
  QTOMO_REQUIRE(name);
  QTOMO_REQUIRE(out);
  const std::string s(name);
  if (s != "I" && s != "Jx" && s != "Jy" && s != "Jz") {
    return fail(QTOMO_ERR_INVALID_ARGUMENT, "qtomo_target_spin_operator: expected I, Jx, Jy or Jz");
  }
  *out = new qtomo_target_s{SpinOperatorTarget{s}};
  return QTOMO_OK;
}

int qtomo_target_spin_matrix(size_t dim, const double* matrix, qtomo_target_t* out) {
  QTOMO_REQUIRE(matrix);
  QTOMO_REQUIRE(out);
  return guard(__func__, [&] {
    if (dim < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 2");
    auto m = matrix_from(dim, matrix);
    if (m.max_asymmetry() > kHermitianTolerance * std::max(1.0, m.max_abs())) {
      throw Error(ErrorCode::NotHermitian, "target matrix must be Hermitian");
    }
    *out = new qtomo_target_s{SpinMatrixTarget{std::move(m)}};
  });
}

int qtomo_target_from_json(const char* json, qtomo_target_t* out) {
  QTOMO_REQUIRE(json);
  QTOMO_REQUIRE(out);
  return guard(__func__, [&] { *out = new qtomo_target_s{parse_target(json)}; });
}

int qtomo_target_kind(qtomo_target_t target, int* kind) {
  QTOMO_REQUIRE(target);
  QTOMO_REQUIRE(kind);
  *kind = target_kind(target->target) == RecordKind::Homodyne ? QTOMO_KIND_HOMODYNE : QTOMO_KIND_SPIN;
  return QTOMO_OK;
}

void qtomo_target_free(qtomo_target_t target) { delete target; }

// ---- reconstruction

int qtomo_reconstruct(qtomo_records_t records, qtomo_target_t target, int two_j, unsigned workers,
                      qtomo_estimate_t* out) {
  QTOMO_REQUIRE(records);
  QTOMO_REQUIRE(target);
  QTOMO_REQUIRE(out);
  return guard(__func__, [&] {
    KernelContext ctx;
    if (target_kind(target->target) == RecordKind::Spin) ctx.two_j = two_j;
    // Tabulate over the observed range; records are all inside by construction.
    ctx.y_range = std::max(1.0, max_abs_y(records->records));
    const auto kernel = make_kernel(target->target, ctx);
    const auto est = reconstruct(records->records, kernel, workers == 0 ? 1 : workers);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    *out = qtomo_estimate_t{est.mean.real(), est.mean.imag(), est.stderr_re.value_or(nan),
                            est.stderr_im.value_or(nan), est.count, est.stderr_re ? 1 : 0};
  });
}

int qtomo_estimate_to_json(qtomo_target_t target, const qtomo_estimate_t* estimate, char* buf, size_t buf_len,
                           size_t* needed) {
  QTOMO_REQUIRE(target);
  QTOMO_REQUIRE(estimate);
  std::string text;
  const int status = guard(__func__, [&] {
    FinalEstimate est{cplx(estimate->mean_re, estimate->mean_im), std::nullopt, std::nullopt, estimate->count};
    if (estimate->stderr_defined) {
      est.stderr_re = estimate->stderr_re;
      est.stderr_im = estimate->stderr_im;
    }
    text = estimate_to_json(target_id(target->target), est);
  });
  if (status != QTOMO_OK) return status;
  return copy_out(text, buf, buf_len, needed);
}

// ---- kernels

int qtomo_homodyne_kernel(int n, int l, double phi, double y, double cutoff, double* re, double* im) {
  QTOMO_REQUIRE(re);
  QTOMO_REQUIRE(im);
  return guard(__func__, [&] {
    const cplx v = estimator_matrix_element(n, l, HomodyneRecord{phi, y}, cutoff);
    *re = v.real();
    *im = v.imag();
  });
}

int qtomo_photon_number_kernel(double y, double* value) {
  QTOMO_REQUIRE(value);
  *value = estimator_photon_number(HomodyneRecord{0.0, y});
  return QTOMO_OK;
}

int qtomo_spin_kernel(qtomo_target_t target, int two_j, const double axis[3], int two_lambda, double* re,
                      double* im) {
  QTOMO_REQUIRE(target);
  QTOMO_REQUIRE(axis);
  QTOMO_REQUIRE(re);
  QTOMO_REQUIRE(im);
  return guard(__func__, [&] {
    const auto a = spin_target_matrix(target->target, two_j);
    const cplx v = kernel_spin_closed_complex(a, Vec3{axis[0], axis[1], axis[2]}, two_lambda);
    *re = v.real();
    *im = v.imag();
  });
}

int qtomo_kernel_export(qtomo_target_t target, int two_j, double grid_min, double grid_max, size_t points,
                        const char* csv_path) {
  QTOMO_REQUIRE(target);
  QTOMO_REQUIRE(csv_path);
  return guard(__func__, [&] {
    if (points < 2 || !(grid_max > grid_min)) {
      throw Error(ErrorCode::InvalidArgument, "kernel export needs points >= 2 and grid_max > grid_min");
    }
    std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, std::string("cannot write '") + csv_path + "'");
    auto grid = [&](std::size_t k) {
      return grid_min + (grid_max - grid_min) * static_cast<double>(k) / static_cast<double>(points - 1);
    };
    const Target& t = target->target;
    if (const auto* me = std::get_if<MatrixElementTarget>(&t)) {
      out << "y,re,im\n";
      for (std::size_t k = 0; k < points; ++k) {
        const double y = grid(k);
        const cplx v = estimator_matrix_element(me->n, me->l, HomodyneRecord{0.0, y});
        out << format_double(y) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
      }
    } else if (std::holds_alternative<PhotonNumberTarget>(t)) {
      out << "y,re,im\n";
      for (std::size_t k = 0; k < points; ++k) {
        const double y = grid(k);
        out << format_double(y) << ',' << format_double(estimator_photon_number(HomodyneRecord{0.0, y})) << ",0\n";
      }
    } else {
      const auto a = spin_target_matrix(t, two_j);
      const auto spin = spin_matrices(two_j);
      out << "theta,two_lambda,re,im\n";
      for (std::size_t k = 0; k < points; ++k) {
        const double theta = grid(k);
        const auto values = kernel_spin_all(a, spin, Vec3{std::sin(theta), 0.0, std::cos(theta)});
        for (std::size_t m = 0; m < values.size(); ++m) {
          out << format_double(theta) << ',' << (2 * static_cast<int>(m) - two_j) << ','
              << format_double(values[m].real()) << ',' << format_double(values[m].imag()) << '\n';
        }
      }
    }
    if (!out) throw Error(ErrorCode::Io, std::string("write failure on '") + csv_path + "'");
  });
}

// ---- validation

int qtomo_validate(const char* report_path, char* buf, size_t buf_len, size_t* needed, int* all_passed) {
  QTOMO_REQUIRE(all_passed);
  std::string report;
  const int status = guard(__func__, [&] {
    const auto results = run_validation();
    report = format_report(results);
    *all_passed = 1;
    for (const auto& r : results)
      if (!r.passed) *all_passed = 0;
    if (report_path) {
      std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorCode::Io, std::string("cannot write '") + report_path + "'");
      out << report;
    }
  });
  if (status != QTOMO_OK) return status;
  return copy_out(report, buf, buf_len, needed);
}

}  // extern "C"
