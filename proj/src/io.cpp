#include "qtomo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "qtomo/errors.hpp"

namespace qtomo {

using nlohmann::json;

std::string format_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::Format, "cannot serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

[[noreturn]] void format_error(const std::string& what) { throw Error(ErrorCode::Format, what); }

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    format_error(std::string(what) + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  return out;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) format_error(std::string(what) + " must be a number");
  return j.get<double>();
}

ComplexMatrix parse_matrix(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) format_error(std::string(what) + " must be a non-empty array of rows");
  ComplexMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != rows.size()) format_error(std::string(what) + " must be square");
    for (std::size_t k = 0; k < row.size(); ++k) {
      const json& z = row[k];
      if (!z.is_array() || z.size() != 2) format_error(std::string(what) + " entries must be [re, im] pairs");
      m(i, k) = cplx(number(z[0], what), number(z[1], what));
    }
  }
  return m;
}

std::string matrix_to_json(const ComplexMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t k = 0; k < m.dim(); ++k) {
      if (k) s += ", ";
      s += "[" + format_double(m(i, k).real()) + ", " + format_double(m(i, k).imag()) + "]";
    }
    s += "]";
  }
  return s + "]";
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) format_error(std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace

StateFile parse_state(std::string_view json_text) {
  const json doc = parse_json(json_text, "state file");
  if (!doc.is_object() || !doc.contains("rho")) format_error("state file: expected an object with \"rho\"");
  ComplexMatrix rho = parse_matrix(doc["rho"], "state file rho");
  if (doc.contains("n_max")) {
    const int n_max = integer(doc["n_max"], "n_max");
    if (doc.contains("tail_tolerance")) {
      return FockDensityMatrix(n_max, std::move(rho), number(doc["tail_tolerance"], "tail_tolerance"));
    }
    return FockDensityMatrix(n_max, std::move(rho));
  }
  if (doc.contains("two_j")) return SpinDensityMatrix(integer(doc["two_j"], "two_j"), std::move(rho));
  format_error("state file: expected \"n_max\" (Fock) or \"two_j\" (spin)");
}

StateFile read_state(const std::filesystem::path& path) { return parse_state(read_file(path)); }

std::string state_to_json(const StateFile& state) {
  if (const auto* fock = std::get_if<FockDensityMatrix>(&state)) {
    return "{\"n_max\": " + std::to_string(fock->n_max()) + ", \"rho\": " + matrix_to_json(fock->matrix()) + "}\n";
  }
  const auto& spin = std::get<SpinDensityMatrix>(state);
  return "{\"two_j\": " + std::to_string(spin.two_j()) + ", \"rho\": " + matrix_to_json(spin.matrix()) + "}\n";
}

void write_state(const std::filesystem::path& path, const StateFile& state) {
  auto out = open_output(path);
  out << state_to_json(state);
}

void write_records(std::ostream& out, const RecordSet& records, Convention convention) {
  if (const auto* homodyne = std::get_if<std::vector<HomodyneRecord>>(&records)) {
    const bool x = convention == Convention::X;
    for (const auto& r : *homodyne) {
      out << "{\"phi\": " << format_double(r.phi) << (x ? ", \"x\": " : ", \"y\": ")
          << format_double(x ? r.y / std::numbers::sqrt2 : r.y) << "}\n";
    }
  } else {
    for (const auto& r : std::get<std::vector<SpinRecord>>(records)) {
      out << "{\"axis\": [" << format_double(r.axis[0]) << ", " << format_double(r.axis[1]) << ", "
          << format_double(r.axis[2]) << "], \"two_m\": " << r.two_m << "}\n";
    }
  }
  if (!out) throw Error(ErrorCode::Io, "write_records: stream failure");
}

void write_records(const std::filesystem::path& path, const RecordSet& records, Convention convention) {
  auto out = open_output(path);
  write_records(out, records, convention);
}

RecordSet read_records(std::istream& in) {
  std::optional<RecordKind> kind;
  std::vector<HomodyneRecord> homodyne;
  std::vector<SpinRecord> spin;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "records line " + std::to_string(line_no);
    const json j = parse_json(line, where.c_str());
    if (!j.is_object()) format_error(where + ": expected an object");
    const RecordKind this_kind = j.contains("axis") ? RecordKind::Spin : RecordKind::Homodyne;
    if (kind && *kind != this_kind) format_error(where + ": mixed homodyne and spin records");
    kind = this_kind;
    if (this_kind == RecordKind::Homodyne) {
      if (!j.contains("phi")) format_error(where + ": missing \"phi\"");
      HomodyneRecord r{number(j["phi"], "phi"), 0.0};
      if (j.contains("y")) {
        r.y = number(j["y"], "y");
      } else if (j.contains("x")) {
        r.y = std::numbers::sqrt2 * number(j["x"], "x");
      } else {
        format_error(where + ": missing \"y\" or \"x\"");
      }
      if (!(r.phi >= 0.0 && r.phi < 2.0 * std::numbers::pi)) format_error(where + ": phi must lie in [0, 2 pi)");
      homodyne.push_back(r);
    } else {
      const json& a = j["axis"];
      if (!a.is_array() || a.size() != 3) format_error(where + ": axis must be a 3-vector");
      if (!j.contains("two_m")) format_error(where + ": missing \"two_m\"");
      spin.push_back(SpinRecord{{number(a[0], "axis"), number(a[1], "axis"), number(a[2], "axis")},
                                integer(j["two_m"], "two_m")});
    }
  }
  if (kind == RecordKind::Spin) return spin;
  return homodyne;
}

RecordSet read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return read_records(in);
}

std::string estimate_to_json(const std::string& observable, const FinalEstimate& estimate) {
  std::string s = "{\"observable\": " + json(observable).dump() + ", \"mean\": [" +
                  format_double(estimate.mean.real()) + ", " + format_double(estimate.mean.imag()) +
                  "], \"stderr\": ";
  if (estimate.stderr_re && estimate.stderr_im) {
    s += "[" + format_double(*estimate.stderr_re) + ", " + format_double(*estimate.stderr_im) + "]";
  } else {
    s += "null";
  }
  return s + ", \"count\": " + std::to_string(estimate.count) + "}\n";
}

Target parse_target(std::string_view json_text) {
  const json j = parse_json(json_text, "target");
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) format_error("target: expected {\"kind\": ...}");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "matrix-element") {
    if (!j.contains("n") || !j.contains("l")) format_error("target matrix-element needs \"n\" and \"l\"");
    return MatrixElementTarget{integer(j["n"], "n"), integer(j["l"], "l")};
  }
  if (kind == "photon-number") return PhotonNumberTarget{};
  if (kind == "spin-operator") {
    if (!j.contains("name") || !j["name"].is_string()) format_error("target spin-operator needs \"name\"");
    return SpinOperatorTarget{j["name"].get<std::string>()};
  }
  if (kind == "matrix") {
    if (!j.contains("matrix")) format_error("target matrix needs \"matrix\"");
    return SpinMatrixTarget{parse_matrix(j["matrix"], "target matrix")};
  }
  format_error("target: unknown kind '" + kind + "'");
}

}  // namespace qtomo
