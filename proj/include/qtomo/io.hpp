#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include "qtomo/estimate.hpp"
#include "qtomo/homodyne.hpp"
#include "qtomo/observables.hpp"
#include "qtomo/spin.hpp"

namespace qtomo {

/// Homodyne outcome convention on disk: Y stores y, X stores x = y / sqrt 2.
enum class Convention { Y, X };

/// %.17g: round-trips every double.
std::string format_double(double value);

using StateFile = std::variant<FockDensityMatrix, SpinDensityMatrix>;

/// {"n_max": N, "rho": [[[re, im], ...], ...]} or {"two_j": N, "rho": ...}.
StateFile parse_state(std::string_view json_text);
StateFile read_state(const std::filesystem::path& path);
std::string state_to_json(const StateFile& state);
void write_state(const std::filesystem::path& path, const StateFile& state);

/// One JSON object per line.
void write_records(std::ostream& out, const RecordSet& records, Convention convention = Convention::Y);
void write_records(const std::filesystem::path& path, const RecordSet& records,
                   Convention convention = Convention::Y);
/// Detects the record kind from the first line; homodyne lines may carry
/// either "y" or "x".
RecordSet read_records(std::istream& in);
RecordSet read_records(const std::filesystem::path& path);

/// {"observable": id, "mean": [re, im], "stderr": [re, im] | null, "count": N}
std::string estimate_to_json(const std::string& observable, const FinalEstimate& estimate);

/// Target object as used in run configs:
///   {"kind": "matrix-element", "n": 0, "l": 0} | {"kind": "photon-number"} |
///   {"kind": "spin-operator", "name": "Jz"} | {"kind": "matrix", "matrix": [[[re, im], ...]]}
Target parse_target(std::string_view json_text);

}  // namespace qtomo
