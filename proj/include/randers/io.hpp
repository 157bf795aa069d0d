#pragma once

// JSON spec I/O and the CSV report formats.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "randers/geodesy.hpp"
#include "randers/killing.hpp"

namespace randers {

/// {"family": "u_sphere" | "sp_sphere" | "su2", "n": int, "a", "b", "c", "a1", "a2": numbers}
/// plus an optional "axis": [x, y, z] for su2. Missing a1/a2 default to 1;
/// a is ignored for sp_sphere. Throws nlohmann::json::exception on shape errors.
RandersSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const RandersSpec& s);

/// {"l", "m", "x1", "x2", "L"}; every key is optional and defaults to OrbitParams{}.
OrbitParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const OrbitParams& p);

/// Shortest decimal form that round-trips (17 significant digits at most).
std::string format_double(double v);

/// Stable 64-bit FNV-1a digest of the raw doubles, as 16 hex digits.
std::string inputs_hash(const std::vector<double>& values);
std::string inputs_hash(const CMatrix& m);

/// candidate_id,min,max,mean,stddev,verdict
void write_length_csv(std::ostream& out, const std::vector<std::string>& ids,
                      const std::vector<ConstantLengthReport>& reports);

struct CheckerRow {
  int trial_id = 0;
  std::string inputs_hash;
  bool verdict = false;
  double worst_residual = 0.0;
};

/// trial_id,inputs_hash,verdict,worst_residual
void write_checker_csv(std::ostream& out, const std::vector<CheckerRow>& rows);

/// sample_id,vertex,displacement,graph,snapped,snap_gap
void write_displacement_csv(std::ostream& out, const DisplacementReport& r);

}  // namespace randers
