#include "randers/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>

namespace randers {

RandersSpec spec_from_json(const nlohmann::json& j) {
  RandersSpec s;
  s.family = family_from_string(j.at("family").get<std::string>());
  s.n = j.at("n").get<int>();
  s.b = j.at("b").get<double>();
  s.c = j.at("c").get<double>();
  s.a1 = j.value("a1", 1.0);
  s.a2 = j.value("a2", 1.0);
  s.a = s.family == Family::SpSphere ? j.value("a", s.a1) : j.at("a").get<double>();
  if (j.contains("axis")) {
    const auto& axis = j.at("axis");
    if (!axis.is_array() || axis.size() != 3)
      throw nlohmann::json::type_error::create(302, "\"axis\" must be an array of three numbers", &axis);
    for (int k = 0; k < 3; ++k) s.axis[k] = axis.at(k).get<double>();
  }
  return s;
}

nlohmann::json spec_to_json(const RandersSpec& s) {
  nlohmann::json j;
  j["family"] = to_string(s.family);
  j["n"] = s.n;
  j["a"] = s.family == Family::SpSphere ? s.a1 : s.a;
  j["b"] = s.b;
  j["c"] = s.c;
  j["a1"] = s.a1;
  j["a2"] = s.a2;
  if (s.family == Family::SU2) j["axis"] = {s.axis[0], s.axis[1], s.axis[2]};
  return j;
}

OrbitParams params_from_json(const nlohmann::json& j) {
  OrbitParams p;
  p.l = j.value("l", p.l);
  p.m = j.value("m", p.m);
  p.x1 = j.value("x1", p.x1);
  p.x2 = j.value("x2", p.x2);
  p.L = j.value("L", p.L);
  return p;
}

nlohmann::json params_to_json(const OrbitParams& p) {
  return {{"l", p.l}, {"m", p.m}, {"x1", p.x1}, {"x2", p.x2}, {"L", p.L}};
}

std::string format_double(double v) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string inputs_hash(const std::vector<double>& values) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : values) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string inputs_hash(const CMatrix& m) {
  std::vector<double> values;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      values.push_back(m(r, c).real());
      values.push_back(m(r, c).imag());
    }
  return inputs_hash(values);
}

void write_length_csv(std::ostream& out, const std::vector<std::string>& ids,
                      const std::vector<ConstantLengthReport>& reports) {
  out << "candidate_id,min,max,mean,stddev,verdict\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << (i < ids.size() ? ids[i] : std::to_string(i)) << ',' << format_double(r.min) << ','
        << format_double(r.max) << ',' << format_double(r.mean) << ',' << format_double(r.stddev) << ','
        << to_string(r.verdict) << '\n';
  }
}

void write_checker_csv(std::ostream& out, const std::vector<CheckerRow>& rows) {
  out << "trial_id,inputs_hash,verdict,worst_residual\n";
  for (const auto& r : rows)
    out << r.trial_id << ',' << r.inputs_hash << ',' << (r.verdict ? "pass" : "fail") << ','
        << format_double(r.worst_residual) << '\n';
}

void write_displacement_csv(std::ostream& out, const DisplacementReport& r) {
  out << "sample_id,vertex,displacement,graph,snapped,snap_gap\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    out << i << ',' << s.vertex << ',' << format_double(s.displacement) << ',' << format_double(s.graph) << ','
        << format_double(s.snapped) << ',' << format_double(s.snap_gap) << '\n';
  }
}

}  // namespace randers
