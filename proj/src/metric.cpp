#include "randers/metric.hpp"

#include <cmath>
#include <sstream>

namespace randers {

std::string to_string(Family f) {
  switch (f) {
    case Family::USphere: return "u_sphere";
    case Family::SpSphere: return "sp_sphere";
    case Family::SU2: return "su2";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "u_sphere") return Family::USphere;
  if (name == "sp_sphere") return Family::SpSphere;
  if (name == "su2") return Family::SU2;
  throw Error(ErrorCode::InvalidInput, "unknown family '" + name + "'");
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// ---------------------------------------------------------------------------
// TangentVector

TangentVector TangentVector::u_sphere(double q, CVector u) { return {Family::USphere, {q}, std::move(u)}; }

TangentVector TangentVector::sp_sphere(const Vec3& q, const HVector& u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  CVector packed(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    packed(k) = u[k].c1();
    packed(n + k) = u[k].c2();
  }
  return {Family::SpSphere, {q[0], q[1], q[2]}, std::move(packed)};
}

TangentVector TangentVector::su2(const Vec3& coords) { return {Family::SU2, {coords[0], coords[1], coords[2]}, CVector()}; }

TangentVector TangentVector::zero_like(const TangentVector& y) {
  return {y.family, std::vector<double>(y.q.size(), 0.0), CVector::Zero(y.u.size())};
}

HVector TangentVector::u_quaternion() const {
  if (family != Family::SpSphere) throw Error(ErrorCode::InvalidInput, "u_quaternion on a non-symplectic tangent vector");
  const auto n = u.size() / 2;
  HVector out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[k] = Quaternion::from_pair(u(k), u(n + k));
  return out;
}

double TangentVector::eq_norm() const {
  double acc = u.squaredNorm();
  for (double v : q) acc += v * v;
  return std::sqrt(acc);
}

namespace {
void require_same_shape(const TangentVector& a, const TangentVector& b) {
  if (a.family != b.family || a.q.size() != b.q.size() || a.u.size() != b.u.size())
    throw Error(ErrorCode::InvalidInput, "tangent vectors of different shape");
}
}  // namespace

TangentVector TangentVector::operator+(const TangentVector& o) const {
  require_same_shape(*this, o);
  TangentVector r = *this;
  for (std::size_t k = 0; k < q.size(); ++k) r.q[k] += o.q[k];
  r.u += o.u;
  return r;
}

TangentVector TangentVector::operator-(const TangentVector& o) const { return *this + o * -1.0; }

TangentVector TangentVector::operator*(double s) const {
  TangentVector r = *this;
  for (auto& v : r.q) v *= s;
  r.u *= s;
  return r;
}

// ---------------------------------------------------------------------------
// RandersSpec

RandersSpec RandersSpec::u_sphere(int n, double a, double b, double c) {
  RandersSpec s;
  s.family = Family::USphere;
  s.n = n;
  s.a = a;
  s.b = b;
  s.c = c;
  return s;
}

RandersSpec RandersSpec::sp_sphere(int n, double a1, double a2, double b, double c) {
  RandersSpec s;
  s.family = Family::SpSphere;
  s.n = n;
  s.a1 = a1;
  s.a2 = a2;
  s.b = b;
  s.c = c;
  return s;
}

RandersSpec RandersSpec::su2(double a, double b, double c, const Vec3& axis) {
  RandersSpec s;
  s.family = Family::SU2;
  s.n = 1;
  s.a = a;
  s.b = b;
  s.c = c;
  s.axis = axis;
  return s;
}

std::vector<std::string> validate_spec(const RandersSpec& s) {
  std::vector<std::string> out;
  auto fmt = [](const char* rule, double lhs, const char* op, double rhs) {
    std::ostringstream os;
    os.precision(17);
    os << rule << " violated: " << lhs << ' ' << op << ' ' << rhs;
    return os.str();
  };
  const bool finite = std::isfinite(s.a) && std::isfinite(s.b) && std::isfinite(s.c) && std::isfinite(s.a1) &&
                      std::isfinite(s.a2);
  if (!finite) {
    out.emplace_back("finite parameters violated: non-finite value");
    return out;
  }
  if (s.family != Family::SU2 && s.n < 1) out.push_back(fmt("n>=1", s.n, "<", 1));
  if (s.family == Family::SU2 && s.n != 1) out.push_back(fmt("n=1", s.n, "!=", 1));
  if (!(s.b > 0.0)) out.push_back(fmt("b>0", s.b, "<=", 0.0));
  if (s.family == Family::SpSphere) {
    if (!(s.a1 > 0.0)) out.push_back(fmt("a1>0", s.a1, "<=", 0.0));
    if (!(s.a2 > 0.0)) out.push_back(fmt("a2>0", s.a2, "<=", 0.0));
    if (s.a1 > 0.0 && !(std::abs(s.c) < std::sqrt(s.a1))) out.push_back(fmt("|c|<√a1", std::abs(s.c), ">=", std::sqrt(s.a1)));
    if (s.a2 == s.b) out.push_back(fmt("a2≠b", s.a2, "==", s.b));
  } else {
    if (!(s.a > 0.0)) out.push_back(fmt("a>0", s.a, "<=", 0.0));
    if (s.a > 0.0 && !(std::abs(s.c) < std::sqrt(s.a))) out.push_back(fmt("|c|<√a", std::abs(s.c), ">=", std::sqrt(s.a)));
  }
  if (s.family == Family::SU2 && std::abs(norm(s.axis) - 1.0) > 1e-12)
    out.push_back(fmt("|axis|=1", norm(s.axis), "!=", 1.0));
  return out;
}

double randers_norm(const RandersSpec& s, const TangentVector& y) {
  if (const auto v = validate_spec(s); !v.empty()) throw Error(ErrorCode::InvalidInput, "invalid Randers spec: " + v.front());
  if (y.family != s.family) throw Error(ErrorCode::InvalidInput, "tangent vector family does not match the spec");
  const double u2 = y.u.squaredNorm();
  switch (s.family) {
    case Family::USphere: {
      if (y.q.size() != 1 || y.u.size() != s.n) throw Error(ErrorCode::InvalidInput, "tangent vector shape mismatch");
      const double q = y.q[0];
      return std::sqrt(s.a * q * q + s.b * u2) + s.c * q;
    }
    case Family::SpSphere: {
      if (y.q.size() != 3 || y.u.size() != 2 * s.n) throw Error(ErrorCode::InvalidInput, "tangent vector shape mismatch");
      const double l1 = y.q[0], l2 = y.q[1], l3 = y.q[2];
      return std::sqrt(s.a1 * l1 * l1 + s.a2 * (l2 * l2 + l3 * l3) + s.b * u2) + s.c * l1;
    }
    case Family::SU2: {
      if (y.q.size() != 3 || y.u.size() != 0) throw Error(ErrorCode::InvalidInput, "tangent vector shape mismatch");
      const Vec3 v{y.q[0], y.q[1], y.q[2]};
      const double along = dot(v, s.axis);
      const double perp2 = std::max(0.0, dot(v, v) - along * along);
      return std::sqrt(s.a * along * along + s.b * perp2) + s.c * along;
    }
  }
  return 0.0;
}

double indicatrix_residual(const RandersSpec& s, const TangentVector& y) { return randers_norm(s, y) - 1.0; }

}  // namespace randers
