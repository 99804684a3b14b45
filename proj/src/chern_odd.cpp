#include "aschern/chern_odd.hpp"

#include <numbers>
#include <sstream>

#include "aschern/error.hpp"
#include "aschern/forms.hpp"

namespace aschern {

OddPath::OddPath(CMat base, std::vector<CMat> deltas)
    : base_(std::move(base)), deltas_(std::move(deltas)) {}

CMat OddPath::at(std::span<const double> t) const {
  CMat u = base_;
  for (std::size_t j = 0; j < deltas_.size(); ++j) u.add_scaled(t[j + 1], deltas_[j]);
  return u;
}

OddPath odd_path(std::span<const CMat> mats, double rho) {
  if (mats.empty()) fail(ErrorKind::InvalidInput, "odd_path: empty tuple");
  require_gap(mats, rho, "odd_path");
  std::vector<CMat> deltas;
  deltas.reserve(mats.size() - 1);
  for (std::size_t j = 1; j < mats.size(); ++j) deltas.push_back(mats[j] - mats[0]);
  return OddPath(mats[0], std::move(deltas));
}

OddPath odd_path(const UnitarySample& sample, std::span<const PointId> tuple) {
  const auto mats = sample.data().gather(tuple);
  return odd_path(mats, sample.rho());
}

namespace {

CMat checked_inverse(const CMat& u) {
  try {
    return inverse(u);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularMatrix) throw;
    fail(ErrorKind::SingularMatrix,
         std::string("interpolated unitary is numerically singular; the gap bound is too loose (") +
             e.what() + ")");
  }
}

}  // namespace

cplx odd_integrand(const OddPath& path, std::span<const double> t) {
  const CMat uinv = checked_inverse(path.at(t));
  std::vector<CMat> a;
  a.reserve(path.deltas().size());
  for (const CMat& d : path.deltas()) a.push_back(uinv * d);
  return alternating_trace(nullptr, a);
}

cplx odd_integrand_series(const OddPath& path, std::span<const double> t, int K) {
  const CMat u0inv = inverse(path.base());
  CMat delta(path.base().dim());
  for (std::size_t j = 0; j < path.deltas().size(); ++j) delta.add_scaled(t[j + 1], path.deltas()[j]);
  const CMat x = u0inv * delta;
  // sum_{k<=K} (-x)^k
  CMat series = CMat::identity(delta.dim());
  CMat power = CMat::identity(delta.dim());
  for (int k = 1; k <= K; ++k) {
    power = power * x;
    series.add_scaled((k % 2 == 0) ? 1.0 : -1.0, power);
  }
  const CMat left = series * u0inv;
  std::vector<CMat> a;
  for (const CMat& d : path.deltas()) a.push_back(left * d);
  return alternating_trace(nullptr, a);
}

QuadResult ch_odd(std::span<const CMat> mats, double rho, const QuadSpec& spec) {
  const int n = static_cast<int>(mats.size()) - 1;
  if (n < 1 || n % 2 == 0) {
    std::ostringstream msg;
    msg << "odd Chern cochain needs odd degree, got " << n;
    fail(ErrorKind::Domain, msg.str());
  }
  const OddPath path = odd_path(mats, rho);
  QuadResult r = integrate_simplex([&](std::span<const double> t) { return odd_integrand(path, t); },
                                   n, spec);
  const cplx c = odd_constant(n);
  r.value *= c;
  if (r.error_estimate) *r.error_estimate *= std::abs(c);
  return r;
}

cplx ch_odd(const UnitarySample& sample, std::span<const PointId> tuple, const QuadSpec& spec) {
  const auto mats = sample.data().gather(tuple);
  return ch_odd(mats, sample.rho(), spec).value;
}

cplx ch1_closed(const CMat& u0, const CMat& u1, double rho) {
  const CMat pair[] = {u0, u1};
  require_gap(pair, rho, "ch1_closed");
  const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
  return principal_log_det(adjoint(u0) * u1) / two_pi_i;
}

MatrixCochain ch_odd_cochain(int n, double rho, const QuadSpec& spec) {
  if (n < 1 || n % 2 == 0) fail(ErrorKind::Domain, "odd Chern cochain needs odd degree");
  spec.validate();
  return {n, rho, [rho, spec](std::span<const CMat> mats) { return ch_odd(mats, rho, spec).value; }};
}

MatrixCochain ch1_closed_cochain(double rho) {
  return {1, rho, [rho](std::span<const CMat> mats) { return ch1_closed(mats[0], mats[1], rho); }};
}

std::vector<cplx> odd_transgression(std::span<const std::vector<CMat>> family, double rho,
                                    const QuadSpec& spec) {
  if (family.size() < 3) fail(ErrorKind::InvalidInput, "transgression needs a tau grid of >= 3 points");
  const int n = static_cast<int>(family.front().size());
  if (n < 1 || n % 2 == 0) fail(ErrorKind::Domain, "odd transgression needs odd n");
  const double h = 1.0 / static_cast<double>(family.size() - 1);
  const cplx scale = odd_constant(n) * static_cast<double>(n);

  std::vector<cplx> out(family.size());
  for (std::size_t g = 0; g < family.size(); ++g) {
    OddPath path = [&] {
      try {
        return odd_path(family[g], rho);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Gap) throw;
        std::ostringstream msg;
        msg << e.what() << " at tau = " << g * h;
        throw Error(ErrorKind::Gap, msg.str());
      }
    }();
    std::vector<CMat> vertex_rate;
    for (int i = 0; i < n; ++i) {
      std::vector<CMat> track;
      track.reserve(family.size());
      for (const auto& mats : family) track.push_back(mats[i]);
      vertex_rate.push_back(grid_derivative(track, g, h));
    }
    const auto integrand = [&](std::span<const double> t) {
      const CMat uinv = checked_inverse(path.at(t));
      CMat rate(uinv.dim());
      for (int i = 0; i < n; ++i) rate.add_scaled(t[i], vertex_rate[i]);
      const CMat pre = uinv * rate;
      std::vector<CMat> a;
      for (const CMat& d : path.deltas()) a.push_back(uinv * d);
      return alternating_trace(&pre, a);
    };
    out[g] = scale * integrate_simplex(integrand, n - 1, spec).value;
  }
  return out;
}

std::vector<cplx> odd_transgression(std::span<const UnitarySample> family,
                                    std::span<const PointId> tuple, const QuadSpec& spec) {
  std::vector<std::vector<CMat>> mats;
  mats.reserve(family.size());
  for (const auto& s : family) mats.push_back(s.data().gather(tuple));
  const double rho = family.empty() ? 0.0 : family.front().rho();
  return odd_transgression(mats, rho, spec);
}

}  // namespace aschern
