#include "aschern/derham.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "aschern/error.hpp"
#include "aschern/forms.hpp"
#include "aschern/simplex_quad.hpp"

namespace aschern {
namespace {

using Vec = std::vector<double>;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec v(n);
  for (double& c : v) c = normal(rng);
  return v;
}

void normalize(Vec& v) {
  const double s = std::sqrt(dot(v, v));
  for (double& c : v) c /= s;
}

double det(std::vector<Vec> rows) {
  const std::size_t n = rows.size();
  double d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(rows[r][c]) > std::abs(rows[p][c])) p = r;
    if (rows[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(rows[p], rows[c]);
      d = -d;
    }
    d *= rows[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = rows[r][c] / rows[c][c];
      for (std::size_t j = c; j < n; ++j) rows[r][j] -= f * rows[c][j];
    }
  }
  return d;
}

// Value of the Chern form on a coordinate frame, i.e. without the 1/n! of the
// analytic form, times the orientation sign of (x, frame).
cplx form_on_frame(const Field& field, const Vec& x, const std::vector<Vec>& frame) {
  const int n = static_cast<int>(frame.size());
  std::vector<Vec> rows = {x};
  rows.insert(rows.end(), frame.begin(), frame.end());
  const double orient = det(rows) >= 0.0 ? 1.0 : -1.0;
  const cplx f = field.kind == SampleKind::Unitary ? analytic_form_odd(field, x, frame)
                                                   : analytic_form_even(field, x, frame);
  return orient * factorial(n) * f;
}

void require_derivative(const Field& field) {
  if (!field.derivative) fail(ErrorKind::Capability, "field has no closed-form derivative");
}

}  // namespace

TangentProbe sphere_probe(Vec x, std::vector<Vec> tangents) {
  TangentProbe p;
  p.base = x;
  p.tangents = tangents;
  for (const Vec& v : tangents) {
    p.curves.push_back([x, v](double eps) {
      Vec y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * std::cos(eps) + v[i] * std::sin(eps);
      return y;
    });
  }
  return p;
}

TangentProbe torus_probe(double k1, double k2) {
  TangentProbe p;
  p.base = {std::cos(k1), std::sin(k1), std::cos(k2), std::sin(k2)};
  p.tangents = {{-std::sin(k1), std::cos(k1), 0.0, 0.0}, {0.0, 0.0, -std::sin(k2), std::cos(k2)}};
  p.curves.push_back([k1, k2](double eps) {
    return Vec{std::cos(k1 + eps), std::sin(k1 + eps), std::cos(k2), std::sin(k2)};
  });
  p.curves.push_back([k1, k2](double eps) {
    return Vec{std::cos(k1), std::sin(k1), std::cos(k2 + eps), std::sin(k2 + eps)};
  });
  return p;
}

std::vector<TangentProbe> random_probes(const Asset& asset, int n, int count, std::uint64_t seed) {
  const std::size_t amb = asset.mesh.ambient_dim();
  const int dim = asset.mesh.dim;
  if (n < 1 || n > dim) fail(ErrorKind::InvalidInput, "probe tangent count must be in 1..dim");
  std::mt19937_64 rng(seed);
  std::vector<TangentProbe> out;
  if (static_cast<std::size_t>(dim) + 1 == amb) {
    for (int c = 0; c < count; ++c) {
      Vec x = gaussian_vector(amb, rng);
      normalize(x);
      std::vector<Vec> basis = {x};
      std::vector<Vec> tangents;
      for (int j = 0; j < n; ++j) {
        Vec v = gaussian_vector(amb, rng);
        for (const Vec& b : basis) {
          const double d = dot(v, b);
          for (std::size_t i = 0; i < amb; ++i) v[i] -= d * b[i];
        }
        normalize(v);
        basis.push_back(v);
        tangents.push_back(v);
      }
      out.push_back(sphere_probe(x, tangents));
    }
  } else if (dim == 2 && amb == 4) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int c = 0; c < count; ++c) {
      const double k1 = angle(rng), k2 = angle(rng);
      TangentProbe p = torus_probe(k1, k2);
      p.tangents.resize(n);
      p.curves.resize(n);
      out.push_back(std::move(p));
    }
  } else {
    fail(ErrorKind::Capability, "no tangent probes for this manifold");
  }
  return out;
}

cplx lambda_map(const MatrixCochain& phi, const Field& field, const TangentProbe& probe, double h) {
  const int n = phi.degree;
  if (static_cast<int>(probe.curves.size()) != n)
    fail(ErrorKind::InvalidInput, "probe has the wrong number of curves for the cochain degree");
  if (!(h > 0.0)) fail(ErrorKind::InvalidInput, "lambda step must be positive");
  const CMat base = field.value(probe.base);
  std::vector<cplx> terms;
  for (const auto& sp : permutations(n)) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<CMat> mats = {base};
      double sign = sp.sign;
      for (int j = 0; j < n; ++j) {
        const double s = (mask >> j) & 1 ? -1.0 : 1.0;
        sign *= s;
        mats.push_back(field.value(probe.curves[sp.perm[j]](s * h)));
      }
      try {
        terms.push_back(sign * phi.eval(mats));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Gap && e.kind() != ErrorKind::SpectralGap) throw;
        std::ostringstream msg;
        msg << "lambda step " << h << " too large: " << e.what();
        fail(ErrorKind::Gap, msg.str());
      }
    }
  }
  return pairwise_sum(terms) / (std::pow(2.0 * h, n) * factorial(n));
}

cplx analytic_form_odd(const Field& field, std::span<const double> x, std::span<const Vec> tangents) {
  require_derivative(field);
  const int n = static_cast<int>(tangents.size());
  const CMat uinv = inverse(field.value(x));
  std::vector<CMat> a;
  for (const Vec& v : tangents) a.push_back(uinv * field.derivative(x, v));
  return odd_constant(n) * alternating_trace(nullptr, a) / factorial(n);
}

cplx analytic_form_even(const Field& field, std::span<const double> x, std::span<const Vec> tangents) {
  require_derivative(field);
  const int n = static_cast<int>(tangents.size());
  const CMat e = field.value(x);
  std::vector<CMat> d;
  for (const Vec& v : tangents) d.push_back(field.derivative(x, v));
  return even_constant(n) * alternating_trace(&e, d) / factorial(n);
}

DerhamReport derham_convergence(const MatrixCochain& phi, const Field& field,
                                std::span<const TangentProbe> probes, std::span<const double> steps) {
  DerhamReport r;
  r.steps.assign(steps.begin(), steps.end());
  for (double h : steps) {
    double worst = 0.0;
    for (const auto& p : probes) {
      const cplx exact = field.kind == SampleKind::Unitary
                             ? analytic_form_odd(field, p.base, p.tangents)
                             : analytic_form_even(field, p.base, p.tangents);
      worst = std::max(worst, std::abs(lambda_map(phi, field, p, h) - exact));
    }
    r.errors.push_back(worst);
  }
  r.monotone = true;
  r.min_order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < r.errors.size(); ++i) {
    r.monotone = r.monotone && r.errors[i] < r.errors[i - 1];
    const double order = std::log(r.errors[i - 1] / r.errors[i]) / std::log(r.steps[i - 1] / r.steps[i]);
    r.orders.push_back(order);
    r.min_order = std::min(r.min_order, order);
  }
  if (r.orders.empty()) r.min_order = 0.0;
  double largest = 0.0;
  for (double e : r.errors) largest = std::max(largest, e);
  r.pass = (r.monotone && r.min_order >= 1.0) || largest < 1e-12;
  return r;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = 0.5 * (b - a) * x + 0.5 * (b + a);
    weights[i] = (b - a) / ((1.0 - x * x) * dp * dp);
  }
}

cplx circle_form_integral(const Field& field, int points) {
  std::vector<cplx> terms;
  const double h = 2.0 * std::numbers::pi / points;
  for (int i = 0; i < points; ++i) {
    const double th = i * h;
    const Vec x = {std::cos(th), std::sin(th)};
    terms.push_back(h * form_on_frame(field, x, {{-std::sin(th), std::cos(th)}}));
  }
  return pairwise_sum(terms);
}

cplx sphere2_form_integral(const Field& field, int points) {
  std::vector<double> th, wt;
  gauss_legendre(points, 0.0, std::numbers::pi, th, wt);
  const int nphi = 2 * points;
  const double hphi = 2.0 * std::numbers::pi / nphi;
  std::vector<cplx> terms;
  for (int i = 0; i < points; ++i) {
    const double s = std::sin(th[i]), c = std::cos(th[i]);
    for (int j = 0; j < nphi; ++j) {
      const double ph = j * hphi;
      const Vec x = {s * std::cos(ph), s * std::sin(ph), c};
      const Vec dth = {c * std::cos(ph), c * std::sin(ph), -s};
      const Vec dph = {-s * std::sin(ph), s * std::cos(ph), 0.0};
      terms.push_back(wt[i] * hphi * form_on_frame(field, x, {dth, dph}));
    }
  }
  return pairwise_sum(terms);
}

cplx sphere3_form_integral(const Field& field, int points) {
  std::vector<double> ang, wt;
  gauss_legendre(points, 0.0, std::numbers::pi, ang, wt);
  const int nphi = 2 * points;
  const double hphi = 2.0 * std::numbers::pi / nphi;
  std::vector<cplx> terms;
  for (int a = 0; a < points; ++a) {
    const double sc = std::sin(ang[a]), cc = std::cos(ang[a]);
    for (int b = 0; b < points; ++b) {
      const double st = std::sin(ang[b]), ct = std::cos(ang[b]);
      for (int j = 0; j < nphi; ++j) {
        const double sp = std::sin(j * hphi), cp = std::cos(j * hphi);
        const Vec x = {cc, sc * ct, sc * st * cp, sc * st * sp};
        const Vec dchi = {-sc, cc * ct, cc * st * cp, cc * st * sp};
        const Vec dth = {0.0, -sc * st, sc * ct * cp, sc * ct * sp};
        const Vec dph = {0.0, 0.0, -sc * st * sp, sc * st * cp};
        terms.push_back(wt[a] * wt[b] * hphi * form_on_frame(field, x, {dchi, dth, dph}));
      }
    }
  }
  return pairwise_sum(terms);
}

cplx lattice_chern_number(const std::function<CMat(double, double)>& proj, int m) {
  if (m < 2) fail(ErrorKind::InvalidInput, "lattice Chern number needs m >= 2");
  const double step = 2.0 * std::numbers::pi / m;
  // range basis of each projector, as the trailing columns of the eigenvectors
  std::vector<CMat> basis(static_cast<std::size_t>(m * m));
  std::size_t rank = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const HermitianEigen eig = herm_eig(proj(i * step, j * step));
      std::size_t r = 0;
      for (double v : eig.values) r += v > 0.5;
      rank = r;
      const std::size_t n = eig.values.size();
      CMat b(n);
      for (std::size_t c = 0; c < r; ++c)
        for (std::size_t row = 0; row < n; ++row) b(row, c) = eig.vectors(row, n - r + c);
      basis[i * m + j] = std::move(b);
    }
  const auto link = [&](int i0, int j0, int i1, int j1) {
    const CMat full = adjoint(basis[(i0 % m) * m + j0 % m]) * basis[(i1 % m) * m + j1 % m];
    CMat overlap(rank);
    for (std::size_t r = 0; r < rank; ++r)
      for (std::size_t c = 0; c < rank; ++c) overlap(r, c) = full(r, c);
    const cplx d = determinant(overlap);
    return d / std::abs(d);
  };
  std::vector<cplx> logs;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const cplx plaquette =
          link(i, j, i + 1, j) * link(i + 1, j, i + 1, j + 1) / (link(i, j + 1, i + 1, j + 1) * link(i, j, i, j + 1));
      logs.push_back(std::log(plaquette));
    }
  return even_constant(2) * pairwise_sum(logs);
}

}  // namespace aschern
