#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "aschern/error.hpp"
#include "aschern/geometry.hpp"
#include "aschern/simplex_quad.hpp"

namespace aschern {
namespace {

using Vec = std::vector<double>;

CMat pauli(double a, double b, double c) {
  return CMat::from_rows({{cplx(c, 0.0), cplx(a, -b)}, {cplx(a, b), cplx(-c, 0.0)}});
}

double det3(const Vec& a, const Vec& b, const Vec& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

double det4(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  const std::array<const Vec*, 4> rows = {&a, &b, &c, &d};
  double m[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = (*rows[i])[j];
  double det = 1.0;
  for (int c0 = 0; c0 < 4; ++c0) {
    int p = c0;
    for (int r = c0 + 1; r < 4; ++r)
      if (std::abs(m[r][c0]) > std::abs(m[p][c0])) p = r;
    if (m[p][c0] == 0.0) return 0.0;
    if (p != c0) {
      for (int j = 0; j < 4; ++j) std::swap(m[p][j], m[c0][j]);
      det = -det;
    }
    det *= m[c0][c0];
    for (int r = c0 + 1; r < 4; ++r) {
      const double f = m[r][c0] / m[c0][c0];
      for (int j = c0; j < 4; ++j) m[r][j] -= f * m[c0][j];
    }
  }
  return det;
}

Vec normalized(Vec v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  s = std::sqrt(s);
  for (double& c : v) c /= s;
  return v;
}

double chord(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Gap check shared by all generators; rho must sit strictly above the worst
// top-simplex gap.
void require_admissible(const Asset& asset, const char* name) {
  const double gap = max_simplex_gap(asset.mesh, asset.sample);
  if (!(gap < asset.sample.rho())) {
    std::ostringstream msg;
    msg << name << ": largest simplex gap " << gap << " is not below rho = " << asset.sample.rho()
        << "; refine the mesh";
    fail(ErrorKind::Admissibility, msg.str());
  }
}

SampledMap sample_field(const Mesh& mesh, const Field& field, double rho) {
  SampledMap s(field.kind, field.N, rho);
  for (const auto& [id, x] : mesh.vertices) s.insert(id, field.value(x));
  return s;
}

Mesh icosphere(int level) {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec> pts = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
                          {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
  for (auto& v : pts) v = normalized(v);
  const double edge = chord(pts[0], pts[1]);
  std::vector<std::array<int, 3>> faces;
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b)
      for (int c = b + 1; c < 12; ++c) {
        if (std::abs(chord(pts[a], pts[b]) - edge) > 1e-9) continue;
        if (std::abs(chord(pts[b], pts[c]) - edge) > 1e-9) continue;
        if (std::abs(chord(pts[a], pts[c]) - edge) > 1e-9) continue;
        faces.push_back({a, b, c});
      }
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    const auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      const auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      Vec m(3);
      for (int i = 0; i < 3; ++i) m[i] = pts[a][i] + pts[b][i];
      pts.push_back(normalized(m));
      const int id = static_cast<int>(pts.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& f : faces) {
      const int ab = midpoint(f[0], f[1]);
      const int bc = midpoint(f[1], f[2]);
      const int ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  Mesh mesh;
  mesh.dim = 2;
  for (std::size_t i = 0; i < pts.size(); ++i) mesh.vertices[static_cast<PointId>(i)] = pts[i];
  for (auto f : faces) {
    if (det3(pts[f[0]], pts[f[1]], pts[f[2]]) < 0.0) std::swap(f[1], f[2]);
    mesh.simplices.push_back({f[0], f[1], f[2]});
  }
  return mesh;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

cplx ipow(cplx z, int e) {
  cplx r = 1.0;
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

// d/dv of z^e given dz, with e >= 0.
cplx dpow(cplx z, cplx dz, int e) { return e == 0 ? cplx(0.0) : static_cast<double>(e) * ipow(z, e - 1) * dz; }

// Entry (a, b), a >= b, of the symmetric-power projector: sqrt(C(k,a) C(k,b))
// A^(k-a) B^b Z^(a-b) with A = (1+z)/2, B = (1-z)/2, Z = (x+iy)/2.
CMat monopole_matrix(int k, std::span<const double> x, std::span<const double> v, bool derivative) {
  const cplx A = (1.0 + x[2]) / 2.0, B = (1.0 - x[2]) / 2.0, Z = cplx(x[0], x[1]) / 2.0;
  const cplx dA = derivative ? v[2] / 2.0 : 0.0, dB = -dA;
  const cplx dZ = derivative ? cplx(v[0], v[1]) / 2.0 : 0.0;
  CMat e(static_cast<std::size_t>(k + 1));
  for (int a = 0; a <= k; ++a) {
    for (int b = 0; b <= a; ++b) {
      const double c = std::sqrt(binomial(k, a) * binomial(k, b));
      const cplx pa = ipow(A, k - a), pb = ipow(B, b), pz = ipow(Z, a - b);
      cplx val;
      if (derivative) {
        val = dpow(A, dA, k - a) * pb * pz + pa * dpow(B, dB, b) * pz + pa * pb * dpow(Z, dZ, a - b);
      } else {
        val = pa * pb * pz;
      }
      e(a, b) = c * val;
      e(b, a) = std::conj(c * val);
    }
  }
  return e;
}

CMat su2_matrix(std::span<const double> x) {
  // x_0 I + i (x_1 s_1 + x_2 s_2 + x_3 s_3)
  return CMat::from_rows({{cplx(x[0], x[3]), cplx(x[2], x[1])}, {cplx(-x[2], x[1]), cplx(x[0], -x[3])}});
}

std::array<double, 3> two_band_h(double mass, double k1, double k2) {
  return {std::sin(k1), std::sin(k2), mass + std::cos(k1) + std::cos(k2)};
}

}  // namespace

CMat two_band_projector(double mass, double k1, double k2) {
  const auto h = two_band_h(mass, k1, k2);
  const double r = std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
  if (!(r > 1e-12)) fail(ErrorKind::Model, "two-band model is gapless at the requested momentum");
  CMat e = CMat::identity(2);
  e.add_scaled(-1.0 / r, pauli(h[0], h[1], h[2]));
  e *= 0.5;
  return e;
}

Asset gen_circle_winding(int k, int m, double wobble) {
  const double speed = std::abs(k) + std::abs(wobble);
  if (m < 3 || m <= 6.0 * speed) {
    std::ostringstream msg;
    msg << "circle: need m > 6(|k| + |wobble|) (and m >= 3), got k = " << k << ", wobble = " << wobble
        << ", m = " << m;
    fail(ErrorKind::Admissibility, msg.str());
  }
  Asset a;
  a.name = "circle";
  a.mesh.dim = 1;
  for (int i = 0; i < m; ++i) {
    const double th = 2.0 * std::numbers::pi * i / m;
    a.mesh.vertices[i] = {std::cos(th), std::sin(th)};
    a.mesh.simplices.push_back({i, (i + 1) % m});
  }
  // u = z^k exp(i wobble y) with z = x + iy (conjugated for k < 0)
  const double s = k >= 0 ? 1.0 : -1.0;
  a.field.kind = SampleKind::Unitary;
  a.field.N = 1;
  a.field.value = [k, s, wobble](std::span<const double> x) {
    return CMat::diag({ipow(cplx(x[0], s * x[1]), std::abs(k)) * std::polar(1.0, wobble * x[1])});
  };
  a.field.derivative = [k, s, wobble](std::span<const double> x, std::span<const double> v) {
    const cplx z(x[0], s * x[1]), dz(v[0], s * v[1]);
    const cplx w = std::polar(1.0, wobble * x[1]);
    return CMat::diag({dpow(z, dz, std::abs(k)) * w + ipow(z, std::abs(k)) * w * cplx(0.0, wobble * v[1])});
  };
  const double gap = 2.0 * std::sin(std::min(std::numbers::pi * speed / m, std::numbers::pi / 2));
  a.sample = sample_field(a.mesh, a.field, std::max(default_rho(SampleKind::Unitary), (1.0 + gap) / 2.0));
  require_admissible(a, "circle");
  return a;
}

Asset gen_bott_sphere(int level) {
  if (level < 0) fail(ErrorKind::InvalidInput, "bott: level must be >= 0");
  Asset a;
  a.name = "bott";
  a.mesh = icosphere(level);
  a.field.kind = SampleKind::Projector;
  a.field.N = 2;
  a.field.value = [](std::span<const double> x) {
    CMat e = CMat::identity(2) + pauli(x[0], x[1], x[2]);
    e *= 0.5;
    return e;
  };
  a.field.derivative = [](std::span<const double>, std::span<const double> v) {
    CMat d = pauli(v[0], v[1], v[2]);
    d *= 0.5;
    return d;
  };
  a.sample = sample_field(a.mesh, a.field, default_rho(SampleKind::Projector));
  require_admissible(a, "bott");
  return a;
}

Asset gen_monopole(int k, int level) {
  if (k < 1) fail(ErrorKind::InvalidInput, "monopole: k must be >= 1");
  if (level < 0) fail(ErrorKind::InvalidInput, "monopole: level must be >= 0");
  Asset a;
  a.name = "monopole";
  a.mesh = icosphere(level);
  a.field.kind = SampleKind::Projector;
  a.field.N = static_cast<std::size_t>(k + 1);
  a.field.value = [k](std::span<const double> x) { return monopole_matrix(k, x, x, false); };
  a.field.derivative = [k](std::span<const double> x, std::span<const double> v) {
    return monopole_matrix(k, x, v, true);
  };
  a.sample = sample_field(a.mesh, a.field, default_rho(SampleKind::Projector));
  require_admissible(a, "monopole");
  return a;
}

Asset gen_su2_sphere3(int level) {
  if (level < 0 || level > 4) fail(ErrorKind::InvalidInput, "su2: level must be in 0..4");
  const int k = 1 << level;
  // Vertices of the 16-cell: +e_i has id 2i, -e_i has id 2i + 1.
  const auto cell_vertex = [](int id) {
    std::array<int, 4> v{};
    v[id / 2] = (id % 2 == 0) ? 1 : -1;
    return v;
  };
  std::map<std::array<int, 4>, PointId> ids;
  Asset a;
  a.name = "su2";
  a.mesh.dim = 3;
  const auto vertex_id = [&](const std::array<int, 4>& key) {
    const auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const PointId id = static_cast<PointId>(ids.size());
    ids.emplace(key, id);
    a.mesh.vertices[id] = normalized(Vec(key.begin(), key.end()));
    return id;
  };
  const auto lattice = edgewise_lattice(3, k);
  for (int signs = 0; signs < 16; ++signs) {
    std::array<int, 4> cell;
    for (int i = 0; i < 4; ++i) cell[i] = 2 * i + ((signs >> i) & 1);
    // cell is already sorted by id, which fixes the subdivision on shared faces
    for (const auto& sub : lattice) {
      Tuple tet;
      for (const auto& bary : sub) {
        std::array<int, 4> key{};
        for (int j = 0; j < 4; ++j) {
          const auto cv = cell_vertex(cell[j]);
          for (int c = 0; c < 4; ++c) key[c] += bary[j] * cv[c];
        }
        tet.push_back(vertex_id(key));
      }
      const auto& vx = a.mesh.vertices;
      if (det4(vx.at(tet[0]), vx.at(tet[1]), vx.at(tet[2]), vx.at(tet[3])) < 0.0) std::swap(tet[2], tet[3]);
      a.mesh.simplices.push_back(std::move(tet));
    }
  }
  a.field.kind = SampleKind::Unitary;
  a.field.N = 2;
  a.field.value = [](std::span<const double> x) { return su2_matrix(x); };
  a.field.derivative = [](std::span<const double>, std::span<const double> v) { return su2_matrix(v); };
  a.sample = sample_field(a.mesh, a.field, default_rho(SampleKind::Unitary));
  require_admissible(a, "su2");
  return a;
}

Asset gen_two_band_torus(double mass, int m) {
  if (m < 3) fail(ErrorKind::InvalidInput, "torus: grid must be at least 3 x 3");
  const double step = 2.0 * std::numbers::pi / m;
  double hmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto h = two_band_h(mass, i * step, j * step);
      hmin = std::min(hmin, std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]));
    }
  if (hmin < 1e-6) {
    std::ostringstream msg;
    msg << "torus: band gap closes on the grid (min |h| = " << hmin << ") at mass " << mass;
    fail(ErrorKind::Model, msg.str());
  }
  Asset a;
  a.name = "torus";
  a.mesh.dim = 2;
  const auto id = [m](int i, int j) { return static_cast<PointId>(((i % m) * m) + (j % m)); };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double k1 = i * step, k2 = j * step;
      a.mesh.vertices[id(i, j)] = {std::cos(k1), std::sin(k1), std::cos(k2), std::sin(k2)};
      a.mesh.simplices.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      a.mesh.simplices.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  a.field.kind = SampleKind::Projector;
  a.field.N = 2;
  a.field.value = [mass](std::span<const double> x) {
    return two_band_projector(mass, std::atan2(x[1], x[0]), std::atan2(x[3], x[2]));
  };
  a.field.derivative = [mass](std::span<const double> x, std::span<const double> v) {
    const double k1 = std::atan2(x[1], x[0]), k2 = std::atan2(x[3], x[2]);
    const double dk1 = (x[0] * v[1] - x[1] * v[0]) / (x[0] * x[0] + x[1] * x[1]);
    const double dk2 = (x[2] * v[3] - x[3] * v[2]) / (x[2] * x[2] + x[3] * x[3]);
    const auto h = two_band_h(mass, k1, k2);
    const std::array<double, 3> dh = {std::cos(k1) * dk1, std::cos(k2) * dk2,
                                      -std::sin(k1) * dk1 - std::sin(k2) * dk2};
    const double r = std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
    const double hdh = (h[0] * dh[0] + h[1] * dh[1] + h[2] * dh[2]) / (r * r);
    std::array<double, 3> dhat;
    for (int i = 0; i < 3; ++i) dhat[i] = (dh[i] - h[i] * hdh) / r;
    CMat d = pauli(dhat[0], dhat[1], dhat[2]);
    d *= -0.5;
    return d;
  };
  a.sample = sample_field(a.mesh, a.field, default_rho(SampleKind::Projector));
  require_admissible(a, "torus");
  return a;
}

}  // namespace aschern
