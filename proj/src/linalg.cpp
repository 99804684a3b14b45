#include "aschern/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "aschern/error.hpp"
#include "aschern/kernels.hpp"

namespace aschern {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::ContractViolation: return "contract violation";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::SingularMatrix: return "singular matrix";
    case ErrorKind::Capability: return "unsupported";
    case ErrorKind::Gap: return "gap condition violated";
    case ErrorKind::SpectralGap: return "spectral gap violated";
    case ErrorKind::IntegrandFailure: return "integrand failure";
    case ErrorKind::Admissibility: return "inadmissible asset";
    case ErrorKind::Model: return "model error";
  }
  return "error";
}

CMat CMat::identity(std::size_t n) {
  CMat m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::diag(std::span<const cplx> d) {
  CMat m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMat CMat::diag(std::initializer_list<cplx> d) {
  return diag(std::span<const cplx>(d.begin(), d.size()));
}

CMat CMat::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  CMat m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) fail(ErrorKind::InvalidInput, "matrix rows must form a square");
    std::size_t j = 0;
    for (const cplx& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool CMat::all_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMat& CMat::operator+=(const CMat& b) {
  kernels::active().zaxpy_real(a_.size(), 1.0, b.raw(), raw());
  return *this;
}

CMat& CMat::operator-=(const CMat& b) {
  kernels::active().zaxpy_real(a_.size(), -1.0, b.raw(), raw());
  return *this;
}

CMat& CMat::operator*=(cplx s) {
  for (auto& z : a_) z *= s;
  return *this;
}

CMat& CMat::add_scaled(double s, const CMat& b) {
  kernels::active().zaxpy_real(a_.size(), s, b.raw(), raw());
  return *this;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }

CMat operator*(const CMat& a, const CMat& b) {
  CMat c(a.dim());
  kernels::active().zgemm(a.dim(), a.raw(), b.raw(), c.raw());
  return c;
}

CMat operator*(cplx s, CMat a) { return a *= s; }

CMat adjoint(const CMat& a) {
  const std::size_t n = a.dim();
  CMat r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

cplx trace(const CMat& a) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

cplx trace_product(const CMat& a, const CMat& b) {
  double out[2];
  kernels::active().ztrace_prod(a.dim(), a.raw(), b.raw(), out);
  return {out[0], out[1]};
}

double frobenius_norm(const CMat& a) {
  double s = 0.0;
  for (const cplx& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs(const CMat& a) {
  double m = 0.0;
  for (const cplx& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

namespace {

void require_finite(const CMat& a, const char* op) {
  if (a.empty()) fail(ErrorKind::InvalidInput, std::string(op) + ": empty matrix");
  if (!a.all_finite()) fail(ErrorKind::InvalidInput, std::string(op) + ": non-finite entry");
}

// Unchecked Jacobi core; `a` is taken as Hermitian.
HermitianEigen jacobi(CMat a) {
  const std::size_t n = a.dim();
  CMat v = CMat::identity(n);
  const double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        const cplx phase_conj = std::conj(a(p, q)) / mag;  // e^{-i arg a_pq}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = D P, D = diag(1, e^{-i arg a_pq}) on (p, q), P the real rotation.
        const cplx gpp = c;
        const cplx gpq = s;
        const cplx gqp = -s * phase_conj;
        const cplx gqq = c * phase_conj;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors = CMat(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

struct Lu {
  CMat lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  bool singular = false;
};

Lu lu_decompose(const CMat& a) {
  const std::size_t n = a.dim();
  Lu f{a, std::vector<std::size_t>(n), 1, false};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(f.lu(i, k)) > best) {
        best = std::abs(f.lu(i, k));
        piv = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      return f;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx m = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

double norm1(const CMat& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

double op_norm(const CMat& a) {
  require_finite(a, "op_norm");
  const HermitianEigen e = jacobi(adjoint(a) * a);
  return std::sqrt(std::max(0.0, e.values.back()));
}

bool is_hermitian(const CMat& a, double tol) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

bool is_unitary(const CMat& a, double tol) {
  return a.all_finite() && op_norm(adjoint(a) * a - CMat::identity(a.dim())) < tol;
}

bool is_projector(const CMat& a, double tol) {
  return a.all_finite() && op_norm(a - adjoint(a)) < tol && op_norm(a * a - a) < tol;
}

HermitianEigen herm_eig(const CMat& a) {
  require_finite(a, "herm_eig");
  const double scale = std::max(op_norm(a), 1e-300);
  if (op_norm(a - adjoint(a)) > 1e-10 * scale)
    fail(ErrorKind::ContractViolation, "herm_eig: matrix is not Hermitian");
  CMat sym = a;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      sym(i, j) = m;
      sym(j, i) = std::conj(m);
    }
  for (std::size_t i = 0; i < a.dim(); ++i) sym(i, i) = a(i, i).real();
  return jacobi(std::move(sym));
}

CMat inverse(const CMat& a) {
  require_finite(a, "inverse");
  const std::size_t n = a.dim();
  const Lu f = lu_decompose(a);
  if (f.singular) fail(ErrorKind::SingularMatrix, "inverse: zero pivot");
  CMat inv(n);
  std::vector<cplx> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = (f.perm[i] == j) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) col[i] -= f.lu(i, k) * col[k];
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t k = ii + 1; k < n; ++k) col[ii] -= f.lu(ii, k) * col[k];
      col[ii] /= f.lu(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  const double cond = norm1(a) * norm1(inv);
  if (!(cond < 1e12)) {
    std::ostringstream msg;
    msg << "inverse: condition estimate " << cond << " exceeds 1e12";
    fail(ErrorKind::SingularMatrix, msg.str());
  }
  return inv;
}

cplx determinant(const CMat& a) {
  require_finite(a, "determinant");
  const Lu f = lu_decompose(a);
  if (f.singular) return 0.0;
  cplx d = static_cast<double>(f.sign);
  for (std::size_t i = 0; i < a.dim(); ++i) d *= f.lu(i, i);
  return d;
}

namespace {

// Householder reduction to upper Hessenberg form; similarity preserves the
// spectrum, which is all eigenvalues() needs.
void to_hessenberg(CMat& h) {
  const std::size_t n = h.dim();
  std::vector<cplx> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha2 += std::norm(h(i, k));
    const double tail = alpha2 - std::norm(h(k + 1, k));
    if (tail == 0.0) continue;
    const double alpha = std::sqrt(alpha2);
    const cplx x0 = h(k + 1, k);
    const cplx phase = (std::abs(x0) == 0.0) ? cplx(1.0) : x0 / std::abs(x0);
    std::fill(v.begin(), v.end(), cplx(0.0));
    v[k + 1] = x0 + phase * alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    // H <- (I - 2 v v*/|v|^2) H (I - 2 v v*/|v|^2)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  cplx s;
};

// [c s; -conj(s) c] [a; b] = [r; 0]
Givens make_givens(cplx a, cplx b) {
  const double r = std::hypot(std::abs(a), std::abs(b));
  if (r == 0.0) return {1.0, 0.0};
  if (std::abs(a) == 0.0) return {0.0, std::conj(b) / std::abs(b)};
  const double c = std::abs(a) / r;
  const cplx s = (a / std::abs(a)) * std::conj(b) / r;
  return {c, s};
}

}  // namespace

std::vector<cplx> eigenvalues(const CMat& a) {
  require_finite(a, "eigenvalues");
  const std::size_t n = a.dim();
  CMat h = a;
  to_hessenberg(h);
  std::vector<cplx> out(n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::size_t hi = n - 1;
  int iter = 0;
  int total = 0;
  std::vector<Givens> rot(n);
  while (true) {
    // Deflate.
    std::size_t lo = hi;
    while (lo > 0) {
      const double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (std::abs(h(lo, lo - 1)) <= eps * (scale == 0.0 ? 1.0 : scale)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out[hi] = h(hi, hi);
      iter = 0;
      if (hi == 0) break;
      --hi;
      continue;
    }
    if (++total > 100 * static_cast<int>(n) + 1000)
      fail(ErrorKind::Domain, "eigenvalues: QR iteration did not converge");
    ++iter;

    // Wilkinson shift from the trailing 2x2 block.
    cplx mu;
    if (iter % 11 == 10) {
      mu = h(hi, hi) + std::abs(h(hi, hi - 1));
    } else {
      const cplx p = h(hi - 1, hi - 1);
      const cplx q = h(hi - 1, hi);
      const cplx r = h(hi, hi - 1);
      const cplx s = h(hi, hi);
      const cplx half_tr = 0.5 * (p + s);
      const cplx disc = std::sqrt(0.25 * (p - s) * (p - s) + q * r);
      const cplx l1 = half_tr + disc;
      const cplx l2 = half_tr - disc;
      mu = (std::abs(l1 - s) < std::abs(l2 - s)) ? l1 : l2;
    }

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot[k] = g;
      for (std::size_t j = k; j <= hi; ++j) {
        const cplx x = h(k, j);
        const cplx y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens g = rot[k];
      const std::size_t top = std::min(k + 2, hi);
      for (std::size_t i = lo; i <= top; ++i) {
        const cplx x = h(i, k);
        const cplx y = h(i, k + 1);
        h(i, k) = g.c * x + std::conj(g.s) * y;
        h(i, k + 1) = -g.s * x + g.c * y;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
  }
  return out;
}

cplx principal_log_det(const CMat& a) {
  require_finite(a, "principal_log_det");
  const double dist = op_norm(a - CMat::identity(a.dim()));
  if (!(dist < 1.0)) {
    std::ostringstream msg;
    msg << "principal_log_det: ||A - I|| = " << dist << " is not below 1";
    fail(ErrorKind::Domain, msg.str());
  }
  cplx sum = 0.0;
  for (const cplx& lambda : eigenvalues(a)) sum += std::log(lambda);
  return sum;
}

CMat unitary_exp(const CMat& hermitian, double tau) {
  const HermitianEigen e = herm_eig(hermitian);
  const std::size_t n = hermitian.dim();
  CMat scaled = e.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx phase = std::polar(1.0, tau * e.values[k]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= phase;
  }
  return scaled * adjoint(e.vectors);
}

}  // namespace aschern
