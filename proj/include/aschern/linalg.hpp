#pragma once

// Dense complex matrices sized for the sampled bundles (N <= 64). Products and
// traces go through the runtime-selected kernels; the factorizations below are
// plain scalar code.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace aschern {

using cplx = std::complex<double>;

class CMat {
 public:
  CMat() = default;
  explicit CMat(std::size_t n) : n_(n), a_(n * n) {}

  static CMat zeros(std::size_t n) { return CMat(n); }
  static CMat identity(std::size_t n);
  static CMat diag(std::span<const cplx> d);
  static CMat diag(std::initializer_list<cplx> d);
  static CMat from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t dim() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<cplx> entries() noexcept { return a_; }
  std::span<const cplx> entries() const noexcept { return a_; }

  double* raw() noexcept { return reinterpret_cast<double*>(a_.data()); }
  const double* raw() const noexcept { return reinterpret_cast<const double*>(a_.data()); }

  bool all_finite() const noexcept;

  CMat& operator+=(const CMat& b);
  CMat& operator-=(const CMat& b);
  CMat& operator*=(cplx s);
  /// this += s * b
  CMat& add_scaled(double s, const CMat& b);

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);
CMat operator*(cplx s, CMat a);

CMat adjoint(const CMat& a);
cplx trace(const CMat& a);
/// Tr(a b) without forming the product.
cplx trace_product(const CMat& a, const CMat& b);
double frobenius_norm(const CMat& a);
/// Largest |a_ij|.
double max_abs(const CMat& a);

/// Spectral norm (largest singular value).
double op_norm(const CMat& a);

/// LU with partial pivoting. Throws SingularMatrix when a pivot vanishes or the
/// 1-norm condition estimate exceeds 1e12.
CMat inverse(const CMat& a);
cplx determinant(const CMat& a);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMat vectors;                // column k pairs with values[k]
};

/// Cyclic complex Jacobi. Input must be Hermitian to 1e-10 * op_norm.
HermitianEigen herm_eig(const CMat& a);

/// Eigenvalues of a general complex matrix (Hessenberg reduction followed by
/// shifted complex QR). Unordered.
std::vector<cplx> eigenvalues(const CMat& a);

/// Sum of principal logarithms of the eigenvalues. Requires ||a - I|| < 1,
/// which keeps the whole spectrum in the right half plane.
cplx principal_log_det(const CMat& a);

/// exp(i tau h) for Hermitian h.
CMat unitary_exp(const CMat& hermitian, double tau);

/// Checks shared by samples and deserializers.
bool is_hermitian(const CMat& a, double tol);
bool is_unitary(const CMat& a, double tol);
bool is_projector(const CMat& a, double tol);

}  // namespace aschern
