#pragma once

// Alexander-Spanier cochains and finitely supported chains at a fixed
// proximity scale. A tuple is in the cover when the sampled data on it
// satisfies the cochain's gap bound; evaluating outside it is an error.

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "aschern/sample.hpp"

namespace aschern {

using cplx = std::complex<double>;
using Tuple = std::vector<PointId>;

std::string format_tuple(std::span<const PointId> tuple);

class Cochain {
 public:
  using Evaluator = std::function<cplx(std::span<const PointId>)>;

  Cochain(int degree, double gap, Evaluator eval);

  int degree() const noexcept { return degree_; }
  double gap() const noexcept { return gap_; }

  /// Checks the tuple length, then evaluates.
  cplx operator()(std::span<const PointId> tuple) const;
  cplx operator()(std::initializer_list<PointId> tuple) const {
    return (*this)(std::span<const PointId>(tuple.begin(), tuple.size()));
  }

 private:
  int degree_;
  double gap_;
  Evaluator eval_;
};

/// A cochain defined on the matrix data of a tuple rather than on point ids.
/// Chern cochains are built this way so that they can be evaluated both on a
/// sample and on freshly generated probe points.
struct MatrixCochain {
  int degree = 0;
  double gap = 0.0;
  std::function<cplx(std::span<const CMat>)> eval;
};

/// Evaluates `phi` on the sample's matrices at the tuple's points.
Cochain bind(const MatrixCochain& phi, const SampledMap& sample);

Cochain constant_cochain(int degree, cplx value);

/// (d phi)(x_0..x_{n+1}) = sum_j (-1)^j phi(x_0..^x_j..x_{n+1})
Cochain coboundary(const Cochain& phi);

/// (phi u psi)(x_0..x_{n+m}) = phi(x_0..x_n) psi(x_n..x_{n+m})
Cochain cup(const Cochain& phi, const Cochain& psi);

struct ChainTerm {
  cplx coeff;
  Tuple tuple;
};

/// Finitely supported chain, kept in canonical form: tuples sorted, duplicates
/// merged, exact zeros dropped.
class Chain {
 public:
  explicit Chain(int degree) : degree_(degree) {}
  Chain(int degree, std::vector<ChainTerm> terms);

  int degree() const noexcept { return degree_; }
  const std::vector<ChainTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  Chain operator-() const;
  friend Chain operator+(const Chain& a, const Chain& b);
  friend Chain operator*(cplx s, const Chain& a);

 private:
  void canonicalize();

  int degree_;
  std::vector<ChainTerm> terms_;
};

Chain chain_boundary(const Chain& mu);

/// sum_k c_k phi(tuple_k), pairwise-summed in canonical term order.
cplx pair(const Chain& mu, const Cochain& phi);

struct CycleReport {
  bool is_cycle = false;
  double max_residual = 0.0;
  std::size_t residual_terms = 0;
};

CycleReport is_cycle(const Chain& mu, double tol);

}  // namespace aschern
