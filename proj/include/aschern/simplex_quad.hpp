#pragma once

// Quadrature on the standard simplex {t_j >= 0, t_1 + ... + t_n <= 1}.
// Nodes are stored in barycentric form (t_0, t_1, ..., t_n) with
// t_0 = 1 - sum_{j>=1} t_j, so that node[j] is the weight of vertex j.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include "aschern/error.hpp"

namespace aschern {

using cplx = std::complex<double>;

struct QuadRule {
  int n = 0;
  int degree = 0;
  std::vector<double> nodes;  // size() * (n + 1) barycentric coordinates
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1)};
  }
};

/// Grundmann-Moller rule of odd degree 1..13 on the n-simplex, 1 <= n <= 4.
QuadRule build_rule(int n, int degree);

/// The 0-simplex: a single node of weight 1.
QuadRule point_rule();

/// Sub-simplices of the k-fold edgewise (Freudenthal) subdivision of the
/// n-simplex. Each vertex is given by integer barycentric coordinates summing
/// to k. Vertex order of the parent is respected, so faces shared by two
/// parents with a common vertex order are subdivided identically.
std::vector<std::vector<std::vector<int>>> edgewise_lattice(int n, int k);

/// Composite rule over the k^n Freudenthal (edgewise) sub-simplices.
QuadRule refine(const QuadRule& rule, int k);

/// Shared immutable copy of refine(build_rule(n, degree), k).
const QuadRule& cached_rule(int n, int degree, int k);

/// Deterministic pairwise (cascade) summation.
cplx pairwise_sum(std::span<const cplx> terms);
double pairwise_sum(std::span<const double> terms);

using NodeFunction = std::function<cplx(std::span<const double>)>;

/// Sum of w_i f(node_i). A non-finite value raises IntegrandFailure naming
/// the node.
cplx integrate(const NodeFunction& f, const QuadRule& rule);

/// Quadrature settings shared by every simplex integral.
struct QuadSpec {
  int degree = 7;
  int subdiv = 0;  // 0 selects adaptive doubling
  double tol = 1e-9;
  int max_subdiv = 0;  // 0 picks a per-dimension cap

  void validate() const;
};

struct QuadResult {
  cplx value;
  int subdiv = 1;
  std::optional<double> error_estimate;  // |I_k - I_{k/2}| when available
};

/// Adaptive mode doubles k until two successive levels agree within tol.
QuadResult integrate_simplex(const NodeFunction& f, int n, const QuadSpec& spec);

}  // namespace aschern
