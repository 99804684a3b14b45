#include "aschern/simplex_quad.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "aschern/error.hpp"

namespace aschern {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// All compositions of `total` into `parts` nonnegative integers.
void compositions(int total, int parts, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    current.push_back(first);
    compositions(total - first, parts - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<std::vector<int>>> edgewise_lattice(int n, int k) {
  if (n < 1 || k < 1) fail(ErrorKind::InvalidInput, "edgewise subdivision needs n >= 1, k >= 1");
  // Ordered coordinates y_1 >= ... >= y_n with t_j = y_j - y_{j+1}; the scaled
  // simplex is then a union of Kuhn simplices of the integer grid.
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> corner(n, 0);
  std::vector<int> perm(n);
  const auto to_bary = [&](const std::vector<int>& z) {
    std::vector<int> t(n + 1);
    t[0] = k - z[0];
    for (int j = 0; j < n; ++j) t[j + 1] = z[j] - ((j + 1 < n) ? z[j + 1] : 0);
    return t;
  };
  const std::function<void(int)> walk = [&](int dim) {
    if (dim == n) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        bool ok = true;
        for (int i = 0; i + 1 < n && ok; ++i) {
          if (corner[i] == corner[i + 1]) {
            const auto pi = std::find(perm.begin(), perm.end(), i);
            const auto pj = std::find(perm.begin(), perm.end(), i + 1);
            ok = pi < pj;
          }
        }
        if (!ok) continue;
        std::vector<std::vector<int>> verts;
        std::vector<int> z = corner;
        verts.push_back(to_bary(z));
        for (int step : perm) {
          ++z[step];
          verts.push_back(to_bary(z));
        }
        out.push_back(std::move(verts));
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    const int upper = (dim == 0) ? k - 1 : corner[dim - 1];
    for (int c = 0; c <= upper; ++c) {
      corner[dim] = c;
      walk(dim + 1);
    }
  };
  walk(0);
  return out;
}

namespace {

template <class T>
T cascade(std::span<const T> x) {
  if (x.size() <= 8) {
    T s{};
    for (const T& v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return cascade(x.first(half)) + cascade(x.subspan(half));
}

}  // namespace

QuadRule build_rule(int n, int degree) {
  if (n < 1 || n > 4 || degree < 1 || degree > 13 || degree % 2 == 0) {
    std::ostringstream msg;
    msg << "no Grundmann-Moller rule for n=" << n << ", degree=" << degree
        << " (need 1<=n<=4, odd degree 1..13)";
    fail(ErrorKind::Capability, msg.str());
  }
  const int s = (degree - 1) / 2;
  QuadRule rule;
  rule.n = n;
  rule.degree = degree;
  std::vector<int> scratch;
  for (int i = 0; i <= s; ++i) {
    const double denom = degree + n - 2 * i;
    const double w = ((i % 2 == 0) ? 1.0 : -1.0) * std::pow(2.0, -2 * s) *
                     std::pow(denom, degree) / (factorial(i) * factorial(degree + n - i));
    std::vector<std::vector<int>> betas;
    compositions(s - i, n + 1, scratch, betas);
    for (const auto& beta : betas) {
      for (int b : beta) rule.nodes.push_back((2.0 * b + 1.0) / denom);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

QuadRule point_rule() {
  QuadRule rule;
  rule.n = 0;
  rule.degree = 13;
  rule.nodes = {1.0};
  rule.weights = {1.0};
  return rule;
}

QuadRule refine(const QuadRule& rule, int k) {
  if (k < 1) fail(ErrorKind::InvalidInput, "refine: subdivision level must be >= 1");
  if (k == 1 || rule.n == 0) return rule;
  const int n = rule.n;
  const auto subs = edgewise_lattice(n, k);
  const double scale = 1.0 / std::pow(static_cast<double>(k), n);
  QuadRule out;
  out.n = n;
  out.degree = rule.degree;
  out.nodes.reserve(subs.size() * rule.nodes.size());
  out.weights.reserve(subs.size() * rule.size());
  for (const auto& verts : subs) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto tau = rule.node(q);
      for (int j = 0; j <= n; ++j) {
        double t = 0.0;
        for (int m = 0; m <= n; ++m) t += tau[m] * verts[m][j] / static_cast<double>(k);
        out.nodes.push_back(t);
      }
      out.weights.push_back(rule.weights[q] * scale);
    }
  }
  return out;
}

const QuadRule& cached_rule(int n, int degree, int k) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<const QuadRule>> cache;
  const std::lock_guard lock(mu);
  auto& slot = cache[{n, degree, k}];
  if (!slot) {
    slot = std::make_unique<const QuadRule>(n == 0 ? point_rule() : refine(build_rule(n, degree), k));
  }
  return *slot;
}

cplx pairwise_sum(std::span<const cplx> terms) { return cascade(terms); }
double pairwise_sum(std::span<const double> terms) { return cascade(terms); }

cplx integrate(const NodeFunction& f, const QuadRule& rule) {
  std::vector<cplx> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const cplx v = f(rule.node(i));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "non-finite integrand at node (";
      const auto t = rule.node(i);
      for (std::size_t j = 0; j < t.size(); ++j) msg << (j ? ", " : "") << t[j];
      msg << ")";
      fail(ErrorKind::IntegrandFailure, msg.str());
    }
    terms[i] = rule.weights[i] * v;
  }
  return pairwise_sum(terms);
}

void QuadSpec::validate() const {
  if (degree < 1 || degree > 13 || degree % 2 == 0)
    fail(ErrorKind::Capability, "quadrature degree must be odd in 1..13");
  if (subdiv < 0) fail(ErrorKind::InvalidInput, "quadrature subdivision must be >= 0");
  if (!(tol > 0.0)) fail(ErrorKind::InvalidInput, "quadrature tolerance must be positive");
}

QuadResult integrate_simplex(const NodeFunction& f, int n, const QuadSpec& spec) {
  spec.validate();
  if (n == 0) return {f(point_rule().node(0)), 1, 0.0};
  if (spec.subdiv > 0) return {integrate(f, cached_rule(n, spec.degree, spec.subdiv)), spec.subdiv, {}};

  int cap = spec.max_subdiv;
  if (cap <= 0) cap = (n <= 2) ? 32 : (n == 3 ? 8 : 4);
  int k = 1;
  cplx prev = integrate(f, cached_rule(n, spec.degree, k));
  double diff = 0.0;
  while (2 * k <= cap) {
    k *= 2;
    const cplx next = integrate(f, cached_rule(n, spec.degree, k));
    diff = std::abs(next - prev);
    prev = next;
    if (diff < spec.tol) break;
  }
  return {prev, k, k == 1 ? std::optional<double>{} : std::optional<double>{diff}};
}

}  // namespace aschern
