#include "aschern/as_complex.hpp"

#include <algorithm>
#include <sstream>

#include "aschern/error.hpp"
#include "aschern/parallel.hpp"
#include "aschern/sample.hpp"
#include "aschern/simplex_quad.hpp"

namespace aschern {

std::string format_tuple(std::span<const PointId> tuple) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) out << (i ? ", " : "") << tuple[i];
  out << ")";
  return out.str();
}

Cochain::Cochain(int degree, double gap, Evaluator eval)
    : degree_(degree), gap_(gap), eval_(std::move(eval)) {
  if (degree < 0) fail(ErrorKind::InvalidInput, "cochain degree must be nonnegative");
}

cplx Cochain::operator()(std::span<const PointId> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(degree_ + 1)) {
    std::ostringstream msg;
    msg << "degree-" << degree_ << " cochain evaluated on a tuple of length " << tuple.size();
    fail(ErrorKind::InvalidInput, msg.str());
  }
  return eval_(tuple);
}

Cochain bind(const MatrixCochain& phi, const SampledMap& sample) {
  return Cochain(phi.degree, phi.gap, [phi, &sample](std::span<const PointId> tuple) {
    const std::vector<CMat> mats = sample.gather(tuple);
    try {
      if (phi.gap > 0.0) require_gap(mats, phi.gap, "cochain");
      return phi.eval(mats);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Gap && e.kind() != ErrorKind::SpectralGap) throw;
      throw Error(e.kind(), std::string(e.what()) + " on tuple " + format_tuple(tuple));
    }
  });
}

Cochain constant_cochain(int degree, cplx value) {
  return Cochain(degree, 0.0, [value](std::span<const PointId>) { return value; });
}

namespace {

Tuple drop(std::span<const PointId> tuple, std::size_t j) {
  Tuple face;
  face.reserve(tuple.size() - 1);
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (i != j) face.push_back(tuple[i]);
  return face;
}

}  // namespace

Cochain coboundary(const Cochain& phi) {
  return Cochain(phi.degree() + 1, phi.gap(), [phi](std::span<const PointId> tuple) {
    cplx sum = 0.0;
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      const Tuple face = drop(tuple, j);
      cplx value;
      try {
        value = phi(face);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Gap && e.kind() != ErrorKind::SpectralGap) throw;
        throw Error(e.kind(), std::string(e.what()) + " (face " + std::to_string(j) + " " +
                                  format_tuple(face) + ")");
      }
      sum += (j % 2 == 0) ? value : -value;
    }
    return sum;
  });
}

Cochain cup(const Cochain& phi, const Cochain& psi) {
  const int n = phi.degree();
  return Cochain(n + psi.degree(), std::min(phi.gap(), psi.gap()),
                 [phi, psi, n](std::span<const PointId> tuple) {
                   return phi(tuple.first(n + 1)) * psi(tuple.subspan(n));
                 });
}

Chain::Chain(int degree, std::vector<ChainTerm> terms) : degree_(degree), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.tuple.size() != static_cast<std::size_t>(degree_ + 1))
      fail(ErrorKind::InvalidInput, "chain term has the wrong tuple length");
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
      fail(ErrorKind::InvalidInput, "chain coefficient is not finite");
  }
  canonicalize();
}

void Chain::canonicalize() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const ChainTerm& a, const ChainTerm& b) { return a.tuple < b.tuple; });
  std::vector<ChainTerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().tuple == t.tuple) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const ChainTerm& t) { return t.coeff == cplx(0.0); });
  terms_ = std::move(merged);
}

Chain Chain::operator-() const {
  std::vector<ChainTerm> t = terms_;
  for (auto& term : t) term.coeff = -term.coeff;
  return Chain(degree_, std::move(t));
}

Chain operator+(const Chain& a, const Chain& b) {
  if (a.degree() != b.degree()) fail(ErrorKind::InvalidInput, "adding chains of different degree");
  std::vector<ChainTerm> t = a.terms();
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return Chain(a.degree(), std::move(t));
}

Chain operator*(cplx s, const Chain& a) {
  std::vector<ChainTerm> t = a.terms();
  for (auto& term : t) term.coeff *= s;
  return Chain(a.degree(), std::move(t));
}

Chain chain_boundary(const Chain& mu) {
  if (mu.degree() < 1) fail(ErrorKind::InvalidInput, "boundary of a 0-chain");
  std::vector<ChainTerm> faces;
  for (const auto& term : mu.terms()) {
    for (std::size_t j = 0; j < term.tuple.size(); ++j) {
      faces.push_back({(j % 2 == 0) ? term.coeff : -term.coeff, drop(term.tuple, j)});
    }
  }
  return Chain(mu.degree() - 1, std::move(faces));
}

cplx pair(const Chain& mu, const Cochain& phi) {
  if (mu.degree() != phi.degree()) fail(ErrorKind::InvalidInput, "pairing degrees do not match");
  const auto& terms = mu.terms();
  const std::vector<cplx> values = parallel_map<cplx>(terms.size(), [&](std::size_t i) {
    return terms[i].coeff * phi(terms[i].tuple);
  });
  return pairwise_sum(values);
}

CycleReport is_cycle(const Chain& mu, double tol) {
  CycleReport r;
  if (mu.degree() == 0) {
    r.is_cycle = true;
    return r;
  }
  const Chain b = chain_boundary(mu);
  for (const auto& t : b.terms()) {
    const double mag = std::abs(t.coeff);
    r.max_residual = std::max(r.max_residual, mag);
    if (!(mag < tol) && !(tol == 0.0 && mag == 0.0)) ++r.residual_terms;
  }
  r.is_cycle = r.residual_terms == 0;
  return r;
}

}  // namespace aschern
