#include "aschern/sample.hpp"

#include <cmath>
#include <sstream>

#include "aschern/error.hpp"

namespace aschern {

void SampledMap::insert(PointId id, CMat m) {
  if (m.dim() != n_) fail(ErrorKind::InvalidInput, "sample matrix has the wrong size");
  if (!m.all_finite()) fail(ErrorKind::InvalidInput, "sample matrix has non-finite entries");
  if (index_.count(id) != 0) fail(ErrorKind::InvalidInput, "duplicate point id " + std::to_string(id));
  index_.emplace(id, mats_.size());
  ids_.push_back(id);
  mats_.push_back(std::move(m));
}

const CMat& SampledMap::at(PointId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) fail(ErrorKind::InvalidInput, "unknown point id " + std::to_string(id));
  return mats_[it->second];
}

std::vector<CMat> SampledMap::gather(std::span<const PointId> tuple) const {
  std::vector<CMat> out;
  out.reserve(tuple.size());
  for (PointId id : tuple) out.push_back(at(id));
  return out;
}

double max_pairwise_gap(std::span<const CMat> mats) {
  double worst = 0.0;
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (!(mats[i] == mats[j])) worst = std::max(worst, op_norm(mats[i] - mats[j]));
  return worst;
}

void require_gap(std::span<const CMat> mats, double rho, const char* what) {
  const double gap = max_pairwise_gap(mats);
  if (!(gap < rho)) {
    std::ostringstream msg;
    msg << what << ": max pairwise distance " << gap << " is not below rho = " << rho;
    fail(ErrorKind::Gap, msg.str());
  }
}

UnitarySample::UnitarySample(SampledMap data) : data_(std::move(data)) {
  if (data_.kind() != SampleKind::Unitary) fail(ErrorKind::InvalidInput, "sample is not unitary-valued");
  if (!(data_.rho() > 0.0 && data_.rho() < 1.0))
    fail(ErrorKind::InvalidInput, "unitary sample needs 0 < rho < 1");
  for (PointId id : data_.ids()) {
    if (!is_unitary(data_.at(id), 1e-10))
      fail(ErrorKind::InvalidInput, "matrix at point " + std::to_string(id) + " is not unitary");
  }
}

ProjectorSample::ProjectorSample(SampledMap data) : data_(std::move(data)) {
  if (data_.kind() != SampleKind::Projector)
    fail(ErrorKind::InvalidInput, "sample is not projector-valued");
  if (!(data_.rho() > 0.0 && data_.rho() < 0.5))
    fail(ErrorKind::InvalidInput, "projector sample needs 0 < rho < 1/2");
  bool first = true;
  for (PointId id : data_.ids()) {
    const CMat& e = data_.at(id);
    if (!is_projector(e, 1e-10))
      fail(ErrorKind::InvalidInput,
           "matrix at point " + std::to_string(id) + " is not a self-adjoint projector");
    const double tr = trace(e).real();
    const double r = std::round(tr);
    if (std::abs(tr - r) > 1e-6)
      fail(ErrorKind::InvalidInput, "projector trace is not an integer at point " + std::to_string(id));
    if (first) {
      rank_ = static_cast<std::size_t>(r);
      first = false;
    } else if (static_cast<std::size_t>(r) != rank_) {
      fail(ErrorKind::InvalidInput, "projector rank changes at point " + std::to_string(id));
    }
  }
}

}  // namespace aschern
