#pragma once

// Matrix-valued data sampled on a finite point set, plus the gap condition
// that decides which tuples of points are close enough to evaluate on.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "aschern/linalg.hpp"

namespace aschern {

using PointId = std::int64_t;

enum class SampleKind { Unitary, Projector };

class SampledMap {
 public:
  SampledMap() = default;
  SampledMap(SampleKind kind, std::size_t n, double rho) : kind_(kind), n_(n), rho_(rho) {}

  void insert(PointId id, CMat m);

  SampleKind kind() const noexcept { return kind_; }
  std::size_t N() const noexcept { return n_; }
  double rho() const noexcept { return rho_; }
  std::size_t size() const noexcept { return ids_.size(); }
  std::span<const PointId> ids() const noexcept { return ids_; }

  bool contains(PointId id) const { return index_.count(id) != 0; }
  const CMat& at(PointId id) const;
  std::vector<CMat> gather(std::span<const PointId> tuple) const;

 private:
  SampleKind kind_ = SampleKind::Unitary;
  std::size_t n_ = 0;
  double rho_ = 0.0;
  std::vector<PointId> ids_;
  std::vector<CMat> mats_;
  std::unordered_map<PointId, std::size_t> index_;
};

/// Largest pairwise operator-norm distance.
double max_pairwise_gap(std::span<const CMat> mats);

/// Throws ErrorKind::Gap unless every pairwise distance is below rho.
void require_gap(std::span<const CMat> mats, double rho, const char* what);

/// U: X -> U(N) with gap bound rho < 1.
class UnitarySample {
 public:
  explicit UnitarySample(SampledMap data);
  const SampledMap& data() const noexcept { return data_; }
  const CMat& operator[](PointId id) const { return data_.at(id); }
  double rho() const noexcept { return data_.rho(); }
  std::size_t N() const noexcept { return data_.N(); }

 private:
  SampledMap data_;
};

/// Self-adjoint projectors of a common rank with gap bound rho < 1/2.
class ProjectorSample {
 public:
  explicit ProjectorSample(SampledMap data);
  const SampledMap& data() const noexcept { return data_; }
  const CMat& operator[](PointId id) const { return data_.at(id); }
  double rho() const noexcept { return data_.rho(); }
  std::size_t N() const noexcept { return data_.N(); }
  std::size_t rank() const noexcept { return rank_; }

 private:
  SampledMap data_;
  std::size_t rank_ = 0;
};

}  // namespace aschern
