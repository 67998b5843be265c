// Copyright 2026 The fenet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <mutex>
#include <numeric>
#include <unordered_set>

#include "fenet/error.hpp"
#include "fenet/instance.hpp"

namespace fenet {

struct Instance::CostCache {
  std::once_flag once;
  CostMatrix matrix;
};

Instance::Instance(std::vector<Demand> demands, std::vector<Facility> fcs,
                   std::shared_ptr<const Metric> metric, Scale scale)
    : demands_(std::move(demands)),
      fcs_(std::move(fcs)),
      metric_(std::move(metric)),
      scale_(scale),
      cache_(std::make_shared<CostCache>()) {
  if (!metric_) fail(ErrorKind::InvalidArgument, "instance has no metric");
  std::unordered_set<std::string_view> seen;
  for (const auto& d : demands_) {
    if (d.id.empty()) fail(ErrorKind::InvalidArgument, "empty demand id");
    if (!seen.insert(d.id).second)
      fail(ErrorKind::InvalidArgument, "duplicate demand id '" + d.id + "'");
    if (d.amount < 0)
      fail(ErrorKind::InvalidInstance, "negative quantity: demand '" + d.id + "'");
    if (d.site >= metric_->demand_sites())
      fail(ErrorKind::InvalidArgument, "demand '" + d.id + "' has no location");
  }
  seen.clear();
  for (const auto& f : fcs_) {
    if (f.id.empty()) fail(ErrorKind::InvalidArgument, "empty fc id");
    if (!seen.insert(f.id).second)
      fail(ErrorKind::InvalidArgument, "duplicate fc id '" + f.id + "'");
    if (f.capacity < 0)
      fail(ErrorKind::InvalidInstance, "negative quantity: fc '" + f.id + "'");
    if (f.site >= metric_->fc_sites())
      fail(ErrorKind::InvalidArgument, "fc '" + f.id + "' has no location");
  }
  std::int64_t d = total_demand();
  std::int64_t c = total_capacity();
  if (d > c)
    fail(ErrorKind::Infeasible, "supply < demand: total demand " +
                                    std::to_string(d) + " exceeds total capacity " +
                                    std::to_string(c));
}

std::int64_t Instance::total_demand() const {
  std::int64_t s = 0;
  for (const auto& d : demands_) s = checked_add(s, d.amount);
  return s;
}

std::int64_t Instance::total_capacity() const {
  std::int64_t s = 0;
  for (const auto& f : fcs_) s = checked_add(s, f.capacity);
  return s;
}

std::size_t Instance::demand_index(std::string_view id) const {
  for (std::size_t i = 0; i < demands_.size(); ++i)
    if (demands_[i].id == id) return i;
  fail(ErrorKind::UnknownId, "unknown demand id '" + std::string(id) + "'");
}

std::size_t Instance::fc_index(std::string_view id) const {
  for (std::size_t j = 0; j < fcs_.size(); ++j)
    if (fcs_[j].id == id) return j;
  fail(ErrorKind::UnknownId, "unknown fc id '" + std::string(id) + "'");
}

Quantity Instance::distance(std::string_view demand_id, std::string_view fc_id) const {
  return distance(demand_index(demand_id), fc_index(fc_id));
}

const CostMatrix& Instance::costs() const {
  std::call_once(cache_->once, [this] {
    CostMatrix m(demands_.size(), fcs_.size());
    for (std::size_t i = 0; i < demands_.size(); ++i)
      for (std::size_t j = 0; j < fcs_.size(); ++j) m(i, j) = distance(i, j);
    cache_->matrix = std::move(m);
  });
  return cache_->matrix;
}

Instance Instance::restricted(std::span<const std::size_t> demand_idx,
                              std::span<const std::size_t> fc_idx) const {
  std::vector<Demand> d;
  d.reserve(demand_idx.size());
  for (std::size_t i : demand_idx) {
    if (i >= demands_.size()) fail(ErrorKind::InvalidArgument, "demand index out of range");
    d.push_back(demands_[i]);
  }
  std::vector<Facility> f;
  f.reserve(fc_idx.size());
  for (std::size_t j : fc_idx) {
    if (j >= fcs_.size()) fail(ErrorKind::InvalidArgument, "fc index out of range");
    f.push_back(fcs_[j]);
  }
  return Instance(std::move(d), std::move(f), metric_, scale_);
}

Instance Instance::with_demands(std::vector<Demand> demands) const {
  return Instance(std::move(demands), fcs_, metric_, scale_);
}

Instance Instance::with_fcs(std::vector<Facility> fcs) const {
  return Instance(demands_, std::move(fcs), metric_, scale_);
}

Ratio aspect_ratio(const Instance& instance) {
  Quantity hi = 0;
  Quantity lo = 0;
  const auto& c = instance.costs();
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      Quantity v = c(i, j);
      if (v > hi) hi = v;
      if (v > 0 && (lo == 0 || v < lo)) lo = v;
    }
  if (lo == 0)
    fail(ErrorKind::InvalidArgument,
         "aspect ratio undefined: every demand-FC distance is zero");
  Quantity g = std::gcd(hi, lo);
  return Ratio{hi / g, lo / g};
}

int ceil_log2(const Ratio& rho) {
  // smallest e >= 0 with num <= den * 2^e
  int e = 0;
  unsigned __int128 bound = static_cast<unsigned __int128>(rho.den);
  while (bound < static_cast<unsigned __int128>(rho.num)) {
    bound *= 2;
    ++e;
  }
  return e;
}

}  // namespace fenet
