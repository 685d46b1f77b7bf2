// Copyright 2026 The PAM Planner Authors
//
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


// Linear resource model: a vNF at chain throughput theta consumes
// theta / capacity of the device it runs on.

#ifndef PAM_RESOURCE_MODEL_HPP
#define PAM_RESOURCE_MODEL_HPP

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pam/chain_model.hpp"

namespace pam {

struct UtilizationReport {
  Placement device = Placement::SmartNic;
  double utilization = 0.0;  // demand ratio; may exceed 1
  std::vector<std::pair<std::string, double>> per_vnf;
};

/// Sum of theta_cur / capacity over vNFs placed on `device`. Anchors
/// contribute nothing.
inline UtilizationReport utilization(const ServiceChain& chain, const SpecCatalog& specs,
                                     Placement device, LoadState load) {
  UtilizationReport r;
  r.device = device;
  for (const auto& v : chain.vnfs) {
    if (v.placement != device) continue;
    const double ratio = load.theta_cur / spec_of(specs, v).capacity_on(device);
    r.per_vnf.emplace_back(v.id, ratio);
    r.utilization += ratio;
  }
  return r;
}

inline double device_utilization(const ServiceChain& chain, const SpecCatalog& specs,
                                 Placement device, LoadState load) {
  return utilization(chain, specs, device, load).utilization;
}

/// Hot spot test. Feasibility is strict (< 1), so exactly 1 is overloaded.
inline bool is_overloaded(const ServiceChain& chain, const SpecCatalog& specs,
                          Placement device, LoadState load) {
  return device_utilization(chain, specs, device, load) >= 1.0;
}

/// Largest chain throughput at which neither device exceeds utilization 1:
/// min over devices of 1 / sum(1 / capacity). A device hosting nothing
/// imposes no bound.
inline double max_chain_throughput(const ServiceChain& chain, const SpecCatalog& specs) {
  double inv_s = 0.0;
  double inv_c = 0.0;
  for (const auto& v : chain.vnfs) {
    const double cap = spec_of(specs, v).capacity_on(v.placement);
    (v.placement == Placement::SmartNic ? inv_s : inv_c) += 1.0 / cap;
  }
  double bound = std::numeric_limits<double>::infinity();
  if (inv_s > 0.0) bound = std::min(bound, 1.0 / inv_s);
  if (inv_c > 0.0) bound = std::min(bound, 1.0 / inv_c);
  return bound;
}

}  // namespace pam

#endif  // PAM_RESOURCE_MODEL_HPP
