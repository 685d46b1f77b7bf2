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


#ifndef PAM_PERF_MODEL_HPP
#define PAM_PERF_MODEL_HPP

#include <cstddef>

#include "pam/chain_model.hpp"
#include "pam/resource_model.hpp"

namespace pam {

struct PerfEstimate {
  std::size_t crossings = 0;
  double latency_us = 0.0;
  double max_throughput_gbps = 0.0;
};

/// Number of SmartNIC<->CPU transitions a packet makes walking
/// ingress anchor, v_1 .. v_n, egress anchor.
inline std::size_t count_crossings(const ServiceChain& chain) {
  std::size_t n = 0;
  Placement prev = chain.ingress_anchor;
  for (const auto& v : chain.vnfs) {
    if (v.placement != prev) ++n;
    prev = v.placement;
  }
  if (chain.egress_anchor != prev) ++n;
  return n;
}

/// Additive latency: per-vNF processing on its device plus a fixed cost per
/// PCIe crossing. No queueing.
inline double estimate_latency(const ServiceChain& chain, const SpecCatalog& specs,
                               double pcie_latency_us) {
  double proc = 0.0;
  for (const auto& v : chain.vnfs) proc += spec_of(specs, v).latency_on(v.placement);
  return proc + static_cast<double>(count_crossings(chain)) * pcie_latency_us;
}

inline PerfEstimate estimate_perf(const ServiceChain& chain, const SpecCatalog& specs,
                                  double pcie_latency_us) {
  return {count_crossings(chain), estimate_latency(chain, specs, pcie_latency_us),
          max_chain_throughput(chain, specs)};
}

}  // namespace pam

#endif  // PAM_PERF_MODEL_HPP
