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


#include <algorithm>
#include <cstddef>
#include <vector>

#include <gtest/gtest.h>

#include "pam/perf_model.hpp"
#include "pam/planner.hpp"
#include "pam/report.hpp"
#include "test_util.hpp"

namespace pam {
namespace {

using test::C;
using test::S;

std::vector<std::string> step_ids(const MigrationPlan& p) {
  std::vector<std::string> ids;
  for (const auto& s : p.steps) ids.push_back(s.vnf_id);
  return ids;
}

// Border rule evaluated on the padded sequence [ingress, v_1..v_n, egress].
BorderSets scan_borders(const ServiceChain& c) {
  std::vector<Placement> seq{c.ingress_anchor};
  for (const auto& v : c.vnfs) seq.push_back(v.placement);
  seq.push_back(c.egress_anchor);
  BorderSets b;
  for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
    if (seq[k] != S) continue;
    if (seq[k - 1] == C) b.left.insert(k - 1);
    if (seq[k + 1] == C) b.right.insert(k - 1);
  }
  return b;
}

// S-runs of vNFs whose padded neighbors are both CPU, as [first, last].
std::vector<std::pair<std::size_t, std::size_t>> interior_runs(const ServiceChain& c) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n;) {
    if (c.vnfs[i].placement != S) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && c.vnfs[j + 1].placement == S) ++j;
    const Placement up = i == 0 ? c.ingress_anchor : c.vnfs[i - 1].placement;
    const Placement down = j + 1 == n ? c.egress_anchor : c.vnfs[j + 1].placement;
    if (up == C && down == C) runs.emplace_back(i, j);
    i = j + 1;
  }
  return runs;
}

// ---------------------------------------------------------------------------
// identify_borders

TEST(IdentifyBorders, Fig1) {
  const auto b = identify_borders(test::fig1().chain);
  EXPECT_EQ(b.left, (std::set<std::size_t>{1}));
  EXPECT_EQ(b.right, (std::set<std::size_t>{3}));
}

TEST(IdentifyBorders, AllOnCpu) {
  const auto b = identify_borders(test::uniform_chain({C, C, C}).chain);
  EXPECT_TRUE(b.empty());
}

TEST(IdentifyBorders, TwoSegments) {
  const auto b = identify_borders(test::uniform_chain({S, C, S, S, C}).chain);
  EXPECT_EQ(b.left, (std::set<std::size_t>{2}));
  EXPECT_EQ(b.right, (std::set<std::size_t>{0, 3}));
}

TEST(IdentifyBorders, SingletonSegmentIsBothSides) {
  const auto b = identify_borders(test::uniform_chain({C, S, C}).chain);
  EXPECT_EQ(b.left, (std::set<std::size_t>{1}));
  EXPECT_EQ(b.right, (std::set<std::size_t>{1}));
  EXPECT_EQ(b.members().size(), 1u);
}

TEST(IdentifyBorders, CpuAnchorsMakeChainEndsBorders) {
  Scenario sc = test::uniform_chain({S, S, S});
  EXPECT_TRUE(identify_borders(sc.chain).empty());
  sc.chain.ingress_anchor = C;
  sc.chain.egress_anchor = C;
  const auto b = identify_borders(sc.chain);
  EXPECT_EQ(b.left, (std::set<std::size_t>{0}));
  EXPECT_EQ(b.right, (std::set<std::size_t>{2}));
}

TEST(IdentifyBorders, ExhaustiveAgainstDirectScan) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<Placement> p;
      for (std::size_t i = 0; i < n; ++i) p.push_back((mask >> i) & 1u ? C : S);
      Scenario sc = test::uniform_chain(p);
      for (int anchors = 0; anchors < 4; ++anchors) {
        sc.chain.ingress_anchor = anchors & 1 ? C : S;
        sc.chain.egress_anchor = anchors & 2 ? C : S;
        const auto b = identify_borders(sc.chain);
        ASSERT_EQ(b, scan_borders(sc.chain)) << "n=" << n << " mask=" << mask;
        for (std::size_t i : b.members()) ASSERT_EQ(sc.chain.vnfs[i].placement, S);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// select_candidate

TEST(SelectCandidate, Fig1PicksLogger) {
  const Scenario sc = test::fig1();
  const auto pick = select_candidate(identify_borders(sc.chain), sc.chain, sc.specs);
  ASSERT_TRUE(pick);
  EXPECT_EQ(sc.chain.vnfs[*pick].id, "logger");
}

TEST(SelectCandidate, EmptyUnion) {
  const Scenario sc = test::fig1();
  EXPECT_FALSE(select_candidate(BorderSets{}, sc.chain, sc.specs));
}

TEST(SelectCandidate, TieGoesToLowestIndex) {
  const Scenario sc = test::uniform_chain({C, S, C, S, C}, 4.0);
  const BorderSets b{{1, 3}, {1, 3}};
  EXPECT_EQ(select_candidate(b, sc.chain, sc.specs), std::optional<std::size_t>(1));
}

// ---------------------------------------------------------------------------
// Feasibility checks

TEST(CheckCpuHeadroom, Examples) {
  const Scenario sc = test::fig1();
  EXPECT_TRUE(check_cpu_headroom(sc.chain, sc.specs, 1, {1.2}));
  EXPECT_TRUE(check_cpu_headroom(sc.chain, sc.specs, 1, {0.0}));
  EXPECT_FALSE(check_cpu_headroom(sc.chain, sc.specs, 1, {1.5}));
}

TEST(CheckAlleviated, Examples) {
  const Scenario sc = test::fig1();
  EXPECT_TRUE(check_alleviated(sc.chain, sc.specs, 1, {1.2}));
  const Scenario only = test::uniform_chain({C, S, C}, 0.5);
  EXPECT_TRUE(check_alleviated(only.chain, only.specs, 1, {100.0}));
  const Scenario mo = test::monitor_override();
  EXPECT_FALSE(check_alleviated(mo.chain, mo.specs, 1, {1.6}));
}

// ---------------------------------------------------------------------------
// plan_pam

TEST(PlanPam, Fig1MigratesLogger) {
  const Scenario sc = test::fig1();
  const auto plan = plan_pam(sc.chain, sc.specs, sc.load);
  EXPECT_EQ(plan.outcome, Outcome::Resolved);
  EXPECT_EQ(step_ids(plan), (std::vector<std::string>{"logger"}));
  EXPECT_EQ(plan.steps[0].from, S);
  EXPECT_EQ(plan.steps[0].to, C);
  EXPECT_EQ(plan.steps[0].side, BorderSide::Left);
  EXPECT_TRUE(plan.rejected_candidates.empty());
  EXPECT_NEAR(device_utilization(plan.post_chain, sc.specs, S, sc.load), 0.495, 1e-9);
  EXPECT_NEAR(device_utilization(plan.post_chain, sc.specs, C, sc.load), 0.9, 1e-9);
}

TEST(PlanPam, NotOverloaded) {
  const Scenario sc = test::fig1(0.5);
  EXPECT_NEAR(device_utilization(sc.chain, sc.specs, S, sc.load), 0.45625, 1e-12);
  const auto plan = plan_pam(sc.chain, sc.specs, sc.load);
  EXPECT_EQ(plan.outcome, Outcome::NotOverloaded);
  EXPECT_TRUE(plan.steps.empty());
  EXPECT_EQ(plan.post_chain, sc.chain);
}

TEST(PlanPam, ScenarioCTwoSteps) {
  const Scenario sc = test::scenario_c();
  const auto plan = plan_pam(sc.chain, sc.specs, sc.load);
  EXPECT_EQ(plan.outcome, Outcome::Resolved);
  EXPECT_EQ(step_ids(plan), (std::vector<std::string>{"logger", "monitor"}));
  EXPECT_EQ(plan.steps[1].side, BorderSide::Left);
  EXPECT_NEAR(device_utilization(plan.post_chain, sc.specs, S, sc.load), 0.16, 1e-12);
  EXPECT_EQ(count_crossings(plan.post_chain), count_crossings(sc.chain));
}

TEST(PlanPam, CpuHeadroomRejectionFallsBackToNextBorder) {
  // Logger no longer fits on the CPU, Firewall does and frees enough.
  Scenario sc = test::fig1(1.2);
  sc.specs["Logger"].cap_cpu = 1.0;
  sc.specs["Monitor"].cap_smartnic = 20.0;
  sc.specs["Firewall"].cap_smartnic = 2.1;
  sc.specs["Firewall"].cap_cpu = 100.0;
  const auto plan = plan_pam(sc.chain, sc.specs, sc.load);
  ASSERT_EQ(plan.rejected_candidates.size(), 1u);
  EXPECT_EQ(plan.rejected_candidates[0].vnf_id, "logger");
  EXPECT_EQ(plan.rejected_candidates[0].reason, "cpu_headroom");
  EXPECT_EQ(step_ids(plan), (std::vector<std::string>{"firewall"}));
  EXPECT_EQ(plan.steps[0].side, BorderSide::Right);
  EXPECT_EQ(plan.outcome, Outcome::Resolved);
}

TEST(PlanPam, RejectedVnfIsNotPromotedBack) {
  // v1 fails the CPU check on the left; peeling v3 then v2 from the right
  // exposes v1 again, and it must not be retried.
  Scenario sc = test::uniform_chain({C, S, S, S, C}, 1.0, 100.0);
  sc.specs["v1"].cap_smartnic = 0.4;
  sc.specs["v1"].cap_cpu = 0.4;
  const auto plan = plan_pam(sc.chain, sc.specs, {0.4});
  ASSERT_EQ(plan.rejected_candidates.size(), 1u);
  EXPECT_EQ(plan.rejected_candidates[0].vnf_id, "v1");
  EXPECT_EQ(step_ids(plan), (std::vector<std::string>{"v3", "v2"}));
  EXPECT_EQ(plan.outcome, Outcome::ScaleOutRequired);
}

TEST(PlanPam, ScaleOutWhenCpuSaturated) {
  Scenario sc = test::fig1(1.2);
  sc.specs["LoadBalancer"].cap_cpu = 1.2;  // CPU already at 1.0 + 0.3
  const auto plan = plan_pam(sc.chain, sc.specs, sc.load);
  EXPECT_EQ(plan.outcome, Outcome::ScaleOutRequired);
  EXPECT_TRUE(plan.steps.empty());
  EXPECT_EQ(plan.rejected_candidates.size(), 2u);
}

TEST(PlanPam, ScaleOutWithNoBorders) {
  const Scenario sc = test::uniform_chain({S, S, S}, 1.0);
  const auto plan = plan_pam(sc.chain, sc.specs, {0.5});
  EXPECT_EQ(plan.outcome, Outcome::ScaleOutRequired);
  EXPECT_TRUE(plan.steps.empty());
}

TEST(PlanPam, SingletonSegmentMigratedOnce) {
  Scenario sc = test::uniform_chain({C, S, C, S, S, C}, 1.0, 100.0);
  sc.specs["v1"].cap_smartnic = 0.5;
  const auto plan = plan_pam(sc.chain, sc.specs, {0.4});
  ASSERT_FALSE(plan.steps.empty());
  EXPECT_EQ(plan.steps[0].vnf_id, "v1");
  EXPECT_EQ(plan.steps[0].side, BorderSide::Both);
  EXPECT_EQ(count_crossings(plan.post_chain) + 2, count_crossings(sc.chain));
}

// ---------------------------------------------------------------------------
// plan_naive

TEST(PlanNaive, MonitorOverrideMigratesMonitor) {
  const Scenario sc = test::monitor_override(1.0);
  const auto plan = plan_naive(sc.chain, sc.specs, sc.load);
  EXPECT_EQ(plan.policy, Policy::Naive);
  EXPECT_EQ(plan.outcome, Outcome::Resolved);
  EXPECT_EQ(step_ids(plan), (std::vector<std::string>{"monitor"}));
  EXPECT_EQ(plan.steps[0].side, BorderSide::None);
}

TEST(PlanNaive, NotOverloaded) {
  const Scenario sc = test::fig1(0.5);
  const auto plan = plan_naive(sc.chain, sc.specs, sc.load);
  EXPECT_EQ(plan.outcome, Outcome::NotOverloaded);
  EXPECT_TRUE(plan.steps.empty());
}

TEST(PlanNaive, Fig1CoincidesWithPam) {
  const Scenario sc = test::fig1(1.2);
  const auto naive = plan_naive(sc.chain, sc.specs, sc.load);
  const auto pam = plan_pam(sc.chain, sc.specs, sc.load);
  EXPECT_EQ(step_ids(naive), (std::vector<std::string>{"logger"}));
  EXPECT_EQ(naive.post_chain, pam.post_chain);
}

TEST(PlanNaive, ReusesCpuHeadroomCheck) {
  Scenario sc = test::monitor_override(1.0);
  sc.specs["Monitor"].cap_cpu = 2.0;  // 0.25 + 0.25 + 0.5 = 1.0, not < 1
  const auto plan = plan_naive(sc.chain, sc.specs, sc.load);
  ASSERT_EQ(plan.rejected_candidates.size(), 1u);
  EXPECT_EQ(plan.rejected_candidates[0].vnf_id, "monitor");
  EXPECT_EQ(step_ids(plan), (std::vector<std::string>{"logger"}));
}

// ---------------------------------------------------------------------------
// Properties over random scenarios

TEST(PlannerProperties, PamNeverAddsCrossings) {
  test::ScenarioGenerator gen(21, {.random_anchors = true});
  for (int i = 0; i < 2000; ++i) {
    const Scenario sc = gen.next();
    const auto plan = plan_pam(sc.chain, sc.specs, sc.load);
    const std::size_t before = count_crossings(sc.chain);
    const std::size_t after = count_crossings(plan.post_chain);
    ASSERT_LE(after, before);
    std::size_t drained = 0;
    for (auto [a, b] : interior_runs(sc.chain)) {
      bool all_cpu = true;
      for (std::size_t k = a; k <= b; ++k) all_cpu &= plan.post_chain.vnfs[k].placement == C;
      drained += all_cpu;
    }
    ASSERT_EQ(before - after, 2 * drained) << "scenario " << i;
  }
}

TEST(PlannerProperties, ResolvedPostStateStrictlyFeasible) {
  test::ScenarioGenerator gen(22, {.random_anchors = true});
  for (int i = 0; i < 2000; ++i) {
    const Scenario sc = gen.next();
    for (const auto& plan : {plan_pam(sc.chain, sc.specs, sc.load),
                             plan_naive(sc.chain, sc.specs, sc.load)}) {
      if (plan.outcome != Outcome::Resolved) continue;
      EXPECT_LT(device_utilization(plan.post_chain, sc.specs, S, sc.load), 1.0);
      EXPECT_LT(device_utilization(plan.post_chain, sc.specs, C, sc.load), 1.0);
    }
  }
}

TEST(PlannerProperties, PlanShapeInvariants) {
  test::ScenarioGenerator gen(23, {.random_anchors = true});
  for (int i = 0; i < 2000; ++i) {
    const Scenario sc = gen.next();
    for (const auto& plan : {plan_pam(sc.chain, sc.specs, sc.load),
                             plan_naive(sc.chain, sc.specs, sc.load)}) {
      if (plan.outcome == Outcome::NotOverloaded) {
        EXPECT_TRUE(plan.steps.empty());
      }
      for (const auto& s : plan.steps) {
        EXPECT_EQ(s.from, S);
        EXPECT_EQ(s.to, C);
      }
      EXPECT_EQ(apply_steps(sc.chain, plan.steps), plan.post_chain);
    }
  }
}

TEST(PlannerProperties, EachRoundReleasesTheMostSmartNicLoad) {
  test::ScenarioGenerator gen(24, {.random_anchors = true});
  for (int i = 0; i < 1000; ++i) {
    const Scenario sc = gen.next();
    auto check = [&](std::span<const std::size_t> pool, std::size_t chosen,
                     const ServiceChain& cur) {
      ASSERT_TRUE(std::find(pool.begin(), pool.end(), chosen) != pool.end());
      const double released = sc.load.theta_cur / sc.specs.at(cur.vnfs[chosen].spec).cap_smartnic;
      for (std::size_t j : pool) {
        const double r = sc.load.theta_cur / sc.specs.at(cur.vnfs[j].spec).cap_smartnic;
        ASSERT_LE(r, released);
        if (r == released) {
          ASSERT_LE(chosen, j);
        }
      }
    };
    std::size_t pam_rounds = 0;
    plan_pam(sc.chain, sc.specs, sc.load,
             [&](std::span<const std::size_t> pool, std::size_t chosen, const ServiceChain& cur) {
               ++pam_rounds;
               check(pool, chosen, cur);
               // PAM's pool is always a subset of the current borders.
               const auto members = identify_borders(cur).members();
               for (std::size_t j : pool) ASSERT_TRUE(members.contains(j));
             });
    plan_naive(sc.chain, sc.specs, sc.load, check);
  }
}

TEST(PlannerProperties, Deterministic) {
  test::ScenarioGenerator gen(25, {.random_anchors = true});
  for (int i = 0; i < 500; ++i) {
    const Scenario sc = gen.next();
    const auto a = plan_pam(sc.chain, sc.specs, sc.load);
    const auto b = plan_pam(sc.chain, sc.specs, sc.load);
    EXPECT_EQ(a, b);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  }
}

}  // namespace
}  // namespace pam
