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


// pam: plan, simulate, compare and verify SmartNIC/CPU vNF migrations.
//
// Exit codes: 0 success, 1 parse or validation error, 2 verification
// failure, 3 I/O error.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pam/pam.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitIo = 3;

struct Options {
  std::optional<double> pcie_latency_us;
  std::string scenario;
  std::string trace;
  std::string policy = "pam";
  std::string out;
  std::string svg;
  bool json = false;
};

pam::Scenario load(const Options& o) {
  pam::Scenario sc = pam::load_scenario(o.scenario);
  if (o.pcie_latency_us) {
    sc.pcie_latency_us = *o.pcie_latency_us;
    const auto rep = pam::validate(sc);
    if (!rep.ok())
      throw pam::ScenarioError(pam::ScenarioError::Kind::Validation,
                               "--pcie-latency-us: " + rep.summary());
  }
  return sc;
}

int run_plan(const Options& o) {
  const pam::Scenario sc = load(o);
  const auto policy = o.policy == "naive" ? pam::Policy::Naive : pam::Policy::Pam;
  const auto plan = pam::plan_for(policy, sc.chain, sc.specs, sc.load);
  if (o.json)
    std::cout << pam::plan_report_json(sc, plan).dump(2) << "\n";
  else
    std::cout << pam::plan_text(sc, plan);
  return kExitOk;
}

int run_simulate(const Options& o) {
  const pam::Scenario sc = load(o);
  const auto trace = pam::load_trace(o.trace);
  const auto records = pam::run_trace(sc, trace, pam::replay_policy_from_string(o.policy));
  pam::emit_timeline_csv(records, o.out);
  if (!o.svg.empty()) pam::emit_svg(pam::timeline_svg(records), o.svg);
  std::size_t total = records.empty() ? 0 : records.back().cumulative_migrations;
  std::cout << "wrote " << records.size() << " records (" << total << " migrations) to "
            << o.out << "\n";
  return kExitOk;
}

int run_compare(const Options& o) {
  const pam::Scenario sc = load(o);
  const auto rep = pam::compare(sc);
  if (o.json)
    std::cout << pam::to_json(rep).dump(2) << "\n";
  else
    std::cout << pam::comparison_text(rep);
  if (!o.svg.empty()) pam::emit_svg(pam::comparison_svg(rep), o.svg);
  return kExitOk;
}

int run_verify(const Options& o) {
  const pam::Scenario sc = load(o);
  bool ok = true;
  for (auto policy : {pam::Policy::Pam, pam::Policy::Naive}) {
    const auto plan = pam::plan_for(policy, sc.chain, sc.specs, sc.load);
    const auto rep = pam::verify_plan(sc.chain, sc.specs, sc.load, plan);
    std::cout << pam::to_string(policy) << ": " << pam::to_string(plan.outcome) << ", "
              << rep.checks_run << " checks, " << (rep.passed() ? "pass" : "FAIL") << "\n";
    for (const auto& f : rep.failures)
      std::cout << "  " << pam::to_string(f.check) << ": " << f.message
                << (f.witness.empty() ? "" : " witness " + f.witness) << "\n";
    if (rep.input_closure_witness)
      std::cout << "  info: feasible placement reachable from input: "
                << *rep.input_closure_witness << "\n";
    ok = ok && rep.passed();
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SmartNIC/CPU service chain migration planner"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--pcie-latency-us", o.pcie_latency_us,
                 "Override the per-crossing PCIe latency (microseconds)");

  auto* plan = app.add_subcommand("plan", "Plan migrations for the scenario's load");
  plan->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  plan->add_option("--policy", o.policy, "pam or naive")
      ->check(CLI::IsMember({"pam", "naive"}));
  plan->add_flag("--json", o.json, "Emit JSON");

  auto* sim = app.add_subcommand("simulate", "Replay a load trace");
  sim->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  sim->add_option("--trace", o.trace, "Trace CSV (t,theta_cur_gbps)")->required();
  sim->add_option("--policy", o.policy, "pam, naive or none")
      ->check(CLI::IsMember({"pam", "naive", "none"}));
  sim->add_option("--out", o.out, "Timeline CSV output")->required();
  sim->add_option("--svg", o.svg, "Optional SVG chart output");

  auto* cmp = app.add_subcommand("compare", "Compare PAM with the naive baseline");
  cmp->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  cmp->add_flag("--json", o.json, "Emit JSON");
  cmp->add_option("--svg", o.svg, "Optional SVG chart output");

  auto* ver = app.add_subcommand("verify", "Check both planners against the oracle");
  ver->add_option("--scenario", o.scenario, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*plan) return run_plan(o);
    if (*sim) return run_simulate(o);
    if (*cmp) return run_compare(o);
    if (*ver) return run_verify(o);
  } catch (const pam::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == pam::ScenarioError::Kind::Io ? kExitIo : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
