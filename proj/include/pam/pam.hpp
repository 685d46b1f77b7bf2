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


#ifndef PAM_PAM_HPP
#define PAM_PAM_HPP

#include "pam/chain_model.hpp"
#include "pam/oracle.hpp"
#include "pam/perf_model.hpp"
#include "pam/planner.hpp"
#include "pam/report.hpp"
#include "pam/resource_model.hpp"
#include "pam/scenario_io.hpp"
#include "pam/simulation.hpp"

#endif  // PAM_PAM_HPP
