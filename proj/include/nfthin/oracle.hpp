// SPDX-License-Identifier: Apache-2.0
//
// nf-thin: thinned sparse arrays for near-field multi-user MIMO
// Copyright (C) 2026 The nf-thin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Small-instance checks against brute force and closed forms. Run by `nf-thin oracle`.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nfthin {

struct OracleCheck {
  std::string name;
  bool passed = false;
  double error = 0;      // deviation from the reference value
  double tolerance = 0;
  std::string detail;
};

std::vector<OracleCheck> run_oracle_suite(std::uint64_t seed = 1);

}  // namespace nfthin
