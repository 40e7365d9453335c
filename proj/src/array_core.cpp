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

#include "nfthin/array_core.hpp"

#include <algorithm>

namespace nfthin {

ThinningVector::ThinningVector(std::vector<std::uint8_t> mask, std::vector<int> fixed_set)
    : mask_(std::move(mask)), fixed_(std::move(fixed_set)) {
  std::sort(fixed_.begin(), fixed_.end());
  fixed_.erase(std::unique(fixed_.begin(), fixed_.end()), fixed_.end());
  for (auto& m : mask_) m = m ? 1 : 0;
  for (int f : fixed_) {
    if (f < 0 || f >= size()) throw std::invalid_argument("ThinningVector: fixed index out of range");
    if (!mask_[static_cast<std::size_t>(f)])
      throw std::invalid_argument("ThinningVector: fixed element " + std::to_string(f) + " is inactive");
  }
  active_count_ = static_cast<int>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

ThinningVector ThinningVector::all_active(int n_elements) {
  if (n_elements < 1) throw std::invalid_argument("ThinningVector: empty mask");
  return ThinningVector(std::vector<std::uint8_t>(static_cast<std::size_t>(n_elements), 1));
}

ThinningVector ThinningVector::from_indices(int n_elements, const std::vector<int>& active,
                                            std::vector<int> fixed_set) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n_elements), 0);
  for (int a : active) {
    if (a < 0 || a >= n_elements) throw std::invalid_argument("ThinningVector: active index out of range");
    mask[static_cast<std::size_t>(a)] = 1;
  }
  return ThinningVector(std::move(mask), std::move(fixed_set));
}

ThinningVector ThinningVector::from_bit_string(std::string_view bits, std::vector<int> fixed_set) {
  std::vector<std::uint8_t> mask;
  mask.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("ThinningVector: bit string must be 0/1");
    mask.push_back(c == '1' ? 1 : 0);
  }
  return ThinningVector(std::move(mask), std::move(fixed_set));
}

std::vector<int> ThinningVector::active_indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(active_count_));
  for (int n = 0; n < size(); ++n)
    if (mask_[static_cast<std::size_t>(n)]) out.push_back(n);
  return out;
}

std::string ThinningVector::to_bit_string() const {
  std::string s(mask_.size(), '0');
  for (std::size_t n = 0; n < mask_.size(); ++n)
    if (mask_[n]) s[n] = '1';
  return s;
}

std::vector<int> edge_elements(int n_elements) {
  if (n_elements < 2) throw std::invalid_argument("edge_elements: need at least two elements");
  return {0, n_elements - 1};
}

}  // namespace nfthin
