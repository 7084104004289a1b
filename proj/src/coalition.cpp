// Copyright 2026 The Nucleo Authors.
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

#include "nucleo/coalition.hpp"

#include <stdexcept>

namespace nucleo {

Coalition Coalition::from_labels(std::initializer_list<std::size_t> labels) {
  return from_labels(std::vector<std::size_t>(labels));
}

Coalition Coalition::from_labels(const std::vector<std::size_t>& labels) {
  std::uint64_t mask = 0;
  for (std::size_t label : labels) {
    if (label == 0 || label > 64) {
      throw std::invalid_argument("player label out of range: " + std::to_string(label));
    }
    mask |= std::uint64_t{1} << (label - 1);
  }
  return Coalition(mask);
}

std::vector<Player> Coalition::players() const {
  std::vector<Player> out;
  out.reserve(size());
  for (std::uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<Player>(std::countr_zero(rest)));
  }
  return out;
}

std::string Coalition::str() const {
  std::string out = "{";
  bool first = true;
  for (Player p : players()) {
    if (!first) out += ',';
    out += std::to_string(p + 1);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace nucleo
