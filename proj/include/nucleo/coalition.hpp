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

#ifndef NUCLEO_COALITION_HPP
#define NUCLEO_COALITION_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace nucleo {

/// Zero-based player index. Player labels shown to users are index + 1.
using Player = std::size_t;

/// Hard ceiling imposed by the dense 2^n worth table.
inline constexpr std::size_t kMaxPlayersHard = 30;

/// Set of players as a bitmask; player index p occupies bit p.
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint64_t mask) : mask_(mask) {}

  static constexpr Coalition grand(std::size_t n) {
    return Coalition(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr Coalition singleton(Player p) { return Coalition(std::uint64_t{1} << p); }

  /// From one-based player labels, e.g. {1, 4, 5, 8, 10}.
  static Coalition from_labels(std::initializer_list<std::size_t> labels);
  static Coalition from_labels(const std::vector<std::size_t>& labels);

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool contains(Player p) const { return (mask_ >> p) & 1U; }
  constexpr bool is_subset_of(Coalition other) const { return (mask_ & ~other.mask_) == 0; }

  constexpr Coalition with(Player p) const { return Coalition(mask_ | (std::uint64_t{1} << p)); }
  constexpr Coalition without(Player p) const { return Coalition(mask_ & ~(std::uint64_t{1} << p)); }

  friend constexpr Coalition operator|(Coalition a, Coalition b) { return Coalition(a.mask_ | b.mask_); }
  friend constexpr Coalition operator&(Coalition a, Coalition b) { return Coalition(a.mask_ & b.mask_); }
  friend constexpr bool operator==(Coalition, Coalition) = default;
  friend constexpr auto operator<=>(Coalition, Coalition) = default;

  /// Zero-based member indices in increasing order.
  std::vector<Player> players() const;

  /// One-based labels, e.g. "{1,4,5,8,10}".
  std::string str() const;

 private:
  std::uint64_t mask_ = 0;
};

}  // namespace nucleo

#endif  // NUCLEO_COALITION_HPP
