// Copyright 2026 The Rescue Games Authors. All rights reserved.
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

#ifndef RESCUE_LOCATION_SET_HPP_
#define RESCUE_LOCATION_SET_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace rescue {

// Subset of {0, ..., n-1} stored as a bitmask. Location indices are the
// canonical positions of ids in an instance's location list.
class LocationSet {
 public:
  static constexpr std::size_t kMaxSize = 64;

  constexpr LocationSet() = default;
  constexpr explicit LocationSet(std::uint64_t bits) : bits_(bits) {}
  LocationSet(std::initializer_list<std::size_t> members) {
    for (std::size_t m : members) insert(m);
  }

  static constexpr LocationSet all(std::size_t n) {
    return LocationSet(n >= 64 ? ~std::uint64_t{0}
                               : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool contains(std::size_t i) const {
    return i < kMaxSize && ((bits_ >> i) & 1U) != 0;
  }
  constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }

  constexpr LocationSet with(std::size_t i) const {
    return LocationSet(bits_ | (std::uint64_t{1} << i));
  }
  constexpr bool subset_of(LocationSet o) const {
    return (bits_ & ~o.bits_) == 0;
  }
  constexpr bool disjoint(LocationSet o) const { return (bits_ & o.bits_) == 0; }

  friend constexpr LocationSet operator|(LocationSet a, LocationSet b) {
    return LocationSet(a.bits_ | b.bits_);
  }
  friend constexpr LocationSet operator&(LocationSet a, LocationSet b) {
    return LocationSet(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr LocationSet operator-(LocationSet a, LocationSet b) {
    return LocationSet(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(LocationSet, LocationSet) = default;
  friend constexpr auto operator<=>(LocationSet a, LocationSet b) {
    return a.bits_ <=> b.bits_;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

// All size-k subsets of {0..n-1} in increasing bitmask order.
std::vector<LocationSet> subsets_of_size(std::size_t n, std::size_t k);

// All subsets of `base` (including the empty set and `base` itself) in
// increasing bitmask order.
std::vector<LocationSet> subsets_of(LocationSet base);

}  // namespace rescue

#endif  // RESCUE_LOCATION_SET_HPP_
