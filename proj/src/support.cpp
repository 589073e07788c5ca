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

#include <cstdlib>
#include <string>

#include "rescue/error.hpp"
#include "rescue/limits.hpp"
#include "rescue/location_set.hpp"

namespace rescue {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kInvalidSpec: return "invalid-spec";
    case ErrorKind::kNotIndexable: return "not-indexable";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kResourceLimit: return "resource-limit";
    case ErrorKind::kBudgetExceeded: return "budget-exceeded";
    case ErrorKind::kUndefinedIndex: return "undefined-index";
  }
  return "unknown";
}

Limits Limits::from_env() {
  Limits limits;
  if (const char* raw = std::getenv("RESCUE_GAMES_ENUM_CAP")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(raw, &end, 10);
    if (end != raw && *end == '\0' && cap > 0) {
      limits.matrix_entries = static_cast<std::size_t>(cap);
      limits.expanding_searches = static_cast<std::size_t>(cap);
    }
  }
  return limits;
}

std::vector<LocationSet> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<LocationSet> out;
  if (k > n) return out;
  if (k == 0) return {LocationSet()};
  // Gosper's hack walks k-bit masks in increasing order.
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = n >= 64 ? 0 : std::uint64_t{1} << n;
  while (true) {
    out.emplace_back(mask);
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    if (ripple == 0) break;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
    if (limit != 0 && mask >= limit) break;
  }
  return out;
}

std::vector<LocationSet> subsets_of(LocationSet base) {
  std::vector<LocationSet> out;
  out.reserve(std::size_t{1} << base.size());
  // Enumerate submasks in increasing order.
  std::uint64_t sub = 0;
  while (true) {
    out.emplace_back(sub);
    if (sub == base.bits()) break;
    sub = ((sub | ~base.bits()) + 1) & base.bits();
  }
  return out;
}

}  // namespace rescue
