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

#ifndef RESCUE_LIMITS_HPP_
#define RESCUE_LIMITS_HPP_

#include <cstddef>

namespace rescue {

// Enumeration caps. Exceeding any of them is a resource-limit error; nothing
// is ever sampled silently in place of a full enumeration.
struct Limits {
  std::size_t matrix_entries = 1'000'000;
  std::size_t expanding_searches = 100'000;
  std::size_t brute_force_locations = 9;
  std::size_t indexability_locations = 12;

  // Defaults, with RESCUE_GAMES_ENUM_CAP (if set to a positive integer)
  // replacing both matrix_entries and expanding_searches.
  static Limits from_env();
};

}  // namespace rescue

#endif  // RESCUE_LIMITS_HPP_
