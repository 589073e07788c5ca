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

#ifndef RESCUE_IO_HPP_
#define RESCUE_IO_HPP_

#include <filesystem>
#include <variant>

#include "json.hpp"

#include "rescue/indexable.hpp"
#include "rescue/rational.hpp"
#include "rescue/tree.hpp"

namespace rescue {

// Parsed instance file: an unstructured game or a rooted tree.
using InstanceFile = std::variant<Game, RootedTree>;

// Rationals must be JSON strings "num/den" (or integers "n"); numbers and
// decimal strings are rejected. Structural problems are invalid-argument
// errors; semantic checks are left to validate_game / validate_tree.
InstanceFile parse_instance(const nlohmann::json& doc);
InstanceFile load_instance_file(const std::filesystem::path& path);
nlohmann::json load_json(const std::filesystem::path& path);

nlohmann::json to_json(const InstanceFile& file);

Rational parse_rational_field(const nlohmann::json& value, const std::string& where);

}  // namespace rescue

#endif  // RESCUE_IO_HPP_
