// Copyright 2026 The critcoupling Authors.
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crit::cli {

/// Exit statuses.
inline constexpr int exit_ok = 0;
inline constexpr int exit_table_failure = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_potential = 3;
inline constexpr int exit_divergence = 4;
inline constexpr int exit_convergence = 5;
inline constexpr int exit_internal = 6;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crit::cli
