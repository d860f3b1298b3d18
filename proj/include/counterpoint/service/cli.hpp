// Copyright 2026 The Counterpoint Authors
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

#include "counterpoint/error.hpp"

namespace counterpoint::service {

// Exit codes: 0 success, 1 usage, 2 provider failure, 3 invalid input,
// 4 I/O failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitProvider = 2;
inline constexpr int kExitInvalidInput = 3;
inline constexpr int kExitIo = 4;

int exit_code(ErrorCode code);

// Entry point of the `counterpoint` tool. Errors are reported on `err` as a
// single line "error: <Code>: <message>".
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace counterpoint::service
