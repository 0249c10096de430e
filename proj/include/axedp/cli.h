// Copyright 2026 The axedp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The `axedp` command line: obfuscate, simulate, sweep, synth, metrics.
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid input or usage.

#ifndef AXEDP_CLI_H_
#define AXEDP_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "axedp/mechanisms.h"
#include "axedp/metrics.h"

namespace axedp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalid = 2;

inline constexpr absl::string_view kDefaultGrid =
    "eps=0.1,0.3,0.5,0.9;T=30;B=10,20";

int ExitCodeFor(const absl::Status& status);

// "eps=0.1,0.3;T=30;B=10,20": semicolon-separated dimensions (eps or
// epsilon, T, B), comma-separated values. Missing dimensions take the value
// from `defaults`. Points are ordered eps, then T, then B.
absl::StatusOr<std::vector<GridPoint>> ParseGrid(absl::string_view spec,
                                                 const DpParams& defaults);

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace axedp

#endif  // AXEDP_CLI_H_
