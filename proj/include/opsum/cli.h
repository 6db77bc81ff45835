// Copyright 2026 The Authors.
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

#ifndef OPSUM_CLI_H_
#define OPSUM_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace opsum {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInternal = 3,
};

// Entry point of the `opsum` tool. `args` excludes the program name.
//
//   ingest <file> [--place ID] [--format jsonl|csv]
//   summarize --place ID [--aspects a,b|all] [--length N]
//             [--female-ratio R] [--lambda X] [--candidate-pool K]
//             [--format json|text]
//   eval --ablation [--places a,b] [--output FILE] [--json]
//   serve [--port P] [--host H]
//
// Common options: --data-dir (env OPSUM_DATA_DIR), --resources
// (env OPSUM_RESOURCE_DIR), --vectors. `serve` also reads OPSUM_PORT.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace opsum

#endif  // OPSUM_CLI_H_
