// Copyright 2026 The Featherpipe Authors
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
#ifndef FEATHERPIPE_SERVICE_COMMANDS_H_
#define FEATHERPIPE_SERVICE_COMMANDS_H_

// The operator commands behind the featherpipe binary. Each returns a
// process exit code:
//   0 ok, 1 parity or validation failure, 2 I/O or parse error,
//   3 row validation error.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "featherpipe/core/error.h"
#include "featherpipe/io/data_io.h"

namespace featherpipe {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitRow = 3;

int ExitCodeFor(const Error& error);

// Reads FEATHERPIPE_LOG (trace, debug, info, warn, error, off; default
// warn) and points the default logger at stderr.
void ConfigureLogging();

struct DataArgs {
  std::string path;
  // Guessed from the extension when unset.
  std::optional<DataFormat> format;
  std::string null_token;
};

struct FitArgs {
  std::string spec_path;
  DataArgs data;
  std::string out_path;
  size_t partitions = 1;
  size_t threads = 0;
};

struct ApplyArgs {
  // Exactly one of bundle_path and spec_path. With a spec the pipeline is
  // fitted on the same data first.
  std::string bundle_path;
  std::string spec_path;
  DataArgs data;
  // "-" writes to standard output.
  std::string out_path = "-";
  std::vector<std::string> select;
  // Optional: the output schema as a JSON list of fields.
  std::string schema_out;
  size_t partitions = 1;
};

struct InferArgs {
  std::string bundle_path;
  std::string row;
  bool lenient = false;
};

struct ParityArgs {
  std::string spec_path;
  size_t rows = 1000;
  uint64_t seed = 7;
  size_t partitions = 1;
  bool inject_fault = false;
  // Optional: the machine-readable summary document.
  std::string summary_path;
  size_t threads = 0;
};

struct ExportArgs {
  std::string spec_path;
  std::string out_path = "-";
};

struct ServeArgs {
  std::string bundle_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  bool lenient = false;
};

int CmdFit(const FitArgs& args, std::ostream& out, std::ostream& err);
int CmdApply(const ApplyArgs& args, std::ostream& out, std::ostream& err);
int CmdInfer(const InferArgs& args, std::ostream& out, std::ostream& err);
int CmdParity(const ParityArgs& args, std::ostream& out, std::ostream& err);
int CmdExport(const ExportArgs& args, std::ostream& out, std::ostream& err);
// Blocks until SIGINT or SIGTERM, then drains in-flight requests.
int CmdServe(const ServeArgs& args, std::ostream& out, std::ostream& err);

}  // namespace featherpipe

#endif  // FEATHERPIPE_SERVICE_COMMANDS_H_
