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
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "featherpipe/service/commands.h"

namespace fp = featherpipe;

namespace {

void AddDataFlags(CLI::App* cmd, fp::DataArgs* data) {
  static const std::map<std::string, fp::DataFormat> kFormats = {
      {"jsonlines", fp::DataFormat::kJsonLines}, {"csv", fp::DataFormat::kCsv}};
  cmd->add_option("--data", data->path, "Dataset file (jsonlines or csv)")
      ->required();
  cmd->add_option("--format", data->format, "jsonlines | csv (default: by extension)")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  cmd->add_option("--null-token", data->null_token, "csv cell text read as null");
}

}  // namespace

int main(int argc, char** argv) {
  fp::ConfigureLogging();
  CLI::App app{"featherpipe: fit, export and serve feature preprocessing pipelines"};
  app.require_subcommand(1);

  fp::FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a pipeline spec and write a bundle");
  fit_cmd->add_option("--spec", fit.spec_path, "Pipeline spec")->required();
  AddDataFlags(fit_cmd, &fit.data);
  fit_cmd->add_option("--out", fit.out_path, "Bundle to write")->required();
  fit_cmd->add_option("--partitions", fit.partitions, "Partitions to fit over")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--threads", fit.threads, "Worker threads (0 = all cores)");

  fp::ApplyArgs apply;
  CLI::App* apply_cmd =
      app.add_subcommand("apply", "Transform a dataset with a bundle, or fit a spec and transform");
  auto* bundle_opt = apply_cmd->add_option("--bundle", apply.bundle_path, "Fitted bundle");
  auto* spec_opt = apply_cmd->add_option("--spec", apply.spec_path, "Spec to fit on --data");
  bundle_opt->excludes(spec_opt);
  AddDataFlags(apply_cmd, &apply.data);
  apply_cmd->add_option("--out", apply.out_path, "jsonlines output ('-' = stdout)");
  apply_cmd->add_option("--select", apply.select, "Columns to keep")->delimiter(',');
  apply_cmd->add_option("--schema-out", apply.schema_out, "Write the output schema here");
  apply_cmd->add_option("--partitions", apply.partitions, "Partitions to fit over")
      ->check(CLI::PositiveNumber);

  fp::InferArgs infer;
  CLI::App* infer_cmd = app.add_subcommand("infer", "Transform one row with a bundle");
  infer_cmd->add_option("--bundle", infer.bundle_path, "Fitted bundle")->required();
  infer_cmd->add_option("--row", infer.row, "Row as a JSON object")->required();
  infer_cmd->add_flag("--lenient", infer.lenient, "Ignore fields the bundle does not use");

  fp::ParityArgs parity;
  CLI::App* parity_cmd =
      app.add_subcommand("parity", "Check the batch engine against the bundle runtime");
  parity_cmd->add_option("--spec", parity.spec_path, "Pipeline spec")->required();
  parity_cmd->add_option("--rows", parity.rows, "Generated rows");
  parity_cmd->add_option("--seed", parity.seed, "Generator seed");
  parity_cmd->add_option("--partitions", parity.partitions, "Partitions")
      ->check(CLI::PositiveNumber);
  parity_cmd->add_option("--summary", parity.summary_path, "Write the summary document here");
  parity_cmd->add_option("--threads", parity.threads, "Worker threads (0 = all cores)");
  parity_cmd->add_flag("--inject-fault", parity.inject_fault,
                       "Corrupt the exported bundle (harness self-test)");

  fp::ExportArgs exp;
  CLI::App* export_cmd =
      app.add_subcommand("export", "Validate a spec and write its unfitted manifest");
  export_cmd->add_option("--spec", exp.spec_path, "Pipeline spec")->required();
  export_cmd->add_option("--out", exp.out_path, "Manifest output ('-' = stdout)");

  fp::ServeArgs serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve a bundle over HTTP");
  serve_cmd->add_option("--bundle", serve.bundle_path, "Fitted bundle")->required();
  serve_cmd->add_option("--host", serve.host, "Listen address");
  serve_cmd->add_option("--port", serve.port, "Listen port (0 = any free port)");
  serve_cmd->add_flag("--lenient", serve.lenient, "Ignore fields the bundle does not use");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fp::kExitIo;
  }

  if (*fit_cmd) return fp::CmdFit(fit, std::cout, std::cerr);
  if (*apply_cmd) return fp::CmdApply(apply, std::cout, std::cerr);
  if (*infer_cmd) return fp::CmdInfer(infer, std::cout, std::cerr);
  if (*parity_cmd) return fp::CmdParity(parity, std::cout, std::cerr);
  if (*export_cmd) return fp::CmdExport(exp, std::cout, std::cerr);
  return fp::CmdServe(serve, std::cout, std::cerr);
}
