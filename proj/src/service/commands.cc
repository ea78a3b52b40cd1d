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
#include "featherpipe/service/commands.h"

#include <algorithm>
#include <csignal>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <pthread.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "featherpipe/parity/parity.h"
#include "featherpipe/pipeline/export.h"
#include "featherpipe/pipeline/pipeline.h"
#include "featherpipe/runtime/plan.h"
#include "featherpipe/service/http.h"

namespace featherpipe {
namespace {

IngestOptions Ingest(const DataArgs& data) {
  return {data.format.value_or(GuessDataFormat(data.path)), data.null_token};
}

PipelineSpec LoadSpec(const std::string& path) {
  return ParseSpec(ReadTextFile(path));
}

ExecutablePlan LoadBundle(const std::string& path, RowMode mode) {
  return ExecutablePlan::Load(ReadTextFile(path), mode);
}

void WriteOutput(const std::string& path, std::ostream& out,
                 const std::string& text) {
  if (path == "-") {
    out << text;
  } else {
    WriteTextFile(path, text);
  }
}

// What a fitted estimator learned, for the fit summary.
Json StageSummary(const FittedStage& stage) {
  Json j = {{"stage", stage.name}, {"op", std::string(OpKindName(stage.op))}};
  const Json& s = *stage.state;
  if (auto it = s.find("labels"); it != s.end()) j["vocabSize"] = it->size();
  if (auto it = s.find("mean"); it != s.end()) j["mean"] = *it;
  if (auto it = s.find("std"); it != s.end()) j["std"] = *it;
  if (auto it = s.find("imputeValue"); it != s.end()) j["imputeValue"] = *it;
  return j;
}

int Report(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  return ExitCodeFor(e);
}

// Errors raised while executing rows are row failures, whatever the code.
int ReportRow(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  const int code = ExitCodeFor(e);
  return code == kExitIo ? code : kExitRow;
}

}  // namespace

int ExitCodeFor(const Error& error) {
  switch (error.code()) {
    case ErrorCode::kIo:
    case ErrorCode::kSpecParse:
    case ErrorCode::kManifest:
      return kExitIo;
    case ErrorCode::kRowValidation:
      return kExitRow;
    default:
      return kExitFailure;
  }
}

void ConfigureLogging() {
  auto logger = spdlog::get("featherpipe");
  if (!logger) logger = spdlog::stderr_logger_mt("featherpipe");
  spdlog::set_default_logger(logger);
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("FEATHERPIPE_LOG")) {
    level = spdlog::level::from_str(env);
  }
  spdlog::set_level(level);
}

int CmdFit(const FitArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const Pipeline pipeline = Pipeline::Compile(LoadSpec(args.spec_path));
    const RecordBatch data =
        ReadDataFile(args.data.path, pipeline.spec().inputs, Ingest(args.data));
    const std::vector<RecordBatch> parts =
        Partition(data, std::max<size_t>(1, args.partitions));
    spdlog::info("fitting {} stages on {} rows in {} partitions",
                 pipeline.spec().stages.size(), data.num_rows(), parts.size());
    const FittedPipeline fitted = pipeline.Fit(parts, {.threads = args.threads});
    WriteTextFile(args.out_path, ExportBundleDocument(fitted));
    Json stages = Json::array();
    for (const FittedStage& stage : fitted.stages()) {
      if (stage.state) stages.push_back(StageSummary(stage));
    }
    out << WriteCanonicalJson(Json{{"bundle", args.out_path},
                                   {"ops", fitted.stages().size()},
                                   {"rows", data.num_rows()},
                                   {"partitions", parts.size()},
                                   {"estimators", std::move(stages)}})
        << "\n";
    return kExitOk;
  } catch (const Error& e) {
    return Report(e, err);
  }
}

int CmdApply(const ApplyArgs& args, std::ostream& out, std::ostream& err) {
  if (args.bundle_path.empty() == args.spec_path.empty()) {
    err << "error: pass exactly one of --bundle and --spec\n";
    return kExitFailure;
  }
  RecordBatch result;
  try {
    if (!args.bundle_path.empty()) {
      const ExecutablePlan plan = LoadBundle(args.bundle_path, RowMode::kStrict);
      const Schema in_schema(plan.input_fields());
      const RecordBatch data = ReadDataFile(args.data.path, in_schema, Ingest(args.data));
      std::vector<std::vector<Value>> rows;
      rows.reserve(data.num_rows());
      for (size_t r = 0; r < data.num_rows(); ++r) {
        try {
          rows.push_back(plan.Execute(data.Row(r)));
        } catch (const Error& e) {
          return ReportRow(e.WithContext({.row = static_cast<int64_t>(r)}), err);
        }
      }
      result = RecordBatch::FromRows(Schema(plan.output_fields()), rows);
    } else {
      const Pipeline pipeline = Pipeline::Compile(LoadSpec(args.spec_path));
      const RecordBatch data =
          ReadDataFile(args.data.path, pipeline.spec().inputs, Ingest(args.data));
      const std::vector<RecordBatch> parts =
          Partition(data, std::max<size_t>(1, args.partitions));
      const FittedPipeline fitted = pipeline.Fit(parts);
      try {
        result = fitted.Transform(data);
      } catch (const Error& e) {
        return ReportRow(e, err);
      }
    }
  } catch (const Error& e) {
    return Report(e, err);
  }

  try {
    for (const std::string& name : args.select) {
      if (result.Find(name) == nullptr) {
        throw Error(ErrorCode::kValidation, "--select names unknown column",
                    {.column = name});
      }
    }
    std::ostringstream text;
    WriteJsonLines(text, result, args.select);
    WriteOutput(args.out_path, out, text.str());
    if (!args.schema_out.empty()) {
      Json fields = Json::array();
      for (const FieldSpec& f : result.schema().fields()) {
        if (args.select.empty() ||
            std::find(args.select.begin(), args.select.end(), f.name) !=
                args.select.end()) {
          fields.push_back(FieldSpecToJson(f));
        }
      }
      WriteTextFile(args.schema_out, WriteCanonicalJson(fields) + "\n");
    }
  } catch (const Error& e) {
    return Report(e, err);
  }
  return kExitOk;
}

int CmdInfer(const InferArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const ExecutablePlan plan = LoadBundle(
        args.bundle_path, args.lenient ? RowMode::kLenient : RowMode::kStrict);
    Json row;
    try {
      row = Json::parse(args.row);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kIo,
                  "malformed row document at byte " + std::to_string(e.byte));
    }
    try {
      out << WriteCanonicalJson(plan.OutputToJson(plan.ExecuteJson(row))) << "\n";
    } catch (const Error& e) {
      return ReportRow(e, err);
    }
    return kExitOk;
  } catch (const Error& e) {
    return Report(e, err);
  }
}

int CmdParity(const ParityArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const PipelineSpec spec = LoadSpec(args.spec_path);
    const std::vector<RecordBatch> data =
        SpecCorpus(spec, args.rows, args.seed, args.partitions);
    const ParityReport report =
        CheckParity(spec, data,
                    {.threads = args.threads, .inject_fault = args.inject_fault});
    out << report.ToText();
    const std::string summary = WriteCanonicalJson(report.Summary());
    if (args.summary_path.empty()) {
      out << summary << "\n";
    } else {
      WriteTextFile(args.summary_path, summary + "\n");
    }
    if (report.fit_error) return Report(*report.fit_error, err);
    return report.passed() ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    return Report(e, err);
  }
}

int CmdExport(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const Pipeline pipeline = Pipeline::Compile(LoadSpec(args.spec_path));
    WriteOutput(args.out_path, out, WriteManifest(ExportUnfitted(pipeline)) + "\n");
    return kExitOk;
  } catch (const Error& e) {
    return Report(e, err);
  }
}

int CmdServe(const ServeArgs& args, std::ostream& out, std::ostream& err) {
  std::optional<InferenceServer> server;
  try {
    server.emplace(LoadBundle(args.bundle_path,
                              args.lenient ? RowMode::kLenient : RowMode::kStrict));
  } catch (const Error& e) {
    return Report(e, err);
  }
  // Signals go to a dedicated waiter; worker threads inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const int port = server->Bind(args.host, args.port);
  if (port < 0) {
    err << "error: cannot bind " << args.host << ":" << args.port << "\n";
    return kExitIo;
  }
  out << "listening on " << args.host << ":" << port << std::endl;
  spdlog::info("serving {} on {}:{}", args.bundle_path, args.host, port);

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    spdlog::info("signal {}: draining", sig);
    server->Stop();
  });
  const bool ok = server->Run();
  if (!ok) {
    // The listener died on its own; wake the waiter.
    pthread_kill(waiter.native_handle(), SIGTERM);
  }
  waiter.join();
  return ok ? kExitOk : kExitIo;
}

}  // namespace featherpipe
