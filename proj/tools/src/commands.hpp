#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "keysel/experiment.hpp"
#include "keysel/synthetic.hpp"

namespace keysel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

/// Resolution order: explicit flag, then KEYSEL_DATA_DIR, then ./keysel-data.
std::filesystem::path resolve_data_dir(const std::optional<std::string>& flag);

struct IngestOptions {
  std::filesystem::path input;
  std::string corpus_id;
  bool strict = false;
};

struct SynthOptions {
  SyntheticSpec spec;
  std::filesystem::path output_dir;
  std::optional<std::string> register_as;
};

/// A parsed experiment config file.
struct RunConfig {
  std::filesystem::path corpus_path;  // set unless corpus_id is
  std::optional<std::string> corpus_id;
  std::filesystem::path oracle_path;
  std::filesystem::path output_dir;
  ExperimentConfig experiment;
};

/// Parses and checks a run config. Relative paths resolve against `base`.
/// Every schema violation found is appended to `problems`; the returned
/// config is meaningful only when `problems` stays empty.
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base,
                           std::vector<std::string>& problems);

struct RunOptions {
  std::filesystem::path config;
  std::optional<unsigned> jobs;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::filesystem::path> static_dir;
  bool persist = true;
};

struct ReportOptions {
  std::filesystem::path results;
  std::optional<std::filesystem::path> json_out;
};

// Each command writes its normal output to `out` and diagnostics to `err`
// and returns the process exit code.
int cmd_ingest(const IngestOptions& options, const std::filesystem::path& data_dir,
               std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& options, const std::filesystem::path& data_dir,
              std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& options, const std::filesystem::path& data_dir, std::ostream& out,
            std::ostream& err);
int cmd_serve(const ServeOptions& options, const std::filesystem::path& data_dir,
              std::ostream& out, std::ostream& err);
int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace keysel::cli
