#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cli {

using json = nlohmann::json;

struct Diagnostic {
  std::string severity;  // error | warning | note
  std::string message;
  int line = 0, column = 0;  // 0 when there is no source position
};

struct Report {
  std::string command;
  bool ok = true;
  json payload = json::object();
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> text;  // human rendering
  int exit_code = 0;

  std::string to_json() const;
  std::string to_human() const;
};

/// Reads FILE ("-" for stdin). Throws std::runtime_error if unreadable.
std::string read_input(const std::string& path);

Report cmd_parse(const std::string& path);
Report cmd_check(const std::string& path);

struct ReduceOptions {
  std::optional<std::size_t> steps;
  bool all = false;
  std::size_t budget = 0;
};
Report cmd_reduce(const std::string& path, const ReduceOptions& opts);
Report cmd_errors(const std::string& path, bool all, std::size_t budget);
Report cmd_lts(const std::string& path, const std::optional<std::vector<std::string>>& universe);

struct HarmonyOptions {
  std::optional<std::string> path;  // file or directory of *.fa
  std::size_t random = 0;
  std::size_t size = 12;
  std::uint64_t seed = 1;
};
Report cmd_harmony(const HarmonyOptions& opts);

struct StepOptions {
  std::optional<std::string> transcript;
};
/// Interactive session on stdin/stdout. Returns the closing report.
Report cmd_step(const std::string& path, const StepOptions& opts, bool json_mode);

}  // namespace cli
