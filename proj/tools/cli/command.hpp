#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rustforge::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsageError = 2 };

struct ForgeCommand {
  fs::path config;
  std::optional<fs::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool operator==(const ForgeCommand&) const = default;
};

struct TexturesGenCommand {
  std::string class_name;
  std::string base;
  fs::path out;
  int count = 1;
  std::uint64_t seed = 0;
  bool operator==(const TexturesGenCommand&) const = default;
};

struct TexturesFilterCommand {
  fs::path in;
  std::string class_name;
  std::optional<fs::path> report;
  bool operator==(const TexturesFilterCommand&) const = default;
};

struct StylizeCommand {
  fs::path content;
  fs::path style;
  fs::path out;
  std::optional<double> strength;
  std::optional<double> detail;
  bool operator==(const StylizeCommand&) const = default;
};

struct RenderCommand {
  fs::path config;
  std::uint64_t index = 0;
  std::string class_name;
  fs::path out;
  bool operator==(const RenderCommand&) const = default;
};

struct EvalCommand {
  fs::path dataset;
  fs::path preds;
  double iou = 0.5;
  std::optional<fs::path> report;
  bool operator==(const EvalCommand&) const = default;
};

using Command = std::variant<ForgeCommand, TexturesGenCommand, TexturesFilterCommand, StylizeCommand,
                             RenderCommand, EvalCommand>;

/// Either a command to run, or an exit code with text to print (usage on
/// --help goes to stdout with code 0, usage errors to stderr with code 2).
struct ParseResult {
  std::optional<Command> command;
  int exit_code = kSuccess;
  std::string out_text;
  std::string err_text;
};

/// `args` excludes the program name.
ParseResult parse_args(const std::vector<std::string>& args);

/// Dispatches a parsed command. Progress lines go to `out` prefixed with
/// "[forge]"; machine-readable output follows a "---" line. Runtime errors
/// print one diagnostic line to `err` and return kRuntimeFailure.
int run(const Command& command, std::ostream& out, std::ostream& err);

/// parse_args + run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rustforge::cli
