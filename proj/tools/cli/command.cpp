#include "cli/command.hpp"

#include <algorithm>
#include <sstream>

#include "CLI11.hpp"
#include "rustforge/texture.hpp"

namespace rustforge::cli {

namespace {

const CLI::Validator kRustClassName(
    [](std::string& value) -> std::string {
      if (class_from_name(value)) return {};
      return "unknown class '" + value + "' (expected default, rust streaks or complete rust)";
    },
    "CLASS", "RustClass");

}  // namespace

ParseResult parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Synthetic rusted-object dataset generator", "rustforge"};
  app.require_subcommand(1);

  ForgeCommand forge;
  auto* forge_cmd = app.add_subcommand("forge", "Generate a full annotated dataset from a config");
  forge_cmd->add_option("--config", forge.config, "forge.json config file")->required();
  forge_cmd->add_option("--out", forge.out, "Output directory (overrides config)");
  forge_cmd->add_option("--seed", forge.seed, "Seed (overrides config)");
  forge_cmd->add_option("--threads", forge.threads, "Worker threads (overrides config)")->check(CLI::PositiveNumber);

  auto* textures_cmd = app.add_subcommand("textures", "Generate or filter rust textures");
  textures_cmd->require_subcommand(1);

  TexturesGenCommand gen;
  auto* gen_cmd = textures_cmd->add_subcommand("gen", "Generate procedural rust textures");
  gen_cmd->add_option("--class", gen.class_name, "Rust class")->required()->check(kRustClassName);
  gen_cmd->add_option("--base", gen.base, "Base texture PNG or builtin:metal")->required();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--count", gen.count, "Number of textures")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Seed")->required();

  TexturesFilterCommand filter;
  auto* filter_cmd = textures_cmd->add_subcommand("filter", "Score and filter a directory of textures");
  filter_cmd->add_option("--in", filter.in, "Texture directory")->required();
  filter_cmd->add_option("--class", filter.class_name, "Rust class")->required()->check(kRustClassName);
  filter_cmd->add_option("--report", filter.report, "Write a JSON report here");

  StylizeCommand sty;
  auto* sty_cmd = app.add_subcommand("stylize", "Transfer a rust texture's statistics onto a base texture");
  sty_cmd->add_option("--content", sty.content, "Content (base) texture")->required();
  sty_cmd->add_option("--style", sty.style, "Style (rust) texture")->required();
  sty_cmd->add_option("--out", sty.out, "Output PNG")->required();
  sty_cmd->add_option("--strength", sty.strength, "Blend strength in [0, 1]")->check(CLI::Range(0.0, 1.0));
  sty_cmd->add_option("--detail", sty.detail, "Detail weight >= 0")->check(CLI::NonNegativeNumber);

  RenderCommand ren;
  auto* ren_cmd = app.add_subcommand("render", "Render a single dataset frame for debugging");
  ren_cmd->add_option("--config", ren.config, "forge.json config file")->required();
  ren_cmd->add_option("--index", ren.index, "Slot index")->required();
  ren_cmd->add_option("--class", ren.class_name, "Rust class")->required()->check(kRustClassName);
  ren_cmd->add_option("--out", ren.out, "Output PNG")->required();

  EvalCommand ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate detections against a generated dataset");
  eval_cmd->add_option("--dataset", ev.dataset, "Dataset root")->required();
  eval_cmd->add_option("--preds", ev.preds, "Predictions file")->required();
  eval_cmd->add_option("--iou", ev.iou, "IoU threshold")->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--report", ev.report, "report.json path (default: <dataset>/report.json)");

  ParseResult result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    const bool help = e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success);
    result.exit_code = help ? kSuccess : kUsageError;
    result.out_text = out.str();
    result.err_text = err.str();
    if (!help && result.err_text.find("--help") == std::string::npos) {
      result.err_text += "Run with --help for usage.\n";
    }
    return result;
  }

  if (forge_cmd->parsed()) {
    result.command = forge;
  } else if (gen_cmd->parsed()) {
    result.command = gen;
  } else if (filter_cmd->parsed()) {
    result.command = filter;
  } else if (sty_cmd->parsed()) {
    result.command = sty;
  } else if (ren_cmd->parsed()) {
    result.command = ren;
  } else if (eval_cmd->parsed()) {
    result.command = ev;
  }
  return result;
}

}  // namespace rustforge::cli
