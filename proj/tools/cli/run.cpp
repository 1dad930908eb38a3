#include <fstream>
#include <ostream>
#include <string>

#include "cli/command.hpp"
#include "json.hpp"
#include "rustforge/config.hpp"
#include "rustforge/dataset_eval.hpp"
#include "rustforge/errors.hpp"
#include "rustforge/metrics.hpp"
#include "rustforge/pipeline.hpp"
#include "rustforge/png_io.hpp"
#include "rustforge/quality.hpp"
#include "rustforge/rng.hpp"
#include "rustforge/stylize.hpp"
#include "rustforge/texture.hpp"

namespace rustforge::cli {

namespace {

RustClass parse_class(const std::string& name) {
  const auto cls = class_from_name(name);
  if (!cls) throw ArgumentError("unknown class '" + name + "'");
  return *cls;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

TextureImage load_texture_arg(const std::string& arg) {
  if (arg == "builtin:metal") return make_builtin_base_texture();
  return read_png(arg);
}

int run_forge(const ForgeCommand& cmd, std::ostream& out) {
  ForgeConfig config = load_config(cmd.config);
  if (cmd.out) config.output_directory = *cmd.out;
  if (cmd.seed) config.seed = *cmd.seed;
  if (cmd.threads) config.threads = *cmd.threads;
  const Manifest manifest =
      generate_dataset(config, [&out](std::string_view msg) { out << "[forge] " << msg << '\n'; });
  out << "[forge] done: " << manifest.entries.size() << " images\n";
  return kSuccess;
}

int run_textures_gen(const TexturesGenCommand& cmd, std::ostream& out) {
  const RustClass cls = parse_class(cmd.class_name);
  const TextureImage base = load_texture_arg(cmd.base);
  std::error_code ec;
  fs::create_directories(cmd.out, ec);
  if (ec) throw IoError("cannot create '" + cmd.out.string() + "': " + ec.message());
  const RustParams params = RustParams::defaults_for(cls);
  for (int i = 0; i < cmd.count; ++i) {
    const std::uint64_t seed = derive_rng(cmd.seed, "textures-gen", std::uint64_t(i)).next();
    char name[64];
    std::snprintf(name, sizeof name, "%s_%04d.png", std::string(class_slug(cls)).c_str(), i);
    write_png(cmd.out / name, generate_rust_texture(base, cls, seed, params));
    out << "[forge] wrote " << (cmd.out / name).string() << '\n';
  }
  return kSuccess;
}

int run_textures_filter(const TexturesFilterCommand& cmd, std::ostream& out) {
  using nlohmann::json;
  const RustClass cls = parse_class(cmd.class_name);
  const ImportResult imported = import_textures(cmd.in, cls);

  json entries = json::array();
  std::size_t rejected = 0;
  std::string table;
  for (const ImportedTexture& t : imported.textures) {
    const Verdict v = accept_texture(t.image, cls);
    json reasons = json::array();
    std::string reason_text;
    for (RejectReason r : v.reasons) {
      reasons.push_back(std::string(reason_name(r)));
      reason_text += (reason_text.empty() ? "" : ",") + std::string(reason_name(r));
    }
    rejected += v.accepted ? 0 : 1;
    entries.push_back({{"file", t.provenance.file_name},
                       {"accepted", v.accepted},
                       {"coverage", v.coverage},
                       {"clutter", v.clutter},
                       {"reasons", reasons}});
    char line[256];
    std::snprintf(line, sizeof line, "%s %s coverage=%.4f clutter=%.4f %s\n", t.provenance.file_name.c_str(),
                  v.accepted ? "accepted" : "rejected", v.coverage, v.clutter, reason_text.c_str());
    table += line;
  }
  json failures = json::array();
  for (const ImportFailure& f : imported.failures) {
    failures.push_back({{"file", f.file_name}, {"error", f.message}});
  }
  const json report = {{"class", std::string(class_name(cls))},
                       {"textures", entries},
                       {"accepted", imported.textures.size() - rejected},
                       {"rejected", rejected},
                       {"unreadable", failures}};
  if (cmd.report) write_text(*cmd.report, report.dump(2) + "\n");

  out << "[forge] " << imported.textures.size() << " textures, " << (imported.textures.size() - rejected)
      << " accepted, " << rejected << " rejections, " << imported.failures.size() << " unreadable\n";
  out << "---\n" << table;
  for (const ImportFailure& f : imported.failures) out << f.file_name << " unreadable " << f.message << '\n';
  return kSuccess;
}

int run_stylize(const StylizeCommand& cmd, std::ostream& out) {
  StylizeParams params;
  if (cmd.strength) params.strength = *cmd.strength;
  if (cmd.detail) params.detail_weight = *cmd.detail;
  write_png(cmd.out, stylize(read_png(cmd.content), read_png(cmd.style), params));
  out << "[forge] wrote " << cmd.out.string() << '\n';
  return kSuccess;
}

int run_render(const RenderCommand& cmd, std::ostream& out) {
  const ForgeContext context(load_config(cmd.config));
  const RenderedSlot slot = render_slot(context, parse_class(cmd.class_name), cmd.index);
  write_png(cmd.out, slot.frame.color);
  out << "[forge] wrote " << cmd.out.string() << '\n';
  return kSuccess;
}

int run_eval(const EvalCommand& cmd, std::ostream& out) {
  if (!(cmd.iou > 0.0 && cmd.iou <= 1.0)) throw ArgumentError("--iou must lie in (0, 1]");
  const std::vector<GtBox> gts = load_ground_truth(cmd.dataset);
  const std::vector<Detection> dets = read_predictions(cmd.preds);
  const MetricsReport report = evaluate(gts, dets, report_class_names(), cmd.iou);
  const fs::path report_path = cmd.report ? *cmd.report : cmd.dataset / "report.json";
  write_text(report_path, report_to_json(report) + "\n");
  out << "[forge] evaluated " << dets.size() << " detections against " << gts.size() << " ground-truth boxes\n";
  if (report.unknown_class_detections > 0) {
    out << "[forge] ignored " << report.unknown_class_detections << " detections with unknown class ids\n";
  }
  out << "[forge] wrote " << report_path.string() << '\n';
  out << "---\n" << format_report_table(report);
  return kSuccess;
}

}  // namespace

int run(const Command& command, std::ostream& out, std::ostream& err) {
  try {
    return std::visit(
        [&out](const auto& cmd) -> int {
          using T = std::decay_t<decltype(cmd)>;
          if constexpr (std::is_same_v<T, ForgeCommand>) return run_forge(cmd, out);
          if constexpr (std::is_same_v<T, TexturesGenCommand>) return run_textures_gen(cmd, out);
          if constexpr (std::is_same_v<T, TexturesFilterCommand>) return run_textures_filter(cmd, out);
          if constexpr (std::is_same_v<T, StylizeCommand>) return run_stylize(cmd, out);
          if constexpr (std::is_same_v<T, RenderCommand>) return run_render(cmd, out);
          if constexpr (std::is_same_v<T, EvalCommand>) return run_eval(cmd, out);
        },
        command);
  } catch (const std::exception& e) {
    out.flush();
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = parse_args(args);
  out << parsed.out_text;
  err << parsed.err_text;
  if (!parsed.command) return parsed.exit_code;
  return run(*parsed.command, out, err);
}

}  // namespace rustforge::cli
