#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "rustforge/geometry.hpp"
#include "rustforge/metrics.hpp"
#include "rustforge/quality.hpp"
#include "rustforge/render.hpp"
#include "rustforge/stylize.hpp"
#include "rustforge/texture.hpp"

using namespace rustforge;

static void BM_Fbm(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbm(x, x * 0.7, 42, 5, 2.0, 0.5));
    x += 0.013;
  }
}
BENCHMARK(BM_Fbm);

static void BM_RustTexture(benchmark::State& state) {
  const int n = int(state.range(0));
  const TextureImage base = make_builtin_base_texture(n, n);
  const RustParams params = RustParams::defaults_for(RustClass::RustStreaks);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(generate_rust_texture(base, RustClass::RustStreaks, seed++, params));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_RustTexture)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_QualityGate(benchmark::State& state) {
  const TextureImage base = make_builtin_base_texture(512, 512);
  const TextureImage tex =
      generate_rust_texture(base, RustClass::CompleteRust, 7, RustParams::defaults_for(RustClass::CompleteRust));
  for (auto _ : state) benchmark::DoNotOptimize(accept_texture(tex, RustClass::CompleteRust));
}
BENCHMARK(BM_QualityGate)->Unit(benchmark::kMillisecond);

static void BM_Stylize(benchmark::State& state) {
  const TextureImage base = make_builtin_base_texture(512, 512);
  const TextureImage rust =
      generate_rust_texture(base, RustClass::CompleteRust, 7, RustParams::defaults_for(RustClass::CompleteRust));
  for (auto _ : state) benchmark::DoNotOptimize(stylize(base, rust));
}
BENCHMARK(BM_Stylize)->Unit(benchmark::kMillisecond);

static void BM_RenderCylinder(benchmark::State& state) {
  SceneObject obj;
  obj.mesh = std::make_shared<const Mesh>(make_cylinder(1.0, 2.0, int(state.range(0))));
  obj.texture = std::make_shared<const TextureImage>(make_builtin_base_texture(512, 512));
  obj.id = 1;
  Camera cam;
  cam.position = {3.0, 2.0, 4.0};
  for (auto _ : state) benchmark::DoNotOptimize(render({&obj, 1}, cam, DirectionalLight{}, Resolution{640, 480}));
}
BENCHMARK(BM_RenderCylinder)->Arg(32)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Evaluate(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 0.9), jitter(-0.05, 0.05), conf(0.0, 1.0);
  std::uniform_int_distribution<int> cls(0, 2);
  std::vector<GtBox> gts;
  std::vector<Detection> dets;
  for (int i = 0; i < int(state.range(0)); ++i) {
    const std::string id = "img" + std::to_string(i);
    const NormBox b{u(rng), u(rng), 0.2, 0.3};
    const int c = cls(rng);
    gts.push_back({id, c, b});
    dets.push_back({id, c, {b.cx + jitter(rng), b.cy + jitter(rng), b.w, b.h}, conf(rng)});
    dets.push_back({id, cls(rng), {u(rng), u(rng), 0.1, 0.1}, conf(rng)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(gts, dets));
}
BENCHMARK(BM_Evaluate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
