#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "tits/group_input.hpp"
#include "tits/kernel.hpp"

using namespace tits;

namespace {

template <class E>
struct Fixture {
  FieldContext<E> ctx;
  std::vector<Matrix<E>> S;
  WHomomorphism<E> psi;
  EnumeratedGroup G;
};

template <class E>
const Fixture<E>& fixture(const std::string& file) {
  static std::map<std::string, std::unique_ptr<Fixture<E>>> cache;
  auto& slot = cache[file];
  if (!slot) {
    const auto in = parse_group_file(std::string(CORPUS_DIR) + "/" + file);
    auto ctx = std::get<FieldContext<E>>(build_field(in.field));
    auto S = build_generators(ctx, in);
    auto psi = build_whom(S);
    std::vector<FFMatrix> img;
    for (const auto& s : S) img.push_back(apply_whom(psi, s));
    auto G = EnumeratedGroup::enumerate(img);
    slot.reset(new Fixture<E>{std::move(ctx), std::move(S), std::move(psi), std::move(G)});
  }
  return *slot;
}

template <class E>
void stream(benchmark::State& state, const std::string& file, bool parallel) {
  const auto& f = fixture<E>(file);
  std::size_t emitted = 0;
  for (auto _ : state) {
    KernelStream<E> ks(f.G, f.S, f.psi, parallel);
    emitted = ks.all().size();
    benchmark::DoNotOptimize(emitted);
  }
  state.counters["relators"] = static_cast<double>(Presentation(f.G).relator_count());
  state.counters["kernel"] = static_cast<double>(emitted);
}

template <class E>
void reference(benchmark::State& state, const std::string& file) {
  const auto& f = fixture<E>(file);
  for (auto _ : state) benchmark::DoNotOptimize(reference_normal_generators(f.G, f.S).size());
}

void stream_q(benchmark::State& s, const char* file, bool parallel) { stream<Rational>(s, file, parallel); }
void stream_ffx(benchmark::State& s, const char* file, bool parallel) { stream<FFX>(s, file, parallel); }
void stream_qx(benchmark::State& s, const char* file, bool parallel) { stream<QX>(s, file, parallel); }
void reference_q(benchmark::State& s, const char* file) { reference<Rational>(s, file); }
void reference_ffx(benchmark::State& s, const char* file) { reference<FFX>(s, file); }

}  // namespace

BENCHMARK_CAPTURE(stream_q, sl3z_serial, "sl3z.json", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(stream_q, sl3z_parallel, "sl3z.json", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(reference_q, sl3z_reference, "sl3z.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(stream_ffx, triangular_gf19_serial, "triangular_gf19.json", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(stream_ffx, triangular_gf19_parallel, "triangular_gf19.json", true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(reference_ffx, triangular_gf19_reference, "triangular_gf19.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(stream_qx, monomial_serial, "monomial.json", false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(stream_qx, monomial_parallel, "monomial.json", true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
