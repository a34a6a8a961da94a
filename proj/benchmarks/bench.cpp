// Micro-benchmarks for codings, decision procedures and reduction stages.
//
//   omegared_bench --benchmark_filter=Coding

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "omegared/codings.hpp"
#include "omegared/reductions.hpp"
#include "omegared/semantics.hpp"

using namespace omegared;

namespace {

MachineSpec data(const char* name) {
  std::ifstream in(std::string(OMEGARED_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

const LassoWord kX = LassoWord::parse("ab;ba");

void BM_CodingPrefix(benchmark::State& st) {
  const Coding c = st.range(0) == 0 ? Coding::theta(2) : st.range(0) == 1 ? Coding::hk(2) : Coding::h();
  const auto n = static_cast<std::size_t>(st.range(1));
  const Stream x = lasso_stream(kX, c.input);
  for (auto _ : st) benchmark::DoNotOptimize(encode(c, x)->prefix(n));
  st.SetItemsProcessed(st.iterations() * st.range(1));
  st.SetLabel(c.name());
}
BENCHMARK(BM_CodingPrefix)->ArgsProduct({{0, 1, 2}, {1000, 100000}});

// Letters deep inside the default-constant codings, located by block arithmetic.
void BM_CodedLetterDeep(benchmark::State& st) {
  const Coding c = st.range(0) == 0 ? Coding::theta(THETA_S_DEFAULT) : Coding::hk_phik(HK_K_DEFAULT);
  const Stream x = lasso_stream(kX, c.input);
  const BigInt pos = emission_position(c, static_cast<std::uint64_t>(st.range(1))) - 1;
  for (auto _ : st) benchmark::DoNotOptimize(coded_letter(c, x, pos));
  st.SetLabel(c.name() + ", block " + std::to_string(st.range(1)));
}
BENCHMARK(BM_CodedLetterDeep)->ArgsProduct({{0, 1}, {3, 20}});

void BM_LassoMemberNfa(benchmark::State& st) {
  const auto m = std::get<BuchiNfa>(data("nfa_ab.mach"));
  const auto w = LassoWord::parse("abab;ab");
  for (auto _ : st) benchmark::DoNotOptimize(lasso_member_nfa(m, w));
}
BENCHMARK(BM_LassoMemberNfa);

void BM_LassoMemberCounter(benchmark::State& st) {
  const auto m = std::get<CounterAutomaton>(data("anbn.mach"));
  Word spoke(static_cast<std::size_t>(st.range(0)), "a");
  spoke.insert(spoke.end(), static_cast<std::size_t>(st.range(0)), "b");
  const LassoWord w(spoke, {"c"});
  for (auto _ : st) benchmark::DoNotOptimize(lasso_member_pushdown(m, w));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_LassoMemberCounter)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_EmptinessPda(benchmark::State& st) {
  const auto m = std::get<PushdownAutomaton>(data("pda_balanced.mach"));
  for (auto _ : st) benchmark::DoNotOptimize(empty_buchi_pushdown(m));
}
BENCHMARK(BM_EmptinessPda);

void BM_TwoTapeMember(benchmark::State& st) {
  const auto m = std::get<TwoTapeAutomaton>(data("identity.mach"));
  const auto w = LassoWord::parse("abba;ab");
  for (auto _ : st) benchmark::DoNotOptimize(lasso_pair_member_two_tape(m, w, w));
}
BENCHMARK(BM_TwoTapeMember);

void BM_Stage(benchmark::State& st) {
  const auto tm = std::get<TuringMachine>(data("tm_buchi_a.mach"));
  const auto two = tm_to_two_counter(tm);
  const auto eight = two_counter_to_rt8(two, 2);
  const auto one = rt8_to_rt1(eight, 2);
  for (auto _ : st) {
    switch (st.range(0)) {
      case 1: benchmark::DoNotOptimize(tm_to_two_counter(tm)); break;
      case 2: benchmark::DoNotOptimize(two_counter_to_rt8(two, 2)); break;
      case 3: benchmark::DoNotOptimize(rt8_to_rt1(eight, 2)); break;
      default: benchmark::DoNotOptimize(one_counter_to_two_tape(one)); break;
    }
  }
  static const char* names[] = {"H'", "H1", "H2", "H3"};
  st.SetLabel(names[st.range(0)]);
}
BENCHMARK(BM_Stage)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_SimulateH2(benchmark::State& st) {
  const auto eight = two_counter_to_rt8(std::get<CounterAutomaton>(data("two_counter.mach")), 2);
  const Stream x = encode(Coding::theta(2), lasso_stream(LassoWord::parse(";ab"), Alphabet::sigma()));
  const auto horizon = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(simulate_bounded(eight, x, horizon));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_SimulateH2)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
