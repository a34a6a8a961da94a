#include <chrono>

#include "omegared/error.hpp"
#include "omegared/reductions.hpp"

namespace omegared {

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::H1: return "H1";
    case Stage::H2: return "H2";
    case Stage::H3: return "H3";
    case Stage::Hprime: return "Hprime";
    case Stage::Full: return "full";
  }
  return "?";
}

Stage parse_stage(const std::string& name) {
  if (name == "H1") return Stage::H1;
  if (name == "H2") return Stage::H2;
  if (name == "H3") return Stage::H3;
  if (name == "Hprime" || name == "H'") return Stage::Hprime;
  if (name == "full") return Stage::Full;
  throw Error("unknown pipeline stage '" + name + "' (expected H1, H2, H3, Hprime or full)");
}

namespace {

template <class F>
auto timed(StageStats& st, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  auto out = f();
  st.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  st.states = out.num_states();
  st.transitions = out.transitions().size();
  if constexpr (std::is_same_v<decltype(out), CounterAutomaton>) st.counters = out.counters();
  return out;
}

CounterAutomaton h1(ReductionReport& rep, const TuringMachine& m) {
  StageStats st{"H1", "Turing machine to Buchi 2-counter automaton (3-counter program, Goedel packing)"};
  auto out = timed(st, [&] { return tm_to_two_counter(m); });
  rep.stages.push_back(st);
  return out;
}

CounterAutomaton h2(ReductionReport& rep, const CounterAutomaton& b, std::uint64_t S) {
  StageStats st{"H2", "2-counter to real-time 8-counter on theta_S images, union theta_S complement"};
  auto out = timed(st, [&] { return two_counter_to_rt8(b, S); });
  rep.stages.push_back(st);
  const auto suggested = theta_default_S(b.alphabet());
  if (S < suggested) {
    rep.notes.push_back("H2: S=" + std::to_string(S) + " is below " + std::to_string(suggested) +
                        "; the simulation may fall behind on images, lasso behavior is unaffected");
  }
  return out;
}

CounterAutomaton h3(ReductionReport& rep, const CounterAutomaton& a, std::uint64_t K) {
  StageStats st{"H3", "real-time k-counter to real-time 1-counter by prime packing, union h_K/phi_K complements"};
  auto out = timed(st, [&] { return rt8_to_rt1(a, K); });
  rep.stages.push_back(st);
  const auto modulus = packing_modulus(a);
  if (modulus > K) {
    rep.notes.push_back("H3: packing modulus " + std::to_string(modulus) + " exceeds K=" + std::to_string(K) +
                        "; the simulation may fall behind on images, lasso behavior is unaffected");
  }
  return out;
}

TwoTapeAutomaton hp(ReductionReport& rep, const CounterAutomaton& c) {
  StageStats st{"Hprime", "real-time 1-counter to 2-tape automaton (counter as head lag), union format detectors"};
  auto out = timed(st, [&] { return one_counter_to_two_tape(c); });
  rep.stages.push_back(st);
  return out;
}

template <class T>
const T& expect(const MachineSpec& m, const char* stage, const char* kind) {
  const T* p = std::get_if<T>(&m);
  if (!p) throw UnsupportedMachine(std::string(stage) + " expects a " + kind + ", got " + kind_name(m));
  return *p;
}

}  // namespace

ReductionReport full_pipeline(const TuringMachine& m, std::uint64_t S, std::uint64_t K) {
  ReductionReport rep;
  rep.stage = Stage::Full;
  rep.S = S;
  rep.K = K;
  auto b = h1(rep, m);
  auto a = h2(rep, b, S);
  auto c = h3(rep, a, K);
  rep.output = hp(rep, c);
  rep.one_counter = std::move(c);
  return rep;
}

ReductionReport run_stage(Stage stage, const MachineSpec& input, std::uint64_t S, std::uint64_t K) {
  ReductionReport rep;
  rep.stage = stage;
  rep.S = S;
  rep.K = K;
  switch (stage) {
    case Stage::H1:
      rep.output = h1(rep, expect<TuringMachine>(input, "H1", "turing machine"));
      break;
    case Stage::H2:
      rep.output = h2(rep, expect<CounterAutomaton>(input, "H2", "buchi-counter machine with k <= 2"), S);
      break;
    case Stage::H3:
      rep.output = h3(rep, expect<CounterAutomaton>(input, "H3", "real-time buchi-counter machine"), K);
      break;
    case Stage::Hprime:
      rep.output = hp(rep, expect<CounterAutomaton>(input, "Hprime", "real-time 1-counter machine"));
      break;
    case Stage::Full:
      return full_pipeline(expect<TuringMachine>(input, "full", "turing machine"), S, K);
  }
  return rep;
}

}  // namespace omegared
