// omegared: command-line front end. Every command prints one JSON object on a
// single line and exits 0 (true/pass), 1 (false), 2 (unknown) or 3 (error).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "checks.hpp"
#include "omegared/codings.hpp"
#include "omegared/error.hpp"
#include "omegared/machines.hpp"
#include "omegared/reductions.hpp"
#include "omegared/semantics.hpp"

#ifndef OMEGARED_VERSION
#define OMEGARED_VERSION "0.0.0"
#endif

using namespace omegared;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kUnknown = 2, kError = 3 };

struct Report {
  Json j;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Report(const std::string& command) {
    j["command"] = command;
    j["inputs"] = Json::object();
  }

  int emit(int code) {
    j["exit_code"] = code;
    j["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    j["version"] = OMEGARED_VERSION;
    std::cout << j.dump() << std::endl;
    return code;
  }

  int fail(const std::string& message) {
    std::cerr << "omegared " << j["command"].get<std::string>() << ": " << message << "\n";
    j["error"] = message;
    return emit(kError);
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MachineSpec load(const std::string& path) { return parse_machine(read_file(path)); }

Json alphabet_json(const Alphabet& a) { return Json(a.symbols()); }

Json describe(const MachineSpec& m) {
  Json d;
  d["kind"] = kind_name(m);
  d["states"] = num_states(m);
  d["transitions"] = num_transitions(m);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TwoTapeAutomaton>) {
          d["alphabet1"] = alphabet_json(x.alphabet1());
          d["alphabet2"] = alphabet_json(x.alphabet2());
        } else if constexpr (std::is_same_v<T, TuringMachine>) {
          d["input"] = alphabet_json(x.input());
          d["tape"] = alphabet_json(x.tape());
          d["mode"] = x.mode() == TmAcceptance::Buchi ? "buchi" : "one-prime";
        } else {
          d["alphabet"] = alphabet_json(x.alphabet());
        }
        if constexpr (std::is_same_v<T, CounterAutomaton>) {
          d["counters"] = x.counters();
          d["realtime"] = x.realtime();
        }
        if constexpr (std::is_same_v<T, BuchiNfa> || std::is_same_v<T, CounterAutomaton> ||
                      std::is_same_v<T, TwoTapeAutomaton>) {
          d["deterministic"] = is_deterministic(m);
        }
      },
      m);
  return d;
}

// Alphabet of the (first) input tape.
const Alphabet& input_alphabet(const MachineSpec& m) {
  return std::visit(
      [](const auto& v) -> const Alphabet& {
        if constexpr (requires { v.alphabet(); }) {
          return v.alphabet();
        } else if constexpr (requires { v.input(); }) {
          return v.input();
        } else {
          return v.alphabet1();
        }
      },
      m);
}

LassoWord lasso_over(const std::string& text, const Alphabet& a, const std::string& what) {
  auto w = LassoWord::parse(text, &a);
  if (!w.over(a)) throw AlphabetMismatch(what + " '" + text + "' is not over " + a.to_string());
  return w;
}

// Options shared by several subcommands.
struct Args {
  std::string file;
  std::string pipeline;
  std::string out;
  std::uint64_t S = 0;
  std::uint64_t K = 0;
  std::string word, left, right;
  std::string coded, base;
  std::uint64_t horizon = 0;
  std::uint64_t counter_cap = Caps{}.counter_cap;
  std::uint64_t lambda_cap = Caps{}.lambda_cap;
  std::uint64_t branch_cap = Caps{}.branch_cap;
  std::string suite;
  std::uint64_t seed = 1;
  std::uint64_t budget = 1;
  bool mutant = false;
};

int cmd_parse(const Args& a) {
  Report r("parse");
  r.j["inputs"]["file"] = a.file;
  try {
    r.j["machine"] = describe(load(a.file));
    return r.emit(kTrue);
  } catch (const std::exception& e) {
    return r.fail(e.what());
  }
}

int cmd_compile(const Args& a) {
  Report r("compile");
  r.j["inputs"] = {{"file", a.file}, {"pipeline", a.pipeline}, {"output", a.out}};
  try {
    const Stage stage = parse_stage(a.pipeline);
    const auto input = load(a.file);
    std::uint64_t S = a.S, K = a.K ? a.K : HK_K_DEFAULT;
    if (!S) {
      const auto* tm = std::get_if<TuringMachine>(&input);
      const auto* cm = std::get_if<CounterAutomaton>(&input);
      S = theta_default_S(tm ? tm->input() : cm ? cm->alphabet() : Alphabet::sigma());
    }
    r.j["inputs"]["S"] = S;
    r.j["inputs"]["K"] = K;
    const auto rep = run_stage(stage, input, S, K);
    {
      std::ofstream out(a.out, std::ios::binary);
      if (!out) throw Error("cannot write " + a.out);
      write_machine(out, *rep.output);
      if (!out) throw Error("write failed for " + a.out);
    }
    r.j["artifact"] = a.out;
    Json stages = Json::array();
    for (const auto& st : rep.stages) {
      stages.push_back({{"stage", st.stage},
                        {"construction", st.construction},
                        {"states", st.states},
                        {"transitions", st.transitions},
                        {"counters", st.counters},
                        {"elapsed_ms", st.elapsed_ms}});
    }
    r.j["evidence"] = {{"stages", stages}, {"output", describe(*rep.output)}, {"notes", rep.notes}};
    return r.emit(kTrue);
  } catch (const std::exception& e) {
    return r.fail(e.what());
  }
}

int cmd_member(const Args& a) {
  Report r("member");
  r.j["inputs"]["file"] = a.file;
  try {
    const auto m = load(a.file);
    bool verdict = false;
    if (const auto* t = std::get_if<TwoTapeAutomaton>(&m)) {
      if (a.left.empty() || a.right.empty()) throw Error("two-tape machines need --left and --right");
      const auto w1 = lasso_over(a.left, t->alphabet1(), "left word");
      const auto w2 = lasso_over(a.right, t->alphabet2(), "right word");
      r.j["inputs"]["left"] = w1.to_string();
      r.j["inputs"]["right"] = w2.to_string();
      verdict = lasso_pair_member_two_tape(*t, w1, w2);
    } else {
      if (const auto* c = std::get_if<CounterAutomaton>(&m); c && c->counters() >= 2) {
        throw UnsupportedMachine("exact membership is not available for " + std::to_string(c->counters()) +
                                 "-counter machines; use `omegared simulate` for bounded evidence");
      }
      if (std::holds_alternative<TuringMachine>(m)) {
        throw UnsupportedMachine("exact membership is not available for Turing machines; use `omegared simulate`");
      }
      if (a.word.empty()) throw Error("--word is required");
      const Alphabet& alpha = input_alphabet(m);
      const auto w = lasso_over(a.word, alpha, "word");
      r.j["inputs"]["word"] = w.to_string();
      verdict = lasso_member(m, w);
    }
    r.j["verdict"] = verdict;
    return r.emit(verdict ? kTrue : kFalse);
  } catch (const std::exception& e) {
    return r.fail(e.what());
  }
}

int cmd_empty(const Args& a) {
  Report r("empty");
  r.j["inputs"]["file"] = a.file;
  try {
    const auto m = load(a.file);
    EmptinessResult e;
    if (const auto* n = std::get_if<BuchiNfa>(&m)) {
      e = empty_buchi_pushdown(nfa_to_counter(*n));
    } else if (const auto* c = std::get_if<CounterAutomaton>(&m)) {
      if (c->counters() >= 2) {
        throw UnsupportedMachine("emptiness is decided for at most one counter, got " +
                                 std::to_string(c->counters()));
      }
      e = empty_buchi_pushdown(*c);
    } else if (const auto* p = std::get_if<PushdownAutomaton>(&m)) {
      e = empty_buchi_pushdown(*p);
    } else {
      throw UnsupportedMachine("emptiness is decided for buchi-nfa, buchi-counter (k <= 1) and buchi-pda, got " +
                               kind_name(m));
    }
    r.j["verdict"] = e.empty ? "empty" : "non-empty";
    if (e.witness) r.j["witness"] = e.witness->to_string();
    r.j["evidence"] = {{"heads_explored", e.heads_explored}};
    return r.emit(e.empty ? kFalse : kTrue);
  } catch (const std::exception& e) {
    return r.fail(e.what());
  }
}

Coding coding_named(const std::string& name, std::uint64_t S, std::uint64_t K) {
  if (name == "theta") return Coding::theta(S);
  if (name == "hk") return Coding::hk(K);
  if (name == "phik") return Coding::phik(K);
  if (name == "hk_phik") return Coding::hk_phik(K);
  if (name == "h") return Coding::h();
  if (name == "alpha") return Coding::alpha();
  throw Error("unknown coding '" + name + "' (theta, hk, phik, hk_phik, h, alpha)");
}

int cmd_simulate(const Args& a) {
  Report r("simulate");
  r.j["inputs"]["file"] = a.file;
  try {
    if (a.horizon < 1) throw Error("--horizon must be at least 1");
    if (!a.counter_cap || !a.lambda_cap || !a.branch_cap) throw Error("caps must be positive");
    const Caps caps{a.counter_cap, a.lambda_cap, a.branch_cap};
    r.j["inputs"]["horizon"] = a.horizon;
    r.j["inputs"]["caps"] = {{"counter", caps.counter_cap}, {"lambda", caps.lambda_cap}, {"branch", caps.branch_cap}};
    const auto m = load(a.file);

    Stream x, second;
    if (!a.coded.empty()) {
      if (!a.word.empty()) throw Error("--word and --coded are exclusive");
      const std::uint64_t S = a.S ? a.S : THETA_S_DEFAULT, K = a.K ? a.K : HK_K_DEFAULT;
      const Coding c = coding_named(a.coded, S, K);
      r.j["inputs"]["coded"] = c.name();
      if (c.kind == CodingKind::Alpha) {
        x = encode(c, nullptr);
      } else {
        if (a.base.empty()) throw Error("--coded needs --base");
        const auto base = lasso_over(a.base, c.input, "base word");
        r.j["inputs"]["base"] = base.to_string();
        x = encode(c, lasso_stream(base, c.input));
      }
    } else if (const auto* t = std::get_if<TwoTapeAutomaton>(&m)) {
      if (a.left.empty() || a.right.empty()) throw Error("two-tape machines need --left and --right");
      const auto w1 = lasso_over(a.left, t->alphabet1(), "left word");
      const auto w2 = lasso_over(a.right, t->alphabet2(), "right word");
      r.j["inputs"]["left"] = w1.to_string();
      r.j["inputs"]["right"] = w2.to_string();
      x = lasso_stream(w1, t->alphabet1());
      second = lasso_stream(w2, t->alphabet2());
    } else {
      if (a.word.empty()) throw Error("--word or --coded is required");
      const Alphabet& alpha = input_alphabet(m);
      const auto w = lasso_over(a.word, alpha, "word");
      r.j["inputs"]["word"] = w.to_string();
      x = lasso_stream(w, alpha);
    }

    const auto* tm = std::get_if<TuringMachine>(&m);
    const auto res = tm ? tm_accepts_evidence(*tm, x, a.horizon, caps) : simulate_bounded(m, x, a.horizon, caps, second);
    const auto& s = res.summary;
    r.j["verdict"] = res.verdict.kind == VerdictKind::Rejected ? "Rejected" : "Unknown";
    Json ev = {{"horizon", s.horizon},
               {"horizon_reached", s.horizon_reached},
               {"letters_consumed", s.letters_consumed},
               {"accepting_visits", s.accepting_visits},
               {"alive_branches", s.alive_branches},
               {"counter_cap_hit", s.counter_cap_hit},
               {"lambda_cap_hit", s.lambda_cap_hit},
               {"branch_cap_hit", s.branch_cap_hit}};
    if (tm) {
      ev["max_head"] = s.max_head;
      ev["cell_visits"] = s.cell_visits;
      ev["oscillation_certificates"] = s.oscillation_certificates;
      ev["left_edge_deaths"] = s.left_edge_deaths;
      ev["left_accepting_set"] = s.left_accepting_set;
    }
    r.j["evidence"] = ev;
    return r.emit(res.verdict.kind == VerdictKind::Rejected ? kFalse : kUnknown);
  } catch (const std::exception& e) {
    return r.fail(e.what());
  }
}

int cmd_verify(const Args& a) {
  Report r("verify");
  r.j["inputs"] = {{"suite", a.suite}, {"seed", a.seed}, {"budget", a.budget}};
  if (a.mutant) r.j["inputs"]["mutant"] = true;
  try {
    if (a.budget < 1) throw Error("--budget must be at least 1");
    const auto props = checks::run_suite(a.suite, {a.seed, a.budget, a.mutant});
    Json list = Json::array();
    std::size_t failed = 0;
    for (const auto& p : props) {
      Json e = {{"name", p.name}, {"pass", p.pass}, {"cases", p.cases}};
      if (p.decided) e["decided"] = p.decided;
      if (!p.detail.empty()) e["detail"] = p.detail;
      if (!p.pass) {
        e["counterexample"] = p.counterexample;
        ++failed;
      }
      list.push_back(std::move(e));
    }
    r.j["verdict"] = failed ? "fail" : "pass";
    r.j["evidence"] = {{"properties", list}, {"passed", props.size() - failed}, {"failed", failed}};
    return r.emit(failed ? kFalse : kTrue);
  } catch (const std::exception& e) {
    return r.fail(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures, codings and reductions for omega-languages of counter machines"};
  app.set_version_flag("--version", OMEGARED_VERSION);
  app.require_subcommand(1);
  Args a;

  auto* parse = app.add_subcommand("parse", "Parse and validate a machine file");
  parse->add_option("file", a.file, "Machine file")->required();

  auto* compile = app.add_subcommand("compile", "Run a reduction stage and write its output machine");
  compile->add_option("--pipeline", a.pipeline, "H1, H2, H3, Hprime or full")->required();
  compile->add_option("file", a.file, "Input machine file")->required();
  compile->add_option("-o,--output", a.out, "Output machine file")->required();
  compile->add_option("--S", a.S, "theta_S parameter (default (3k)^3, k = |input| + 2)");
  compile->add_option("--K", a.K, "h_K / phi_K parameter (default 9699690)");

  auto* member = app.add_subcommand("member", "Exact lasso membership");
  member->add_option("file", a.file, "Machine file")->required();
  member->add_option("--word", a.word, "Lasso \"u;v\"");
  member->add_option("--left", a.left, "Tape-1 lasso (two-tape machines)");
  member->add_option("--right", a.right, "Tape-2 lasso (two-tape machines)");

  auto* empty = app.add_subcommand("empty", "Exact Buchi emptiness with a lasso witness");
  empty->add_option("file", a.file, "Machine file")->required();

  auto* simulate = app.add_subcommand("simulate", "Bounded simulation on a lasso or a coded word");
  simulate->add_option("file", a.file, "Machine file")->required();
  simulate->add_option("--word", a.word, "Lasso \"u;v\"");
  simulate->add_option("--left", a.left, "Tape-1 lasso (two-tape machines)");
  simulate->add_option("--right", a.right, "Tape-2 lasso (two-tape machines)");
  simulate->add_option("--coded", a.coded, "theta, hk, phik, hk_phik, h or alpha");
  simulate->add_option("--base", a.base, "Lasso fed to the coding");
  simulate->add_option("--S", a.S, "theta_S parameter (default 1728)");
  simulate->add_option("--K", a.K, "h_K / phi_K parameter (default 9699690)");
  simulate->add_option("--horizon", a.horizon, "Steps to simulate")->required();
  simulate->add_option("--counter-cap", a.counter_cap, "Largest counter value or stack height kept");
  simulate->add_option("--lambda-cap", a.lambda_cap, "Lambda moves explored per letter");
  simulate->add_option("--branch-cap", a.branch_cap, "Live configurations kept per step");

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", a.suite, "codings, semantics or reductions")->required();
  verify->add_option("--seed", a.seed, "Sampling seed");
  verify->add_option("--budget", a.budget, "Sample count multiplier");
  verify->add_flag("--mutant", a.mutant)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    return Report(subs.empty() ? "usage" : subs.front()->get_name()).fail(e.what());
  }

  if (*parse) return cmd_parse(a);
  if (*compile) return cmd_compile(a);
  if (*member) return cmd_member(a);
  if (*empty) return cmd_empty(a);
  if (*simulate) return cmd_simulate(a);
  return cmd_verify(a);
}
