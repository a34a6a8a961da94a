#pragma once

// Property checks behind the acceptance binary and `omegared verify`. Every
// check draws its samples from std::mt19937 seeded with Options::seed, so two
// runs with the same options report the same cases and counterexamples.
//
// Oracle bounds. The configuration oracles for 1-counter and pushdown
// membership are sound at any cap: they answer only when a pumpable witness
// was found or the reachable configuration set closed below the cap. Caps 10
// (counter) and 8 (stack height) decide most instances with at most 4 states
// and lassos of total length 4, since a run that gains more than one level per
// state and lasso position in a segment is already pumpable. Undecided
// instances are counted, not compared.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "omegared/reductions.hpp"

namespace omegared::checks {

struct Options {
  std::uint64_t seed = 1;
  std::uint64_t budget = 1;  // multiplies every sample count
  bool mutant = false;       // test fixture: the union law runs against a union that drops its second operand
};

struct Property {
  std::string name;
  bool pass = true;
  std::uint64_t cases = 0;
  std::uint64_t decided = 0;   // oracle checks: cases the oracle answered
  std::string counterexample;  // first failing case
  std::string detail;

  // Counts a case; the description is rendered only for the first failure.
  void check(bool ok, const std::function<std::string()>& what);
};

// Built-in Turing machines over {a, b}:
//   accept_all  one-prime, every state accepting, always moves right
//   reject_all  one-prime, no accepting state
//   buchi_a     Buchi, accepting state entered on every a
//   loop        Buchi, bounces between cells 1 and 2
const TuringMachine& builtin_tm(const std::string& name);

// Full pipelines of built-in machines, built on first use.
class PipelineCache {
 public:
  const ReductionReport& get(const std::string& tm, std::uint64_t S, std::uint64_t K);
  void drop(const std::string& tm, std::uint64_t S, std::uint64_t K);

 private:
  std::map<std::tuple<std::string, std::uint64_t, std::uint64_t>, ReductionReport> cache_;
};

// Zero-guard constraint, real-time flag and counter masks, read off the
// transition list. Empty when fine, otherwise the first violation.
std::string counter_violation(const CounterAutomaton& m);

// Generators match the defining formulas letter for letter at S, K in {2, 3}.
std::vector<Property> coding_exactness(const Options& o);
// Default constants: first blocks via big-integer positions.
std::vector<Property> coding_exactness_default(const Options& o);
// First divergence sits at the predicted emission position; prefixes are
// consistent.
std::vector<Property> coding_divergence(const Options& o);
// Decision procedures against the brute-force oracles.
std::vector<Property> oracle_equivalence(const Options& o);
// Emptiness witnesses are members.
std::vector<Property> witness_soundness(const Options& o);
// The accept-all pipeline output accepts every sampled lasso (pair).
std::vector<Property> stage_contracts(const Options& o, PipelineCache& cache, std::uint64_t S, std::uint64_t K);
// Complement machines against is_image_prefix and phi_K formatting.
std::vector<Property> complement_patterns(const Options& o);
// Two-tape pipeline outputs accept every pair whose right word is not alpha.
std::vector<Property> r2_totality(const Options& o, PipelineCache& cache);
// Union, interleave and universal machine membership laws.
std::vector<Property> algebraic_laws(const Options& o);
// Well-formed stage outputs; distinct inputs give distinct outputs.
std::vector<Property> validation(const Options& o, PipelineCache& cache);
// Rejection is stable in the horizon; oscillation screening on crafted TMs.
std::vector<Property> monotonicity(const Options& o);

// "codings", "semantics" or "reductions". Throws Error on other names.
std::vector<Property> run_suite(const std::string& suite, const Options& o);
const std::vector<std::string>& suite_names();

}  // namespace omegared::checks
