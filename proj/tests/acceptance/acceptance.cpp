// Acceptance run: one PASS/FAIL line per criterion on stdout, details of
// failures on stderr. A criterion passes when every property holds and its
// wall time stays under the pinned limit. Exit code 0 iff all pass.
//
//   acceptance            all criteria
//   acceptance 3 5        only criteria 3 and 5

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "checks.hpp"
#include "omegared/codings.hpp"

using namespace omegared;
using checks::Property;

namespace {

struct Part {
  std::string label;
  double limit_s;
  std::function<std::vector<Property>()> run;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Part> parts;
};

// All pinned runs use seed 1 and budget 1.
const checks::Options kPinned{};

bool run_criterion(const Criterion& c) {
  bool pass = true;
  std::string timing;
  std::uint64_t cases = 0, properties = 0;
  std::vector<std::string> notes;
  for (const auto& part : c.parts) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto props = part.run();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s%.1f s (limit %.0f s)", part.label.empty() ? "" : (part.label + " ").c_str(), s,
                  part.limit_s);
    timing += (timing.empty() ? "" : ", ") + std::string(buf);
    if (s > part.limit_s) {
      pass = false;
      notes.push_back("over time limit: " + std::string(buf));
    }
    for (const auto& p : props) {
      ++properties;
      cases += p.cases;
      if (!p.detail.empty()) notes.push_back(p.name + ": " + p.detail);
      if (!p.pass) {
        pass = false;
        std::cerr << "C" << c.id << " FAILED " << p.name << "\n  " << p.counterexample << "\n";
      }
    }
  }
  std::cout << (pass ? "PASS" : "FAIL") << "  C" << c.id << "  " << c.title << "  [exact; " << timing << "; "
            << properties << " properties, " << cases << " cases]" << std::endl;
  for (const auto& n : notes) std::cerr << "  C" << c.id << " " << n << "\n";
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  checks::PipelineCache cache;
  const std::vector<Criterion> criteria = {
      {1, "coding exactness (S, K in {2, 3} up to 10^4 letters; S=1728, K=9699690 first 3 blocks)",
       {{"", 5, [] {
           auto a = checks::coding_exactness(kPinned);
           auto b = checks::coding_exactness_default(kPinned);
           a.insert(a.end(), b.begin(), b.end());
           return a;
         }}}},
      {2, "coding injectivity and continuity (200 lasso pairs)", {{"", 10, [] { return checks::coding_divergence(kPinned); }}}},
      {3, "decision procedures agree with brute-force oracles", {{"", 120, [] { return checks::oracle_equivalence(kPinned); }}}},
      {4, "emptiness witnesses are members", {{"", 30, [] { return checks::witness_soundness(kPinned); }}}},
      {5, "stage contracts at lasso scale (50 lassos, 50 pairs)",
       {{"S=K=2", 120, [&] { return checks::stage_contracts(kPinned, cache, 2, 2); }},
        {"default constants", 600, [&] {
           auto r = checks::stage_contracts(kPinned, cache, THETA_S_DEFAULT, HK_K_DEFAULT);
           cache.drop("accept_all", THETA_S_DEFAULT, HK_K_DEFAULT);
           return r;
         }}}},
      {6, "complement patterns (500 lassos each)", {{"", 60, [] { return checks::complement_patterns(kPinned); }}}},
      {7, "R2 totality (100 pairs)", {{"", 30, [&] { return checks::r2_totality(kPinned, cache); }}}},
      {8, "algebraic laws", {{"", 30, [] { return checks::algebraic_laws(kPinned); }}}},
      {9, "validation invariants and injectivity", {{"", 10, [&] { return checks::validation(kPinned, cache); }}}},
      {10, "bounded-simulation monotonicity and oscillation screening",
       {{"", 30, [] { return checks::monotonicity(kPinned); }}}},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    all = run_criterion(c) && all;
  }
  return all ? 0 : 1;
}
