#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "omegared/machines.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(OMEGARED_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline omegared::MachineSpec load(const std::string& name) { return omegared::parse_machine(read_file(data_path(name))); }

template <class T>
T load_as(const std::string& name) {
  return std::get<T>(load(name));
}

inline const char* const kCorpus[] = {"nfa_a.mach",       "nfa_ab.mach",    "anbn.mach",      "all_abc.mach",
                                      "empty.mach",       "two_counter.mach", "pda_balanced.mach", "identity.mach",
                                      "alternate.mach",   "stall.mach",     "tm_right.mach",  "tm_none.mach",
                                      "tm_loop.mach",     "tm_buchi_a.mach"};

}  // namespace testing
