#pragma once

#include <vector>

#include "graph.hpp"
#include "omegared/error.hpp"
#include "omegared/machines.hpp"

namespace omegared::detail {

// Letters of u.v as alphabet ids, with the phase successor function.
struct LassoTrack {
  LassoPhases phases;
  std::vector<LetterId> letters;

  LassoTrack(const LassoWord& w, const Alphabet& alphabet) {
    for (const auto* part : {&w.spoke(), &w.cycle()}) {
      for (const auto& s : *part) {
        auto id = alphabet.index_of(s);
        if (!id) throw AlphabetMismatch("lasso " + w.to_string() + " is not over " + alphabet.to_string());
        letters.push_back(static_cast<LetterId>(*id));
      }
    }
    phases.spoke = static_cast<std::uint32_t>(w.spoke().size());
    phases.total = static_cast<std::uint32_t>(letters.size());
  }

  // Reads `word` starting at phase i; returns the phase after it or -1 on mismatch.
  long long read(const LetterWord& word, std::uint32_t i) const {
    for (auto a : word) {
      if (letters[i] != a) return -1;
      i = phases.next(i);
    }
    return i;
  }
};

}  // namespace omegared::detail
