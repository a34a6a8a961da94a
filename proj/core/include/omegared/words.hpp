#pragma once

// Alphabets, finite words, lasso words and prefix producers of omega-words.
// Positions are 1-based throughout: letter(1) is the first letter.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace omegared {

using Symbol = std::string;
using Word = std::vector<Symbol>;

class Alphabet {
 public:
  // Throws Error when the list is empty, holds an empty name, or repeats a name.
  explicit Alphabet(std::vector<Symbol> symbols);

  // {a, b}
  static Alphabet sigma();
  // {a, b, E}
  static Alphabet gamma();
  // {a, b, E, A, B, F, 0}
  static Alphabet omega();
  // omega() plus C
  static Alphabet omega_prime();

  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::optional<std::size_t> index_of(std::string_view symbol) const;
  bool contains(std::string_view symbol) const { return index_of(symbol).has_value(); }

  // Appends the given symbols, which must be new.
  Alphabet extended(const std::vector<Symbol>& extra) const;
  bool contains_all(const Word& w) const;

  // Reference to the alphabet-owned copy of a symbol; throws if absent.
  const Symbol& canonical(std::string_view symbol) const;

  std::string to_string() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Ultimately periodic word spoke . cycle^omega, stored in canonical form:
// the cycle is primitive and the spoke does not end with the cycle's last letter.
class LassoWord {
 public:
  LassoWord(Word spoke, Word cycle);

  const Word& spoke() const { return spoke_; }
  const Word& cycle() const { return cycle_; }

  const Symbol& letter(std::uint64_t n) const;
  Word prefix(std::size_t n) const;

  // "u;v" with symbols separated by single spaces.
  std::string to_string() const;

  // Parses "u;v". Sides containing whitespace are split on whitespace; otherwise
  // every character is one symbol, unless the whole side is a symbol of `context`.
  static LassoWord parse(std::string_view text, const Alphabet* context = nullptr);

  bool over(const Alphabet& alphabet) const;

  friend bool operator==(const LassoWord& a, const LassoWord& b) {
    return a.spoke_ == b.spoke_ && a.cycle_ == b.cycle_;
  }

 private:
  Word spoke_;
  Word cycle_;
};

const Symbol& lasso_letter(const LassoWord& w, std::uint64_t n);

// Word syntax shared with the lasso parser.
Word parse_word(std::string_view text, const Alphabet* context = nullptr);
std::string format_word(const Word& w);

// Ceiling on materialized prefixes. Defaults to 10^7 letters and can be
// overridden with the OMEGARED_MAX_PREFIX environment variable.
std::size_t prefix_ceiling();

// Deterministic, prefix-consistent producer of an omega-word over alphabet().
class PrefixSource {
 public:
  explicit PrefixSource(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  virtual ~PrefixSource() = default;

  const Alphabet& alphabet() const { return alphabet_; }

  // Letter at 1-based position n; the reference stays valid while the source lives.
  virtual const Symbol& letter(std::uint64_t n) const = 0;

  // First n letters. Throws PrefixLimitExceeded above prefix_ceiling().
  Word prefix(std::size_t n) const;

  // Set when the produced word is known to be ultimately periodic.
  virtual std::optional<LassoWord> lasso() const { return std::nullopt; }

 private:
  Alphabet alphabet_;
};

using Stream = std::shared_ptr<const PrefixSource>;

// Throws AlphabetMismatch if w uses symbols outside the alphabet.
Stream lasso_stream(const LassoWord& w, const Alphabet& alphabet);

// Letter n of a stream over an explicit function; used for ad-hoc test words.
Stream function_stream(const Alphabet& alphabet, std::function<std::size_t(std::uint64_t)> letter_index);

Stream concat(const Word& u, const Stream& w);
LassoWord concat(const Word& u, const LassoWord& w);

// (x (*) y)(2n-1) = x(n), (x (*) y)(2n) = y(n).
Stream interleave(const Stream& x, const Stream& y);
LassoWord interleave(const LassoWord& x, const LassoWord& y);

// Cantor pairing on positive integers: b(i,j) = (i+j-1)(i+j-2)/2 + j.
std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j);

// sigma_i(1) ... sigma_i(count) where sigma_i(j) = sigma(b(i, j)).
Word row_decompose(const PrefixSource& sigma, std::uint64_t i, std::size_t count);

}  // namespace omegared
