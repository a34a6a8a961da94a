#include "omegared/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "omegared/error.hpp"

namespace omegared {

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error("alphabet must not be empty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw Error("alphabet symbols must be non-empty");
    if (!index_.emplace(symbols_[i], i).second) {
      throw Error("duplicate alphabet symbol '" + symbols_[i] + "'");
    }
  }
}

Alphabet Alphabet::sigma() { return Alphabet({"a", "b"}); }
Alphabet Alphabet::gamma() { return Alphabet({"a", "b", "E"}); }
Alphabet Alphabet::omega() { return Alphabet({"a", "b", "E", "A", "B", "F", "0"}); }
Alphabet Alphabet::omega_prime() { return omega().extended({"C"}); }

std::optional<std::size_t> Alphabet::index_of(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Alphabet Alphabet::extended(const std::vector<Symbol>& extra) const {
  auto all = symbols_;
  all.insert(all.end(), extra.begin(), extra.end());
  return Alphabet(std::move(all));
}

bool Alphabet::contains_all(const Word& w) const {
  return std::all_of(w.begin(), w.end(), [&](const Symbol& s) { return contains(s); });
}

const Symbol& Alphabet::canonical(std::string_view symbol) const {
  auto i = index_of(symbol);
  if (!i) throw AlphabetMismatch("symbol '" + std::string(symbol) + "' not in alphabet " + to_string());
  return symbols_[*i];
}

std::string Alphabet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += ",";
    out += symbols_[i];
  }
  return out + "}";
}

namespace {

// Smallest p dividing |w| such that w is a power of its length-p prefix.
std::size_t primitive_period(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return n;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits one UTF-8 encoded character off the front of s.
std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

}  // namespace

LassoWord::LassoWord(Word spoke, Word cycle) : spoke_(std::move(spoke)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw Error("lasso cycle must be non-empty");
  cycle_.resize(primitive_period(cycle_));
  while (!spoke_.empty() && spoke_.back() == cycle_.back()) {
    std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    spoke_.pop_back();
  }
}

const Symbol& LassoWord::letter(std::uint64_t n) const {
  if (n == 0) throw Error("positions are 1-based");
  if (n <= spoke_.size()) return spoke_[n - 1];
  return cycle_[(n - spoke_.size() - 1) % cycle_.size()];
}

Word LassoWord::prefix(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(letter(i));
  return out;
}

std::string LassoWord::to_string() const { return format_word(spoke_) + ";" + format_word(cycle_); }

LassoWord LassoWord::parse(std::string_view text, const Alphabet* context) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) throw Error("lasso syntax is 'u;v', got '" + std::string(text) + "'");
  if (text.find(';', semi + 1) != std::string_view::npos) throw Error("lasso has more than one ';'");
  Word spoke = parse_word(text.substr(0, semi), context);
  Word cycle = parse_word(text.substr(semi + 1), context);
  if (cycle.empty()) throw Error("lasso cycle must be non-empty in '" + std::string(text) + "'");
  if (context) {
    if (!context->contains_all(spoke) || !context->contains_all(cycle)) {
      throw AlphabetMismatch("lasso '" + std::string(text) + "' is not over " + context->to_string());
    }
  }
  return LassoWord(std::move(spoke), std::move(cycle));
}

bool LassoWord::over(const Alphabet& alphabet) const {
  return alphabet.contains_all(spoke_) && alphabet.contains_all(cycle_);
}

const Symbol& lasso_letter(const LassoWord& w, std::uint64_t n) { return w.letter(n); }

Word parse_word(std::string_view text, const Alphabet* context) {
  text = trim(text);
  Word out;
  if (text.empty()) return out;
  if (std::any_of(text.begin(), text.end(), is_space)) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_space(text[i])) ++i;
      std::size_t j = i;
      while (j < text.size() && !is_space(text[j])) ++j;
      if (j > i) out.emplace_back(text.substr(i, j - i));
      i = j;
    }
    return out;
  }
  if (context && context->contains(text)) {
    out.emplace_back(text);
    return out;
  }
  for (std::size_t i = 0; i < text.size();) {
    std::size_t len = std::min(utf8_length(static_cast<unsigned char>(text[i])), text.size() - i);
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

std::size_t prefix_ceiling() {
  static const std::size_t ceiling = [] {
    if (const char* env = std::getenv("OMEGARED_MAX_PREFIX")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(10'000'000);
  }();
  return ceiling;
}

Word PrefixSource::prefix(std::size_t n) const {
  if (n > prefix_ceiling()) {
    throw PrefixLimitExceeded("prefix of " + std::to_string(n) + " letters exceeds ceiling " +
                              std::to_string(prefix_ceiling()));
  }
  Word out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(letter(i));
  return out;
}

namespace {

class LassoSource final : public PrefixSource {
 public:
  LassoSource(const LassoWord& w, const Alphabet& alphabet) : PrefixSource(alphabet), word_(w) {
    for (const auto& s : w.spoke()) spoke_.push_back(&this->alphabet().canonical(s));
    for (const auto& s : w.cycle()) cycle_.push_back(&this->alphabet().canonical(s));
  }

  const Symbol& letter(std::uint64_t n) const override {
    if (n == 0) throw Error("positions are 1-based");
    if (n <= spoke_.size()) return *spoke_[n - 1];
    return *cycle_[(n - spoke_.size() - 1) % cycle_.size()];
  }

  std::optional<LassoWord> lasso() const override { return word_; }

 private:
  LassoWord word_;
  std::vector<const Symbol*> spoke_;
  std::vector<const Symbol*> cycle_;
};

class FunctionSource final : public PrefixSource {
 public:
  FunctionSource(const Alphabet& alphabet, std::function<std::size_t(std::uint64_t)> f)
      : PrefixSource(alphabet), f_(std::move(f)) {}

  const Symbol& letter(std::uint64_t n) const override {
    if (n == 0) throw Error("positions are 1-based");
    return alphabet()[f_(n)];
  }

 private:
  std::function<std::size_t(std::uint64_t)> f_;
};

class ConcatSource final : public PrefixSource {
 public:
  ConcatSource(const Word& u, Stream w) : PrefixSource(w->alphabet()), tail_(std::move(w)) {
    for (const auto& s : u) head_.push_back(&alphabet().canonical(s));
  }

  const Symbol& letter(std::uint64_t n) const override {
    if (n == 0) throw Error("positions are 1-based");
    if (n <= head_.size()) return *head_[n - 1];
    return tail_->letter(n - head_.size());
  }

 private:
  std::vector<const Symbol*> head_;
  Stream tail_;
};

class InterleaveSource final : public PrefixSource {
 public:
  InterleaveSource(Stream x, Stream y) : PrefixSource(x->alphabet()), x_(std::move(x)), y_(std::move(y)) {}

  const Symbol& letter(std::uint64_t n) const override {
    if (n == 0) throw Error("positions are 1-based");
    return (n % 2 == 1) ? x_->letter((n + 1) / 2) : y_->letter(n / 2);
  }

 private:
  Stream x_;
  Stream y_;
};

}  // namespace

Stream lasso_stream(const LassoWord& w, const Alphabet& alphabet) {
  if (!w.over(alphabet)) {
    throw AlphabetMismatch("lasso " + w.to_string() + " is not over " + alphabet.to_string());
  }
  return std::make_shared<LassoSource>(w, alphabet);
}

Stream function_stream(const Alphabet& alphabet, std::function<std::size_t(std::uint64_t)> letter_index) {
  return std::make_shared<FunctionSource>(alphabet, std::move(letter_index));
}

LassoWord concat(const Word& u, const LassoWord& w) {
  Word spoke = u;
  spoke.insert(spoke.end(), w.spoke().begin(), w.spoke().end());
  return LassoWord(std::move(spoke), w.cycle());
}

Stream concat(const Word& u, const Stream& w) {
  if (!w->alphabet().contains_all(u)) {
    throw AlphabetMismatch("concat: '" + format_word(u) + "' is not over " + w->alphabet().to_string());
  }
  if (auto l = w->lasso()) return lasso_stream(concat(u, *l), w->alphabet());
  return std::make_shared<ConcatSource>(u, w);
}

LassoWord interleave(const LassoWord& x, const LassoWord& y) {
  const std::size_t spoke = std::max(x.spoke().size(), y.spoke().size());
  const std::size_t cycle = std::lcm(x.cycle().size(), y.cycle().size());
  Word s, c;
  for (std::size_t n = 1; n <= spoke; ++n) {
    s.push_back(x.letter(n));
    s.push_back(y.letter(n));
  }
  for (std::size_t n = spoke + 1; n <= spoke + cycle; ++n) {
    c.push_back(x.letter(n));
    c.push_back(y.letter(n));
  }
  return LassoWord(std::move(s), std::move(c));
}

Stream interleave(const Stream& x, const Stream& y) {
  if (!(x->alphabet() == y->alphabet())) {
    throw AlphabetMismatch("interleave: " + x->alphabet().to_string() + " vs " + y->alphabet().to_string());
  }
  auto lx = x->lasso();
  auto ly = y->lasso();
  if (lx && ly) return lasso_stream(interleave(*lx, *ly), x->alphabet());
  return std::make_shared<InterleaveSource>(x, y);
}

std::uint64_t cantor_pair(std::uint64_t i, std::uint64_t j) {
  if (i == 0 || j == 0) throw Error("cantor_pair is defined on positive integers");
  const std::uint64_t d = i + j;
  return (d - 1) * (d - 2) / 2 + j;
}

Word row_decompose(const PrefixSource& sigma, std::uint64_t i, std::size_t count) {
  if (i == 0) throw Error("row index must be >= 1");
  Word out;
  out.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) out.push_back(sigma.letter(cantor_pair(i, j)));
  return out;
}

}  // namespace omegared
