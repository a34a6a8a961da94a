// Line-based machine format.
//
//   kind: buchi-counter
//   counters: 1
//   realtime: true
//   alphabet: a b
//   states: q0 q1
//   initial: q0
//   accepting: q1
//   delta: q0 a [1] -> q1 [-1]
//
// '#' starts a comment. '@' as a letter stands for the empty word.

#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "omegared/error.hpp"
#include "omegared/machines.hpp"

namespace omegared {

namespace {

struct Line {
  std::size_t number;
  std::string key;
  std::vector<std::string> tokens;
};

// Splits on whitespace; "..." is one token (quotes kept), brackets stand alone.
std::vector<std::string> tokenize(std::string_view s, std::size_t line_no) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      auto j = s.find('"', i + 1);
      if (j == std::string_view::npos) throw ParseError(line_no, "unterminated quoted word");
      out.emplace_back(s.substr(i, j - i + 1));
      i = j + 1;
    } else if (c == '[' || c == ']') {
      out.emplace_back(1, c);
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '[' && s[j] != ']' &&
             s[j] != '"') {
        ++j;
      }
      out.emplace_back(s.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    // '#' inside a quoted word is not a comment
    bool quoted = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        cut = i;
        break;
      }
    }
    raw = raw.substr(0, cut);
    auto colon = raw.find(':');
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    if (colon == std::string_view::npos) throw ParseError(number, "expected 'key: value'");
    std::string key(raw.substr(first, colon - first));
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    lines.push_back({number, key, tokenize(raw.substr(colon + 1), number)});
    if (end == text.size()) break;
  }
  return lines;
}

class Reader {
 public:
  explicit Reader(std::string_view text) {
    for (auto& l : split_lines(text)) {
      if (l.key == "delta") {
        deltas_.push_back(std::move(l));
      } else {
        if (headers_.count(l.key)) throw ParseError(l.number, "duplicate '" + l.key + ":' line");
        headers_.emplace(l.key, std::move(l));
      }
    }
  }

  const Line* find(const std::string& key) const {
    auto it = headers_.find(key);
    return it == headers_.end() ? nullptr : &it->second;
  }

  const Line& require(const std::string& key) const {
    if (const Line* l = find(key)) return *l;
    throw ParseError(0, "missing '" + key + ":' line");
  }

  std::string single(const std::string& key) const {
    const Line& l = require(key);
    if (l.tokens.size() != 1) throw ParseError(l.number, "'" + key + ":' takes exactly one value");
    return l.tokens[0];
  }

  Alphabet alphabet(const std::string& key) const {
    const Line& l = require(key);
    try {
      return Alphabet(l.tokens);
    } catch (const Error& e) {
      throw ParseError(l.number, e.what());
    }
  }

  void only(std::initializer_list<const char*> allowed) const {
    for (const auto& [k, l] : headers_) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw ParseError(l.number, "unexpected '" + k + ":' line for this kind");
    }
  }

  const std::vector<Line>& deltas() const { return deltas_; }

 private:
  std::map<std::string, Line> headers_;
  std::vector<Line> deltas_;
};

struct Control {
  StateSpace states;
  std::unordered_map<std::string, StateId> index;
  StateId initial = 0;
  std::vector<bool> accepting;

  StateId state(const std::string& name, std::size_t line) const {
    auto it = index.find(name);
    if (it == index.end()) throw ParseError(line, "undeclared state '" + name + "'");
    return it->second;
  }
};

Control read_control(const Reader& r) {
  Control c;
  const Line& sl = r.require("states");
  try {
    c.states = StateSpace(sl.tokens);
  } catch (const Error& e) {
    throw ParseError(sl.number, e.what());
  }
  if (sl.tokens.empty()) throw ParseError(sl.number, "at least one state is required");
  for (std::size_t i = 0; i < sl.tokens.size(); ++i) c.index.emplace(sl.tokens[i], static_cast<StateId>(i));
  const Line& il = r.require("initial");
  if (il.tokens.size() != 1) throw ParseError(il.number, "'initial:' takes exactly one state");
  c.initial = c.state(il.tokens[0], il.number);
  c.accepting.assign(sl.tokens.size(), false);
  if (const Line* al = r.find("accepting")) {
    for (const auto& t : al->tokens) c.accepting[c.state(t, al->number)] = true;
  }
  return c;
}

LetterId letter_id(const Alphabet& a, const std::string& tok, std::size_t line, bool lambda_ok) {
  if (tok == "@") {
    if (!lambda_ok) throw ParseError(line, "'@' (empty word) is not allowed here");
    return kLambda;
  }
  auto i = a.index_of(tok);
  if (!i) throw ParseError(line, "letter '" + tok + "' is not in the alphabet");
  return static_cast<LetterId>(*i);
}

// Greedy longest-match split of a concatenated symbol string.
std::vector<LetterId> split_symbols(const Alphabet& a, std::string_view s, std::size_t line) {
  std::vector<LetterId> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t best = 0;
    LetterId id = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const auto& sym = a[k];
      if (sym.size() > best && s.substr(i, sym.size()) == sym) {
        best = sym.size();
        id = static_cast<LetterId>(k);
      }
    }
    if (best == 0) throw ParseError(line, "cannot split '" + std::string(s) + "' into symbols of " + a.to_string());
    out.push_back(id);
    i += best;
  }
  return out;
}

// Contents of a quoted word: space-separated symbols, or concatenated ones.
LetterWord quoted_word(const Alphabet& a, const std::string& tok, std::size_t line) {
  if (tok.size() < 2 || tok.front() != '"' || tok.back() != '"') {
    throw ParseError(line, "expected a quoted word, got '" + tok + "'");
  }
  std::string_view inner(tok.data() + 1, tok.size() - 2);
  LetterWord out;
  if (inner.find(' ') != std::string_view::npos) {
    for (const auto& s : parse_word(inner)) out.push_back(letter_id(a, s, line, false));
    return out;
  }
  return split_symbols(a, inner, line);
}

std::string joined_word(const Alphabet& a, const std::vector<LetterId>& w, bool spaced) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (spaced && i) out += ' ';
    out += a[w[i]];
  }
  return out;
}

bool all_single_char(const Alphabet& a) {
  for (const auto& s : a.symbols()) {
    if (s.size() != 1) return false;
  }
  return true;
}

void expect(const Line& l, std::size_t i, const char* tok) {
  if (i >= l.tokens.size() || l.tokens[i] != tok) {
    throw ParseError(l.number, std::string("expected '") + tok + "' at position " + std::to_string(i + 1));
  }
}

BuchiNfa parse_nfa(const Reader& r) {
  r.only({"kind", "alphabet", "states", "initial", "accepting"});
  Alphabet sigma = r.alphabet("alphabet");
  Control c = read_control(r);
  std::vector<NfaTransition> delta;
  for (const auto& l : r.deltas()) {
    if (l.tokens.size() != 4) throw ParseError(l.number, "nfa transition is 'q a -> q2'");
    expect(l, 2, "->");
    delta.push_back({c.state(l.tokens[0], l.number), c.state(l.tokens[3], l.number),
                     letter_id(sigma, l.tokens[1], l.number, false)});
  }
  return BuchiNfa(std::move(sigma), std::move(c.states), c.initial, std::move(c.accepting), std::move(delta));
}

CounterAutomaton parse_counter(const Reader& r) {
  r.only({"kind", "counters", "realtime", "alphabet", "states", "initial", "accepting"});
  Alphabet sigma = r.alphabet("alphabet");
  unsigned k = 0;
  {
    const Line& l = r.require("counters");
    std::string v = r.single("counters");
    try {
      k = static_cast<unsigned>(std::stoul(v));
    } catch (...) {
      throw ParseError(l.number, "counters must be a number");
    }
    if (k < 1 || k > kMaxCounters) throw ParseError(l.number, "counters must be between 1 and 16");
  }
  bool realtime = false;
  if (r.find("realtime")) {
    std::string v = r.single("realtime");
    if (v != "true" && v != "false") throw ParseError(r.require("realtime").number, "realtime is true or false");
    realtime = v == "true";
  }
  Control c = read_control(r);
  std::vector<CounterTransition> delta;
  for (const auto& l : r.deltas()) {
    // q a [ g1 .. gk ] -> q2 [ d1 .. dk ]
    const auto& t = l.tokens;
    if (t.size() != 2 * k + 8) {
      throw ParseError(l.number, "counter transition is 'q a [g1..gk] -> q2 [d1..dk]' with k=" + std::to_string(k));
    }
    expect(l, 2, "[");
    expect(l, 3 + k, "]");
    expect(l, 4 + k, "->");
    expect(l, 6 + k, "[");
    expect(l, 7 + 2 * k, "]");
    CounterTransition tr{c.state(t[0], l.number), c.state(t[5 + k], l.number),
                         letter_id(sigma, t[1], l.number, true), 0, 0, 0};
    if (realtime && tr.letter == kLambda) {
      throw ParseError(l.number, "real-time machine may not have lambda transitions");
    }
    for (unsigned m = 0; m < k; ++m) {
      const auto& g = t[3 + m];
      if (g == "1") tr.nonzero |= 1u << m;
      else if (g != "0") throw ParseError(l.number, "guard entries are 0 (zero) or 1 (non-zero), got '" + g + "'");
      const auto& d = t[7 + k + m];
      if (d == "+1" || d == "1") tr.inc |= 1u << m;
      else if (d == "-1") tr.dec |= 1u << m;
      else if (d != "0") throw ParseError(l.number, "update entries are -1, 0 or +1, got '" + d + "'");
      if ((tr.dec >> m & 1) && !(tr.nonzero >> m & 1)) {
        throw ParseError(l.number, "zero-guard constraint violated on counter " + std::to_string(m + 1) +
                                       ": a counter tested for zero may only be updated by 0 or +1");
      }
    }
    delta.push_back(tr);
  }
  return CounterAutomaton(std::move(sigma), k, realtime, std::move(c.states), c.initial, std::move(c.accepting),
                          std::move(delta));
}

PushdownAutomaton parse_pda(const Reader& r) {
  r.only({"kind", "alphabet", "stack", "states", "initial", "accepting"});
  Alphabet sigma = r.alphabet("alphabet");
  Alphabet gamma = r.find("stack") ? r.alphabet("stack") : Alphabet({"Z0", "A"});
  Control c = read_control(r);
  std::vector<PdaTransition> delta;
  for (const auto& l : r.deltas()) {
    if (l.tokens.size() != 6) throw ParseError(l.number, "pda transition is 'q a T -> q2 PUSH'");
    expect(l, 3, "->");
    PdaTransition tr{c.state(l.tokens[0], l.number), c.state(l.tokens[4], l.number),
                     letter_id(sigma, l.tokens[1], l.number, true),
                     letter_id(gamma, l.tokens[2], l.number, false), {}};
    if (l.tokens[5] != "@") tr.push = split_symbols(gamma, l.tokens[5], l.number);
    for (std::size_t i = 0; i < tr.push.size(); ++i) {
      bool last = i + 1 == tr.push.size();
      if (tr.push[i] == PushdownAutomaton::kBottom && !(tr.top == PushdownAutomaton::kBottom && last)) {
        throw ParseError(l.number, "bottom symbol may only be kept as the bottom");
      }
    }
    if (tr.top == PushdownAutomaton::kBottom && (tr.push.empty() || tr.push.back() != PushdownAutomaton::kBottom)) {
      throw ParseError(l.number, "replacement for the bottom symbol must end with it");
    }
    delta.push_back(std::move(tr));
  }
  return PushdownAutomaton(std::move(sigma), std::move(gamma), std::move(c.states), c.initial,
                           std::move(c.accepting), std::move(delta));
}

TwoTapeAutomaton parse_two_tape(const Reader& r) {
  r.only({"kind", "alphabet1", "alphabet2", "states", "initial", "accepting"});
  Alphabet a1 = r.alphabet("alphabet1");
  Alphabet a2 = r.alphabet("alphabet2");
  Control c = read_control(r);
  std::vector<LetterWord> words;
  std::map<LetterWord, std::uint32_t> ids;
  auto intern = [&](LetterWord w) {
    auto [it, fresh] = ids.emplace(w, static_cast<std::uint32_t>(words.size()));
    if (fresh) words.push_back(std::move(w));
    return it->second;
  };
  std::vector<TwoTapeTransition> delta;
  for (const auto& l : r.deltas()) {
    if (l.tokens.size() != 5) throw ParseError(l.number, "two-tape transition is 'q \"u\" \"v\" -> q2'");
    expect(l, 3, "->");
    delta.push_back({c.state(l.tokens[0], l.number), c.state(l.tokens[4], l.number),
                     intern(quoted_word(a1, l.tokens[1], l.number)), intern(quoted_word(a2, l.tokens[2], l.number))});
  }
  return TwoTapeAutomaton(std::move(a1), std::move(a2), std::move(c.states), c.initial, std::move(c.accepting),
                          std::move(words), std::move(delta));
}

TuringMachine parse_turing(const Reader& r) {
  r.only({"kind", "input", "tape", "acceptance", "states", "initial", "accepting"});
  Alphabet input = r.alphabet("input");
  Alphabet tape = r.alphabet("tape");
  TmAcceptance mode = TmAcceptance::Buchi;
  if (r.find("acceptance")) {
    std::string v = r.single("acceptance");
    if (v == "one-prime") mode = TmAcceptance::OnePrime;
    else if (v != "buchi") throw ParseError(r.require("acceptance").number, "acceptance is one-prime or buchi");
  }
  Control c = read_control(r);
  std::vector<TmTransition> delta;
  for (const auto& l : r.deltas()) {
    if (l.tokens.size() != 6) throw ParseError(l.number, "turing transition is 'q a -> q2 b L|R|S'");
    expect(l, 2, "->");
    Move mv;
    const auto& m = l.tokens[5];
    if (m == "L") mv = Move::L;
    else if (m == "R") mv = Move::R;
    else if (m == "S") mv = Move::S;
    else throw ParseError(l.number, "move is L, R or S");
    delta.push_back({c.state(l.tokens[0], l.number), letter_id(tape, l.tokens[1], l.number, false),
                     c.state(l.tokens[3], l.number), letter_id(tape, l.tokens[4], l.number, false), mv});
  }
  return TuringMachine(std::move(input), std::move(tape), mode, std::move(c.states), c.initial,
                       std::move(c.accepting), std::move(delta));
}

void write_states(std::ostream& out, const ControlCore& c) {
  out << "states:";
  for (StateId s = 0; s < c.num_states(); ++s) out << ' ' << c.states().name(s);
  out << "\ninitial: " << c.states().name(c.initial()) << "\naccepting:";
  for (StateId s = 0; s < c.num_states(); ++s) {
    if (c.accepting(s)) out << ' ' << c.states().name(s);
  }
  out << '\n';
}

void write_alphabet(std::ostream& out, const char* key, const Alphabet& a) {
  out << key << ':';
  for (const auto& s : a.symbols()) out << ' ' << s;
  out << '\n';
}

std::string letter_text(const Alphabet& a, LetterId l) { return l == kLambda ? "@" : a[l]; }

class NameCache {
 public:
  explicit NameCache(const StateSpace& s) : states_(s) {}
  std::string operator()(StateId s) const { return states_.name(s); }

 private:
  const StateSpace& states_;
};

}  // namespace

MachineSpec parse_machine(std::string_view text) {
  Reader r(text);
  std::string kind = r.single("kind");
  try {
    if (kind == "buchi-nfa") return parse_nfa(r);
    if (kind == "buchi-counter") return parse_counter(r);
    if (kind == "buchi-pda") return parse_pda(r);
    if (kind == "two-tape") return parse_two_tape(r);
    if (kind == "turing") return parse_turing(r);
  } catch (const ParseError&) {
    throw;
  } catch (const MachineError& e) {
    throw ParseError(0, e.what());
  }
  throw ParseError(r.require("kind").number, "unknown machine kind '" + kind + "'");
}

void write_machine(std::ostream& out, const MachineSpec& spec) {
  out << "kind: " << kind_name(spec) << '\n';
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        NameCache name(m.control().states());
        if constexpr (std::is_same_v<T, BuchiNfa>) {
          write_alphabet(out, "alphabet", m.alphabet());
          write_states(out, m.control());
          for (const auto& t : m.transitions()) {
            out << "delta: " << name(t.from) << ' ' << m.alphabet()[t.letter] << " -> " << name(t.to) << '\n';
          }
        } else if constexpr (std::is_same_v<T, CounterAutomaton>) {
          out << "counters: " << m.counters() << "\nrealtime: " << (m.realtime() ? "true" : "false") << '\n';
          write_alphabet(out, "alphabet", m.alphabet());
          write_states(out, m.control());
          const unsigned k = m.counters();
          std::string line;
          for (const auto& t : m.transitions()) {
            line = "delta: ";
            line += name(t.from);
            line += ' ';
            line += letter_text(m.alphabet(), t.letter);
            line += " [";
            for (unsigned i = 0; i < k; ++i) {
              if (i) line += ' ';
              line += (t.nonzero >> i & 1) ? '1' : '0';
            }
            line += "] -> ";
            line += name(t.to);
            line += " [";
            for (unsigned i = 0; i < k; ++i) {
              if (i) line += ' ';
              line += (t.inc >> i & 1) ? "+1" : (t.dec >> i & 1) ? "-1" : "0";
            }
            line += "]\n";
            out << line;
          }
        } else if constexpr (std::is_same_v<T, PushdownAutomaton>) {
          write_alphabet(out, "alphabet", m.alphabet());
          write_alphabet(out, "stack", m.stack());
          write_states(out, m.control());
          for (const auto& t : m.transitions()) {
            out << "delta: " << name(t.from) << ' ' << letter_text(m.alphabet(), t.letter) << ' '
                << m.stack()[t.top] << " -> " << name(t.to) << ' '
                << (t.push.empty() ? std::string("@") : joined_word(m.stack(), t.push, false)) << '\n';
          }
        } else if constexpr (std::is_same_v<T, TwoTapeAutomaton>) {
          write_alphabet(out, "alphabet1", m.alphabet1());
          write_alphabet(out, "alphabet2", m.alphabet2());
          write_states(out, m.control());
          const bool s1 = !all_single_char(m.alphabet1());
          const bool s2 = !all_single_char(m.alphabet2());
          for (const auto& t : m.transitions()) {
            out << "delta: " << name(t.from) << " \"" << joined_word(m.alphabet1(), m.word(t.u), s1) << "\" \""
                << joined_word(m.alphabet2(), m.word(t.v), s2) << "\" -> " << name(t.to) << '\n';
          }
        } else {
          write_alphabet(out, "input", m.input());
          write_alphabet(out, "tape", m.tape());
          out << "acceptance: " << (m.mode() == TmAcceptance::OnePrime ? "one-prime" : "buchi") << '\n';
          write_states(out, m.control());
          for (const auto& t : m.transitions()) {
            out << "delta: " << name(t.from) << ' ' << m.tape()[t.read] << " -> " << name(t.to) << ' '
                << m.tape()[t.write] << ' ' << (t.move == Move::L ? 'L' : t.move == Move::R ? 'R' : 'S') << '\n';
          }
        }
      },
      spec);
}

std::string serialize_machine(const MachineSpec& m) {
  std::ostringstream out;
  write_machine(out, m);
  return out.str();
}

}  // namespace omegared
