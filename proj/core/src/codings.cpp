#include "omegared/codings.hpp"

#include <algorithm>
#include <limits>

#include "omegared/error.hpp"

namespace omegared {

namespace {

using u128 = unsigned __int128;
constexpr u128 kSat = ~static_cast<u128>(0);

u128 mul(u128 a, u128 b) {
  if (a != 0 && b > kSat / a) return kSat;
  return a * b;
}
u128 add(u128 a, u128 b) { return (b > kSat - a) ? kSat : a + b; }
BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
BigInt add(const BigInt& a, const BigInt& b) { return a + b; }

template <class Int>
Int power(std::uint64_t base, std::uint64_t e) {
  Int r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = mul(r, Int(base));
  return r;
}

// One maximal run inside a block: either `count` copies of a marker or the input slot.
template <class Int>
struct Segment {
  int marker;  // index into the coding's marker table, or -1 for the input slot
  Int count;
};

// Marker tables per coding kind.
//   Theta: E        HK: A B 0        PhiK: F        H / Alpha: C 0
std::vector<Symbol> marker_names(CodingKind k) {
  switch (k) {
    case CodingKind::Theta: return {"E"};
    case CodingKind::HK: return {"A", "B", "0"};
    case CodingKind::PhiK: return {"F"};
    case CodingKind::HKPhiK: return {"A", "B", "0", "F"};
    case CodingKind::H:
    case CodingKind::Alpha: return {"C", "0"};
  }
  return {};
}

// Segments of block m (m >= 1) for every kind except HKPhiK.
template <class Int>
std::vector<Segment<Int>> block_segments(const Coding& c, std::uint64_t m) {
  switch (c.kind) {
    case CodingKind::Theta:
      return {{-1, Int(1)}, {0, power<Int>(c.param, m)}};
    case CodingKind::HK:
      return {{0, Int(1)}, {2, power<Int>(c.param, m)}, {-1, Int(1)}, {1, Int(1)}, {2, power<Int>(c.param, m + 1)}};
    case CodingKind::PhiK:
      return {{0, Int(c.param - 1)}, {-1, Int(1)}};
    case CodingKind::H:
      return {{0, Int(1)}, {1, Int(m)}, {-1, Int(1)}};
    case CodingKind::Alpha:
      return {{0, Int(1)}, {1, Int(m)}};
    case CodingKind::HKPhiK:
      break;
  }
  throw Error("block_segments: composite coding");
}

template <class Int>
Int segments_length(const std::vector<Segment<Int>>& segs) {
  Int total = 0;
  for (const auto& s : segs) total = add(total, s.count);
  return total;
}

// Number of letters in blocks 1..m for the linear codings H (c=2) and Alpha (c=1).
template <class Int>
Int linear_prefix_length(Int m, unsigned c) {
  return add(mul(m, add(m, Int(1))) / 2, mul(Int(c), m));
}

// Located letter: the block index and either a marker index or -1 for x(block).
struct Hit {
  std::uint64_t block;
  int marker;
};

template <class Int>
Hit locate_in_block(const std::vector<Segment<Int>>& segs, std::uint64_t block, Int offset) {
  // offset is 1-based within the block
  for (const auto& s : segs) {
    if (offset <= s.count) return {block, s.marker};
    offset -= s.count;
  }
  throw Error("locate_in_block: offset past block end");
}

template <class Int>
Hit locate(const Coding& c, Int p) {
  switch (c.kind) {
    case CodingKind::PhiK: {
      Int K = Int(c.param);
      Int block = (p - 1) / K + 1;
      Int off = (p - 1) % K + 1;
      return {static_cast<std::uint64_t>(block), off == K ? -1 : 0};
    }
    case CodingKind::H:
    case CodingKind::Alpha: {
      unsigned lin = c.kind == CodingKind::H ? 2 : 1;
      Int hi = 1;
      while (linear_prefix_length(hi, lin) < p) hi = mul(hi, Int(2));
      Int lo = 1;
      while (lo < hi) {
        Int mid = (lo + hi) / 2;
        if (linear_prefix_length(mid, lin) >= p) hi = mid; else lo = mid + 1;
      }
      auto m = static_cast<std::uint64_t>(lo);
      Int before = linear_prefix_length(Int(m - 1), lin);
      return locate_in_block(block_segments<Int>(c, m), m, Int(p - before));
    }
    case CodingKind::Theta:
    case CodingKind::HK: {
      Int before = 0;
      for (std::uint64_t m = 1;; ++m) {
        auto segs = block_segments<Int>(c, m);
        Int len = segments_length(segs);
        if (p <= add(before, len)) return locate_in_block(segs, m, Int(p - before));
        before = add(before, len);
      }
    }
    case CodingKind::HKPhiK:
      break;
  }
  throw Error("locate: composite coding");
}

void check_param(const Coding& c) {
  switch (c.kind) {
    case CodingKind::Theta:
      if (c.param < 1) throw Error("theta: S must be >= 1");
      break;
    case CodingKind::HK:
    case CodingKind::PhiK:
    case CodingKind::HKPhiK:
      if (c.param < 2) throw Error(c.name() + ": K must be >= 2");
      break;
    default:
      break;
  }
  for (const auto& m : marker_names(c.kind)) {
    if (c.kind == CodingKind::H && m == "0") continue;  // h reads 0 as an ordinary input letter too
    if (c.input.contains(m)) throw Error(c.name() + ": marker " + m + " occurs in the input alphabet");
  }
}

class CodedSource final : public PrefixSource {
 public:
  CodedSource(const Coding& c, Stream x) : PrefixSource(c.output()), c_(c), x_(std::move(x)) {
    for (const auto& m : marker_names(c.kind)) markers_.push_back(&alphabet().canonical(m));
  }

  const Symbol& letter(std::uint64_t n) const override {
    if (n == 0) throw Error("positions are 1-based");
    Hit h = locate<u128>(c_, static_cast<u128>(n));
    if (h.marker >= 0) return *markers_[h.marker];
    return x_->letter(h.block);
  }

 private:
  Coding c_;
  Stream x_;
  std::vector<const Symbol*> markers_;
};

Alphabet phik_default_input() {
  return Alphabet({"a", "b", "E", "A", "B", "0"});
}

}  // namespace

std::uint64_t theta_default_S(const Alphabet& sigma) {
  const std::uint64_t k = sigma.size() + 2;
  return (3 * k) * (3 * k) * (3 * k);
}

Coding Coding::theta(std::uint64_t S, Alphabet sigma) {
  Coding c{CodingKind::Theta, S, std::move(sigma)};
  check_param(c);
  return c;
}
Coding Coding::hk(std::uint64_t K, Alphabet gamma) {
  Coding c{CodingKind::HK, K, std::move(gamma)};
  check_param(c);
  return c;
}
Coding Coding::phik(std::uint64_t K, std::optional<Alphabet> input) {
  Coding c{CodingKind::PhiK, K, input ? std::move(*input) : phik_default_input()};
  check_param(c);
  return c;
}
Coding Coding::hk_phik(std::uint64_t K, Alphabet gamma) {
  Coding c{CodingKind::HKPhiK, K, std::move(gamma)};
  check_param(c);
  return c;
}
Coding Coding::h(Alphabet input) {
  Coding c{CodingKind::H, 0, std::move(input)};
  check_param(c);
  return c;
}
Coding Coding::alpha() { return Coding{CodingKind::Alpha, 0, Alphabet({"C", "0"})}; }

Alphabet merge_alphabets(const Alphabet& a, const std::vector<Symbol>& extra) {
  std::vector<Symbol> all = a.symbols();
  for (const auto& s : extra) {
    if (!a.contains(s)) all.push_back(s);
  }
  const Alphabet ref = Alphabet::omega_prime();
  std::stable_sort(all.begin(), all.end(), [&](const Symbol& x, const Symbol& y) {
    auto rx = ref.index_of(x).value_or(ref.size());
    auto ry = ref.index_of(y).value_or(ref.size());
    return rx < ry;
  });
  return Alphabet(std::move(all));
}

Alphabet Coding::output() const {
  switch (kind) {
    case CodingKind::Alpha: return Alphabet::omega_prime();
    default: return merge_alphabets(input, marker_names(kind));
  }
}

std::string Coding::name() const {
  switch (kind) {
    case CodingKind::Theta: return "theta(" + std::to_string(param) + ")";
    case CodingKind::HK: return "hk(" + std::to_string(param) + ")";
    case CodingKind::PhiK: return "phik(" + std::to_string(param) + ")";
    case CodingKind::HKPhiK: return "hk_phik(" + std::to_string(param) + ")";
    case CodingKind::H: return "h";
    case CodingKind::Alpha: return "alpha";
  }
  return "?";
}

Stream encode(const Coding& c, const Stream& x) {
  if (c.kind == CodingKind::Alpha) return std::make_shared<CodedSource>(c, nullptr);
  if (!x) throw Error(c.name() + ": missing input word");
  for (const auto& s : x->alphabet().symbols()) {
    if (!c.input.contains(s)) {
      throw AlphabetMismatch(c.name() + ": input word alphabet " + x->alphabet().to_string() +
                             " is not within " + c.input.to_string());
    }
  }
  if (c.kind == CodingKind::HKPhiK) {
    Coding inner = Coding::hk(c.param, c.input);
    Coding outer = Coding::phik(c.param, inner.output());
    return encode(outer, encode(inner, x));
  }
  if (c.kind == CodingKind::PhiK) {
    if (auto l = x->lasso()) {
      auto expand = [&](const Word& w) {
        Word out;
        for (const auto& s : w) {
          out.insert(out.end(), c.param - 1, Symbol("F"));
          out.push_back(s);
        }
        return out;
      };
      return lasso_stream(LassoWord(expand(l->spoke()), expand(l->cycle())), c.output());
    }
  }
  return std::make_shared<CodedSource>(c, x);
}

Word theta_prefix(std::uint64_t S, const Stream& x, std::size_t n) {
  return encode(Coding::theta(S, x->alphabet()), x)->prefix(n);
}
Word hk_prefix(std::uint64_t K, const Stream& x, std::size_t n) {
  return encode(Coding::hk(K, x->alphabet()), x)->prefix(n);
}
Word phik_prefix(std::uint64_t K, const Stream& x, std::size_t n) {
  return encode(Coding::phik(K, x->alphabet()), x)->prefix(n);
}
Word h_prefix(const Stream& x, std::size_t n) {
  return encode(Coding::h(x->alphabet()), x)->prefix(n);
}
Word alpha_prefix(std::size_t n) { return encode(Coding::alpha(), nullptr)->prefix(n); }

Symbol coded_letter(const Coding& c, const Stream& x, const BigInt& position) {
  if (position < 1) throw Error("positions are 1-based");
  if (c.kind == CodingKind::HKPhiK) {
    BigInt K = c.param;
    BigInt off = (position - 1) % K;
    if (off != K - 1) return "F";
    return coded_letter(Coding::hk(c.param, c.input), x, (position - 1) / K + 1);
  }
  Hit h = locate<BigInt>(c, position);
  if (h.marker >= 0) return marker_names(c.kind)[h.marker];
  return x->letter(h.block);
}

BigInt block_length(const Coding& c, std::uint64_t m) {
  if (m == 0) throw Error("blocks are 1-based");
  if (c.kind == CodingKind::HKPhiK) return BigInt(c.param) * block_length(Coding::hk(c.param, c.input), m);
  return segments_length(block_segments<BigInt>(c, m));
}

BigInt emission_position(const Coding& c, std::uint64_t m) {
  if (m == 0) throw Error("positions are 1-based");
  if (c.kind == CodingKind::Alpha) throw Error("alpha carries no input letters");
  if (c.kind == CodingKind::HKPhiK) {
    return BigInt(c.param) * emission_position(Coding::hk(c.param, c.input), m);
  }
  BigInt before = 0;
  for (std::uint64_t j = 1; j < m; ++j) before += block_length(c, j);
  BigInt off = 0;
  for (const auto& s : block_segments<BigInt>(c, m)) {
    if (s.marker < 0) return before + off + 1;
    off += s.count;
  }
  throw Error("emission_position: block without input slot");
}

namespace {

// Walks the block structure and checks w against it.
bool scan_blocks(const Coding& c, const Word& w) {
  const auto names = marker_names(c.kind);
  std::size_t i = 0;
  for (std::uint64_t m = 1; i < w.size(); ++m) {
    for (const auto& s : block_segments<u128>(c, m)) {
      if (s.marker < 0) {
        if (!c.input.contains(w[i])) return false;
        if (++i == w.size()) return true;
        continue;
      }
      for (u128 j = 0; j < s.count; ++j) {
        if (w[i] != names[s.marker]) return false;
        if (++i == w.size()) return true;
      }
    }
  }
  return true;
}

}  // namespace

bool is_image_prefix(const Coding& c, const Word& w) {
  if (c.kind == CodingKind::HKPhiK) {
    Coding inner = Coding::hk(c.param, c.input);
    Coding outer = Coding::phik(c.param, inner.output());
    if (!scan_blocks(outer, w)) return false;
    Word letters;
    for (std::size_t i = c.param - 1; i < w.size(); i += c.param) letters.push_back(w[i]);
    return scan_blocks(inner, letters);
  }
  return scan_blocks(c, w);
}

}  // namespace omegared
