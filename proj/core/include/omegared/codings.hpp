#pragma once

// Padding codings of omega-words and the fixed word alpha.
//
//   theta_S(x) = x(1) E^S x(2) E^{S^2} x(3) E^{S^3} ...
//   h_K(x)     = A 0^K x(1) B 0^{K^2} A 0^{K^2} x(2) B 0^{K^3} ...
//   phi_K(x)   = F^{K-1} x(1) F^{K-1} x(2) ...
//   h(x)       = C 0 x(1) C 0^2 x(2) C 0^3 x(3) ...
//   alpha      = C 0 C 0^2 C 0^3 ...

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "omegared/words.hpp"

namespace omegared {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t THETA_S_DEFAULT = 1728;
inline constexpr std::uint64_t HK_K_DEFAULT = 9699690;

// (3k)^3 with k = |sigma| + 2.
std::uint64_t theta_default_S(const Alphabet& sigma);

enum class CodingKind { Theta, HK, PhiK, HKPhiK, H, Alpha };

struct Coding {
  CodingKind kind;
  std::uint64_t param = 0;  // S for Theta, K for HK / PhiK / HKPhiK
  Alphabet input;           // letters allowed in the x(n) slots

  static Coding theta(std::uint64_t S, Alphabet sigma = Alphabet::sigma());
  static Coding hk(std::uint64_t K, Alphabet gamma = Alphabet::gamma());
  // Default input: omega without F.
  static Coding phik(std::uint64_t K, std::optional<Alphabet> input = std::nullopt);
  // phi_K composed with h_K, over gamma.
  static Coding hk_phik(std::uint64_t K, Alphabet gamma = Alphabet::gamma());
  static Coding h(Alphabet input = Alphabet::omega());
  static Coding alpha();

  Alphabet output() const;
  std::string name() const;
};

// Union of two symbol sets; symbols of omega_prime keep that order.
Alphabet merge_alphabets(const Alphabet& a, const std::vector<Symbol>& extra);

// The coded omega-word. For Alpha, x is ignored and may be null.
// phi_K of a lasso is returned as a lasso with cycle length K * |cycle|.
Stream encode(const Coding& c, const Stream& x);

Word theta_prefix(std::uint64_t S, const Stream& x, std::size_t n);
Word hk_prefix(std::uint64_t K, const Stream& x, std::size_t n);
Word phik_prefix(std::uint64_t K, const Stream& x, std::size_t n);
Word h_prefix(const Stream& x, std::size_t n);
Word alpha_prefix(std::size_t n);

// Letter at an arbitrary-precision position (1-based), without materializing.
// x must be able to deliver the letter index that lands there.
Symbol coded_letter(const Coding& c, const Stream& x, const BigInt& position);

// 1-based position at which x(m) is emitted. Not defined for Alpha.
BigInt emission_position(const Coding& c, std::uint64_t m);

// Length of the m-th block, counting from the block that carries x(m).
BigInt block_length(const Coding& c, std::uint64_t m);

// True iff w is a prefix of c(x) for some omega-word x over c.input.
// Direct scanner over the block structure.
bool is_image_prefix(const Coding& c, const Word& w);

}  // namespace omegared
