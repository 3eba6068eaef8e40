#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freetop {

/// One signed generator symbol k^{+1} or k^{-1} of the free group F(N).
/// Generator indices start at 0.
struct Letter {
  std::uint32_t index = 0;
  std::int8_t sign = +1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
  /// Ordering used everywhere a deterministic enumeration is promised:
  /// by index ascending, positive exponent before negative.
  friend auto operator<=>(const Letter& a, const Letter& b) {
    if (auto c = a.index <=> b.index; c != 0) return c;
    return b.sign <=> a.sign;  // +1 sorts first
  }
};

inline Letter inverse_of(Letter l) { return {l.index, static_cast<std::int8_t>(-l.sign)}; }

/// A freely reduced word over the generators of F(N). The empty word is the
/// identity e. Instances are immutable values; every constructor reduces, so
/// the no-adjacent-inverse invariant holds by construction.
class ReducedWord {
public:
  ReducedWord() = default;  // identity

  /// Free reduction of an arbitrary letter sequence. Idempotent; the result
  /// never gets longer than the input.
  static ReducedWord reduce(std::span<const Letter> raw);
  static ReducedWord reduce(std::initializer_list<Letter> raw) {
    return reduce(std::span<const Letter>(raw.begin(), raw.size()));
  }

  static ReducedWord generator(std::uint32_t index, int sign = +1);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

private:
  struct AlreadyReduced {};
  ReducedWord(std::vector<Letter> letters, AlreadyReduced) : letters_(std::move(letters)) {}

  std::vector<Letter> letters_;

  friend ReducedWord multiply(const ReducedWord&, const ReducedWord&);
  friend ReducedWord invert(const ReducedWord&);
};

/// Reduced product a*b. Associative; e is a two-sided identity.
ReducedWord multiply(const ReducedWord& a, const ReducedWord& b);

/// w^{-1}: reversed sequence with flipped exponents. Involutive.
ReducedWord invert(const ReducedWord& w);

/// reduce(g^{-1} * w * g).
ReducedWord conjugate(const ReducedWord& w, const ReducedWord& g);

/// k^m as a word (|m| copies of the letter, sign of m).
ReducedWord letter_power(std::uint32_t index, std::int64_t m);

/// Decomposition w = wing^{-1} * core * wing with core cyclically reduced
/// (its first and last letters are not mutually inverse) and the wing of
/// maximal length. Matched inverse pairs are stripped greedily from both
/// ends, which makes the decomposition canonical.
struct CyclicDecomposition {
  ReducedWord core;
  ReducedWord wing;
};
CyclicDecomposition cyclic_reduce(const ReducedWord& w);

/// Sum of generator indices over all letters, with multiplicity, ignoring
/// exponents. Invariant under inversion and under cyclic permutation of a
/// cyclically reduced word.
std::uint64_t index_sum(const ReducedWord& w);

/// Text format: whitespace-separated tokens, `k` for generator k and `k'`
/// for its inverse; the empty string is e. Example: "5' 31 5".
/// Parsing reduces, so any raw sequence is accepted.
ReducedWord parse_word(std::string_view text);
std::string format_word(const ReducedWord& w);

struct WordHash {
  std::size_t operator()(const ReducedWord& w) const noexcept;
};

}  // namespace freetop
