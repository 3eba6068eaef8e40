#include "freetop/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "freetop/errors.hpp"

namespace freetop {

ReducedWord ReducedWord::reduce(std::span<const Letter> raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (const Letter& l : raw) {
    if (!out.empty() && out.back() == inverse_of(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return ReducedWord(std::move(out), AlreadyReduced{});
}

ReducedWord ReducedWord::generator(std::uint32_t index, int sign) {
  return ReducedWord({Letter{index, static_cast<std::int8_t>(sign < 0 ? -1 : +1)}},
                     AlreadyReduced{});
}

ReducedWord multiply(const ReducedWord& a, const ReducedWord& b) {
  // Both inputs are reduced, so cancellation happens only at the seam.
  std::size_t i = a.length();
  std::size_t j = 0;
  while (i > 0 && j < b.length() && a[i - 1] == inverse_of(b[j])) {
    --i;
    ++j;
  }
  std::vector<Letter> out;
  out.reserve(i + (b.length() - j));
  out.insert(out.end(), a.letters_.begin(), a.letters_.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), b.letters_.begin() + static_cast<std::ptrdiff_t>(j), b.letters_.end());
  return ReducedWord(std::move(out), ReducedWord::AlreadyReduced{});
}

ReducedWord invert(const ReducedWord& w) {
  std::vector<Letter> out;
  out.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(inverse_of(*it));
  }
  return ReducedWord(std::move(out), ReducedWord::AlreadyReduced{});
}

ReducedWord conjugate(const ReducedWord& w, const ReducedWord& g) {
  return multiply(multiply(invert(g), w), g);
}

ReducedWord letter_power(std::uint32_t index, std::int64_t m) {
  std::vector<Letter> out;
  const auto sign = static_cast<std::int8_t>(m < 0 ? -1 : +1);
  for (std::int64_t i = 0, n = m < 0 ? -m : m; i < n; ++i) {
    out.push_back(Letter{index, sign});
  }
  return ReducedWord::reduce(out);
}

CyclicDecomposition cyclic_reduce(const ReducedWord& w) {
  std::size_t lo = 0;
  std::size_t hi = w.length();  // core = letters [lo, hi)
  while (hi - lo >= 2 && w[lo] == inverse_of(w[hi - 1])) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(w.letters().begin() + static_cast<std::ptrdiff_t>(lo),
                           w.letters().begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<Letter> wing(w.letters().begin() + static_cast<std::ptrdiff_t>(hi),
                           w.letters().end());
  return {ReducedWord::reduce(core), ReducedWord::reduce(wing)};
}

std::uint64_t index_sum(const ReducedWord& w) {
  std::uint64_t s = 0;
  for (const Letter& l : w.letters()) s += l.index;
  return s;
}

ReducedWord parse_word(std::string_view text) {
  std::vector<Letter> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) {
      throw ParseError("bad word token at offset " + std::to_string(i) + " in \"" +
                       std::string(text) + "\"");
    }
    std::uint32_t index = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, index);
    if (ec != std::errc{}) {
      throw ParseError("generator index out of range in \"" + std::string(text) + "\"");
    }
    std::int8_t sign = +1;
    if (j < text.size() && text[j] == '\'') {
      sign = -1;
      ++j;
    }
    if (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
      throw ParseError("bad word token at offset " + std::to_string(i) + " in \"" +
                       std::string(text) + "\"");
    }
    raw.push_back(Letter{index, sign});
    i = j;
  }
  return ReducedWord::reduce(raw);
}

std::string format_word(const ReducedWord& w) {
  std::ostringstream os;
  bool first = true;
  for (const Letter& l : w.letters()) {
    if (!first) os << ' ';
    os << l.index;
    if (l.sign < 0) os << '\'';
    first = false;
  }
  return os.str();
}

std::size_t WordHash::operator()(const ReducedWord& w) const noexcept {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (const Letter& l : w.letters()) {
    h ^= (static_cast<std::uint64_t>(l.index) << 1) | (l.sign > 0 ? 0u : 1u);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace freetop
