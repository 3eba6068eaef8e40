#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "freetop/chain.hpp"
#include "freetop/words.hpp"

namespace freetop {

/// Node of the recursion tree behind phi, for `phi --explain`.
struct PhiTrace {
  std::uint64_t level = 0;
  ReducedWord word;
  std::uint64_t value = 0;
  std::vector<PhiTrace> children;
};

/// Evaluates the scale functions phi_n on F(N) against a fixed index chain.
///
/// phi_n(k^{+-1}) = n + k on single letters, phi_n(e) = n, and on longer
/// reduced words w = l_1 ... l_k
///
///   phi_n(w) = max( phi_{phi_n(l_1...l_{k-1})}(l_k),
///                   phi_{phi_n(l_2...l_k)}(l_1) ).
///
/// The raw recursion is exponential in the word length, so values are
/// memoized on (n, word). Memoized evaluation is thread-safe and
/// deterministic regardless of interleaving.
class PhiContext {
public:
  explicit PhiContext(std::shared_ptr<const IndexChain> chain);

  const IndexChain& chain() const { return *chain_; }
  std::shared_ptr<const IndexChain> chain_ptr() const { return chain_; }

  /// Value of the recursion above. Monotone nondecreasing in n and
  /// symmetric under inversion of w.
  std::uint64_t phi(std::uint64_t n, const ReducedWord& w) const;

  /// phi_n(reduce(g*h)): the U-threshold governing the right translate,
  /// i.e. the translated family assigns U_{phi_n(gh)} to g.
  std::uint64_t phi_threshold(std::uint64_t n, const ReducedWord& g, const ReducedWord& h) const;

  /// Full recursion tree, without memoization. Words longer than 12 letters
  /// are rejected (the tree is exponential).
  PhiTrace phi_explain(std::uint64_t n, const ReducedWord& w) const;

private:
  struct Key {
    std::uint64_t n;
    ReducedWord w;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return WordHash{}(k.w) * 1099511628211ull ^ k.n;
    }
  };

  std::uint64_t phi_locked(std::uint64_t n, const ReducedWord& w) const;

  std::shared_ptr<const IndexChain> chain_;
  mutable std::unordered_map<Key, std::uint64_t, KeyHash> memo_;
  mutable std::mutex mutex_;
};

/// Closed form n + index_sum(w). Conjectured equal to the recursion and
/// cross-validated against it exhaustively at desk scale; kept independent
/// of PhiContext so it can serve as the oracle for that check.
std::uint64_t phi_closed(std::uint64_t n, const ReducedWord& w);

}  // namespace freetop
