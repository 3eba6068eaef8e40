#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace freetop {

/// A decreasing chain U_0 = N >= U_1 >= U_2 >= ... of subsets of the natural
/// numbers with empty intersection and U_n \ U_{n+1} infinite, encoded by its
/// level function nu: m belongs to U_n iff nu(m) >= n.
class IndexChain {
public:
  virtual ~IndexChain() = default;

  virtual std::string id() const = 0;

  /// nu(m): the level of m. Finite for every m.
  virtual std::uint64_t level(std::uint64_t m) const = 0;

  /// i-th member (0-based, ascending) of U_t = { m : nu(m) >= t }.
  virtual std::uint64_t level_member(std::uint64_t t, std::uint64_t i) const = 0;

  /// i-th member (0-based, ascending) of the fiber { m : nu(m) == t }.
  virtual std::uint64_t fiber_member(std::uint64_t t, std::uint64_t i) const = 0;
};

/// nu(m) = b-adic valuation of m+1. The default chain is base 2 ("dyadic"):
/// nu(31) = 5, nu(0) = 0, nu(7) = 3. Fibers are infinite and levels are
/// finite everywhere, so all chain invariants hold.
class ValuationChain final : public IndexChain {
public:
  explicit ValuationChain(std::uint64_t base);

  std::string id() const override;
  std::uint64_t level(std::uint64_t m) const override;
  std::uint64_t level_member(std::uint64_t t, std::uint64_t i) const override;
  std::uint64_t fiber_member(std::uint64_t t, std::uint64_t i) const override;

  std::uint64_t base() const { return base_; }

private:
  std::uint64_t base_;
};

/// "dyadic" or "base:<b>" with b >= 2. Throws ParseError otherwise.
std::shared_ptr<const IndexChain> make_chain(const std::string& id);

}  // namespace freetop
