#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace freetop {

/// A finite group given by its Cayley table: table[i][j] = index of g_i*g_j.
/// from_table validates the axioms (identity, inverses, associativity) and
/// throws ParseError on malformed input.
class FiniteGroup {
public:
  static FiniteGroup from_table(std::vector<std::vector<std::uint16_t>> table,
                                std::vector<std::string> names = {});
  static FiniteGroup cyclic(std::uint32_t n);
  /// S_n, elements in lexicographic one-line order; (a*b)(x) = a(b(x)).
  static FiniteGroup symmetric(std::uint32_t n);
  /// Plain-text table: one row per line, whitespace-separated indices.
  static FiniteGroup parse(std::istream& in);

  std::uint16_t order() const { return static_cast<std::uint16_t>(table_.size()); }
  std::uint16_t identity() const { return identity_; }
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return table_[a][b]; }
  std::uint16_t inv(std::uint16_t a) const { return inverse_[a]; }
  bool is_abelian() const { return abelian_; }
  const std::string& name(std::uint16_t a) const { return names_[a]; }

private:
  FiniteGroup() = default;

  std::vector<std::vector<std::uint16_t>> table_;
  std::vector<std::uint16_t> inverse_;
  std::vector<std::string> names_;
  std::uint16_t identity_ = 0;
  bool abelian_ = false;
};

/// One product of distinct-slot factors that escaped V_k.
struct BkViolation {
  std::vector<std::uint64_t> slots;
  std::vector<std::uint16_t> elements;
  std::uint16_t product = 0;
};

struct BkReport {
  std::uint64_t k = 0;
  std::uint32_t max_factors = 0;
  std::uint64_t products_checked = 0;
  bool orderings_collapsed = false;  // abelian: factor order irrelevant
  std::vector<BkViolation> violations;  // capped at 32
  std::uint64_t violation_count = 0;
};

/// Brute-force check of the Birkhoff-Kakutani containment on a finite
/// chain V_0 >= V_1 >= ... of element sets: every product of at most
/// max_factors factors drawn from sets with distinct indices >= k+2 must lie
/// in V_k. The hypotheses (e in V_n, V_n symmetric, V_{n+1}^2 contained in
/// V_n) are validated first; HypothesisViolation is thrown if they fail.
BkReport bk_check_finite(const FiniteGroup& group,
                         const std::vector<std::vector<std::uint16_t>>& chain,
                         std::uint64_t k, std::uint32_t max_factors);

}  // namespace freetop
