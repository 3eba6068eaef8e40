#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freetop/finite_group.hpp"

namespace freetop {

/// Exact dyadic rational num / 2^exp, canonical: num odd or exp == 0.
struct DyadicRational {
  std::int64_t num = 0;
  std::uint32_t exp = 0;

  static DyadicRational make(std::int64_t num, std::uint32_t exp);
  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
};

/// Finite-support permutation of N; map_[i] = image of i, identity beyond,
/// trailing fixed points trimmed (canonical form).
class Permutation {
public:
  Permutation() = default;
  static Permutation from_images(std::vector<std::uint32_t> images);
  static Permutation transposition(std::uint32_t a, std::uint32_t b);

  std::uint32_t apply(std::uint32_t x) const {
    return x < map_.size() ? map_[x] : x;
  }
  /// (a*b)(x) = a(b(x)).
  friend Permutation compose(const Permutation& a, const Permutation& b);
  Permutation inverse() const;
  /// 1 + largest moved point, 0 for the identity.
  std::uint32_t support_bound() const { return static_cast<std::uint32_t>(map_.size()); }
  bool is_identity() const { return map_.empty(); }
  /// Shift the whole support up by `offset`.
  Permutation shifted(std::uint32_t offset) const;

  std::string cycles() const;
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) = default;

private:
  std::vector<std::uint32_t> map_;
};

/// Element of whichever concrete target group an oracle presents.
using GroupElem = std::variant<std::int64_t, DyadicRational, Permutation, std::uint16_t>;

/// An oracle-presented countable metrizable group: enumeration of the group
/// and of each basis set V_n, multiplication, and analytic bounds for
/// conjugation and squaring. Basis sets satisfy V_0 = G, V_n symmetric,
/// e = basis_enumerate(n, 0), and the enumeration g_1 = e, g_2, ... is
/// injective. Containment of infinite sets is never decided by search:
/// conj_bound and sq_bound are supplied analytically per adapter.
///
/// Oracles are stateless or internally cached; calls are safe from
/// concurrent threads and deterministic.
class GroupOracle {
public:
  virtual ~GroupOracle() = default;

  virtual std::string id() const = 0;
  virtual GroupElem identity() const = 0;
  /// g_m for m >= 1; g_1 = e. Throws DepthExceeded past a finite group.
  virtual GroupElem enumerate(std::uint64_t m) const = 0;
  /// Number of elements if the group is finite.
  virtual std::optional<std::uint64_t> enum_size() const { return std::nullopt; }
  virtual GroupElem mul(const GroupElem& a, const GroupElem& b) const = 0;
  virtual GroupElem inv(const GroupElem& a) const = 0;

  virtual bool basis_member(std::uint64_t n, const GroupElem& g) const = 0;
  /// Injective enumeration of V_n with basis_enumerate(n, 0) = e.
  /// Throws DepthExceeded past a finite V_n (see basis_size).
  virtual GroupElem basis_enumerate(std::uint64_t n, std::uint64_t i) const = 0;
  virtual std::optional<std::uint64_t> basis_size(std::uint64_t) const {
    return std::nullopt;
  }

  /// j with g^{-1} V_j g and g V_j g^{-1} both inside V_n.
  virtual std::uint64_t conj_bound(const GroupElem& g, std::uint64_t n) const = 0;
  /// j with V_j^2 inside V_n.
  virtual std::uint64_t sq_bound(std::uint64_t n) const = 0;
  /// Exact scale theta_g(n) = min { m : g^{-1}V_m g u g V_m g^{-1} in V_n }
  /// when the adapter can compute the true minimum, nullopt otherwise.
  virtual std::optional<std::uint64_t> theta_exact(const GroupElem& g,
                                                   std::uint64_t n) const = 0;

  bool eq(const GroupElem& a, const GroupElem& b) const { return a == b; }
  virtual std::string format(const GroupElem& g) const = 0;
};

/// (Z, +) with V_n = p^n Z. Abelian: all bounds are the identity and the
/// scale is exactly n.
std::shared_ptr<const GroupOracle> adapter_int_padic(std::uint64_t p);

/// Finitary permutations of N with V_n the pointwise stabilizer of
/// {0..n-1}. The designated nontrivial-scale adapter: theta_exact(g, n) =
/// max over i < n of max(g(i), g^{-1}(i)) + 1 (0 for n = 0), which is the
/// true minimum.
std::shared_ptr<const GroupOracle> adapter_sym_fin();

/// (dyadic rationals, +) with V_0 = G and V_n = { q : |q| < 2^{-n} } for
/// n >= 1. Balls, not subgroups: sq_bound(n) = n + 1.
std::shared_ptr<const GroupOracle> adapter_dyadic_rationals();

/// Discrete topology on a finite group: V_0 = G, V_n = {e} for n >= 1.
std::shared_ptr<const GroupOracle> adapter_finite(FiniteGroup group, std::string label = "");

/// "zp2" | "zp3" | "symfin" | "dyadic" | "finite:<file>" | "finite:s3".
std::shared_ptr<const GroupOracle> make_oracle(const std::string& id);

}  // namespace freetop
