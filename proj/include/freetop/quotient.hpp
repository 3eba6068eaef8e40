#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "freetop/chain.hpp"
#include "freetop/rng.hpp"
#include "freetop/scale.hpp"
#include "freetop/target_groups.hpp"
#include "freetop/words.hpp"

namespace freetop {

/// Indices j_0 = 0 < j_1 < j_2 < ... into an oracle's raw basis. The
/// refined basis V'_n = V_{j_n} satisfies V'_{n+1}^2 inside V'_n and, for
/// every enumerated g_m with m <= n, conjugation of V'_{n+1} by g_m lands in
/// V'_n. That containment is what keeps every scale offset finite.
struct RefinedBasis {
  std::vector<std::uint64_t> indices;

  std::uint32_t depth() const { return static_cast<std::uint32_t>(indices.size()); }
  std::uint64_t raw(std::uint64_t n) const;  // j_n; DepthExceeded past depth
  /// Smallest refined index m with j_m >= raw_index; DepthExceeded if none.
  std::uint64_t from_raw(std::uint64_t raw_index) const;
};

/// j_{n+1} = max(sq_bound(j_n), max_{1 <= m <= n} conj_bound(g_m, j_n),
/// j_n + 1). A sampled conjugation check re-validates the construction and
/// throws OracleUnsound on contradiction.
RefinedBasis build_refined_basis(const GroupOracle& oracle, std::uint32_t depth);

/// Scale data of one element against the refined basis, computed up to the
/// horizon n_max and valid on that range only.
struct ScaleProfile {
  std::vector<std::uint64_t> theta_upper;  // theta(n) for n <= n_max
  std::uint64_t m = 0;                     // max(0, max_n theta(n) - n)
  bool exact = false;                      // true when theta_exact backed it
};
ScaleProfile scale_offsets(const GroupOracle& oracle, const RefinedBasis& basis,
                           const GroupElem& g, std::uint32_t n_max);

/// The choice of Lemma-of-the-surjection at step k given the full history
/// 0..k-1: the smallest enumeration index not yet chosen is taken when its
/// m-value allows, otherwise the default index 0. m_values(0) must be 0, so
/// m_values(result) <= k always holds.
class GreedySurjection {
public:
  /// size: number of valid enumeration indices when the target is finite.
  explicit GreedySurjection(std::optional<std::uint64_t> size = std::nullopt)
      : size_(size) {}

  /// Feed thresholds k in ascending order; m_of(i) gives the m-value of
  /// enumeration index i.
  template <typename MValues>
  std::uint64_t pick(std::uint64_t k, MValues&& m_of) {
    if (!size_ || candidate_ < *size_) {
      if (m_of(candidate_) <= k) return chosen(candidate_++);
    }
    return 0;
  }

  std::uint64_t next_candidate() const { return candidate_; }

private:
  std::uint64_t chosen(std::uint64_t i) { return i; }
  std::uint64_t candidate_ = 0;
  std::optional<std::uint64_t> size_;
};

/// Convenience form of the recursion over U = {0, 1, 2, ...}: the index
/// chosen at step k for a given m-value sequence.
std::uint64_t greedy_surjection(const std::vector<std::uint64_t>& m_values, std::uint64_t k);

struct Eq1Report {
  std::uint64_t k = 0, n = 0;
  std::uint64_t phi_nk = 0;     // n + k
  std::uint64_t m_fk = 0;       // scale offset of f(k)
  std::uint64_t theta = 0;      // theta_{f(k)}(n), exact or upper bound
  bool theta_is_exact = false;
  std::int64_t slack1 = 0;  // phi_nk - (n + m_fk)
  std::int64_t slack2 = 0;  // (n + m_fk) - theta
  bool holds = false;
};

enum class LemmaVerdict { Pass, Inconclusive, Fail };

struct MainLemmaReport {
  LemmaVerdict verdict = LemmaVerdict::Fail;
  std::uint64_t theta = 0;
  bool theta_is_exact = false;
  std::uint64_t phi = 0;
  std::string image;  // formatted f_bar(w)
};

struct ContinuityReport {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  std::string first_violation;  // word text, empty if none
};

struct CoverEntry {
  std::uint64_t index = 0;  // position in V'_n enumeration
  std::uint64_t k = 0;      // fiber element with f(k) = that element
};
struct OpennessReport {
  std::vector<CoverEntry> covered;
  std::uint64_t max_k = 0;
  std::uint64_t requested = 0;  // prefix actually checked (clipped for finite V)
  bool complete = false;
};

/// The quotient pipeline: a refined basis for the oracle, scale offsets
/// against it, per-fiber greedy surjections U_n \ U_{n+1} -> V'_n, their
/// amalgam f : N -> G and the homomorphic extension f_bar : F(N) -> G.
///
/// Construction state is an append-only replay of the greedy choices;
/// queries are memoized and safe to interleave.
class QuotientMap {
public:
  QuotientMap(std::shared_ptr<const GroupOracle> oracle,
              std::shared_ptr<const IndexChain> chain, std::uint32_t depth,
              std::uint32_t n_max);

  const GroupOracle& oracle() const { return *oracle_; }
  const IndexChain& chain() const { return *chain_; }
  const RefinedBasis& basis() const { return basis_; }
  std::uint32_t n_max() const { return n_max_; }

  /// Enumeration index within V'_{nu(k)} chosen for k.
  std::uint64_t f_index(std::uint64_t k);
  /// amalgamated f(k), an element of V'_{nu(k)}.
  GroupElem f(std::uint64_t k);
  /// Homomorphic extension: product of f(index)^{sign} over the letters.
  GroupElem bar_f(const ReducedWord& w);

  /// Scale offset m(v) of an element of V'_level (cached per index).
  std::uint64_t m_of_basis_element(std::uint64_t level, std::uint64_t index);

  Eq1Report verify_chain_eq1(std::uint64_t k, std::uint64_t n);
  MainLemmaReport verify_main_lemma(const PhiContext& ctx, const ReducedWord& w,
                                    std::uint64_t n);
  ContinuityReport continuity_check(const PhiContext& ctx, std::uint64_t n,
                                    std::uint64_t samples, Rng& rng);
  OpennessReport openness_check(std::uint64_t n, std::uint64_t prefix);

  /// Replay log: the (k, index) choices made on each fiber so far.
  const std::map<std::uint64_t, std::vector<CoverEntry>>& choice_log() const {
    return choices_;
  }

private:
  struct FiberState {
    GreedySurjection greedy;
    std::uint64_t next_pos = 0;  // next fiber position to process
    std::map<std::uint64_t, std::uint64_t> value;  // k -> enum index
    explicit FiberState(std::optional<std::uint64_t> size) : greedy(size) {}
  };

  FiberState& fiber(std::uint64_t level);
  void advance_fiber(std::uint64_t level, std::uint64_t k);
  std::uint64_t theta_refined(const GroupElem& g, std::uint64_t n, bool& exact) const;

  std::shared_ptr<const GroupOracle> oracle_;
  std::shared_ptr<const IndexChain> chain_;
  RefinedBasis basis_;
  std::uint32_t n_max_;
  std::map<std::uint64_t, FiberState> fibers_;
  std::map<std::uint64_t, std::vector<std::uint64_t>> m_cache_;  // level -> m per index
  std::map<std::uint64_t, std::vector<CoverEntry>> choices_;
};

}  // namespace freetop
