#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "freetop/rng.hpp"
#include "freetop/target_groups.hpp"
#include "freetop/words.hpp"

namespace freetop {

/// A finite set of truncated points of the countable power G^N: each point
/// carries d >= 1 coordinates. The Boolean algebra of clopen pieces is the
/// full powerset of the sample, so a partition cell is just a point subset.
struct SampleSet {
  std::vector<std::vector<GroupElem>> points;
  std::uint32_t coord_dim = 1;

  std::size_t size() const { return points.size(); }

  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

/// A map determined by a partition of the sample and one coordinate word
/// per cell: on a cell the map evaluates its word, substituting the point's
/// coordinates for the word's generator indices. These are the
/// piecewise-projection maps, represented in canonical form (reduced words,
/// equal-word cells merged, cells numbered by first occurrence).
class PiecewiseMap {
public:
  /// Null map, only usable as an assignment target.
  PiecewiseMap() = default;

  /// Same word everywhere (one cell).
  static PiecewiseMap constant(std::shared_ptr<const SampleSet> sample, ReducedWord word);
  /// The projection p_c onto coordinate c.
  static PiecewiseMap projection(std::shared_ptr<const SampleSet> sample, std::uint32_t coord);
  /// Explicit cells: cell_of_point[i] indexes into words. Letters must
  /// reference valid coordinates (< coord_dim).
  static PiecewiseMap from_cells(std::shared_ptr<const SampleSet> sample,
                                 std::vector<std::uint32_t> cell_of_point,
                                 std::vector<ReducedWord> words);

  const SampleSet& sample() const { return *sample_; }
  std::shared_ptr<const SampleSet> sample_ptr() const { return sample_; }
  std::uint32_t cell_count() const { return static_cast<std::uint32_t>(words_.size()); }
  std::uint32_t cell_of(std::size_t point) const { return cells_[point]; }
  const ReducedWord& word_of_cell(std::uint32_t cell) const { return words_[cell]; }

  /// Value at the point with this index.
  GroupElem eval(const GroupOracle& oracle, std::size_t point_index) const;
  /// Value at a point given by coordinates; UnknownPoint if absent.
  GroupElem eval_at(const GroupOracle& oracle, const std::vector<GroupElem>& coords) const;

  friend bool operator==(const PiecewiseMap&, const PiecewiseMap&) = default;

private:
  void canonicalize();

  std::shared_ptr<const SampleSet> sample_;
  std::vector<std::uint32_t> cells_;   // per point
  std::vector<ReducedWord> words_;     // per cell

  friend PiecewiseMap k_mul(const PiecewiseMap&, const PiecewiseMap&);
  friend PiecewiseMap k_inv(const PiecewiseMap&);
};

/// Pointwise product: common refinement of the partitions, wordwise
/// concatenation. eval(k_mul(f,g), x) = eval(f,x) * eval(g,x).
/// Throws SampleSetMismatch when the maps live on different samples.
PiecewiseMap k_mul(const PiecewiseMap& f, const PiecewiseMap& g);
PiecewiseMap k_inv(const PiecewiseMap& f);

/// f(X) inside V_u on the whole (finite) sample.
bool w_u_member(const GroupOracle& oracle, const PiecewiseMap& f, std::uint64_t u_index);

/// f inside the intersection of the conjugated neighborhoods g_i W_U
/// g_i^{-1}; with no conjugators this is the plain W_U test.
bool invariant_nbhd_member(const GroupOracle& oracle, const PiecewiseMap& f,
                           const std::vector<PiecewiseMap>& conjugators,
                           std::uint64_t u_index);

/// Index v with a^{-1} V_v^3 a inside V_u: conj_bound chased through two
/// squarings (a cube is a square times one more factor). Sound for any
/// adapter, not necessarily minimal.
std::uint64_t cube_bound(const GroupOracle& oracle, const GroupElem& a, std::uint64_t u_index);

/// Everything the openness construction produced, for reporting.
struct OpennessTranscript {
  std::vector<GroupElem> a;        // a_i = g_i(x)
  std::uint64_t v_index = 0;       // chosen V
  GroupElem b;                     // target value, b in V
  PiecewiseMap witness;            // b-word on {x}, identity elsewhere
  bool eval_matches = false;       // witness(x) == b
  bool invariant_member = false;   // witness in every g_i W_U g_i^{-1}
  std::uint64_t intermediate_checks = 0;  // per-conjugator containments
  std::uint64_t cube_samples = 0;  // sampled a^{-1} V^3 a subset U checks
};

/// The finite-scale openness construction at sample point x: choose V from
/// cube_bound over the a_i, demand b = b_word(x) in V (else BNotInV), build
/// the witness equal to b_word on {x} and identity elsewhere, then verify
/// in-line that it lies in the invariant neighborhood and hits b. A failed
/// verification is a defect and throws Error.
OpennessTranscript openness_witness(const GroupOracle& oracle,
                                    std::shared_ptr<const SampleSet> sample,
                                    std::size_t x_index,
                                    const std::vector<PiecewiseMap>& conjugators,
                                    std::uint64_t u_index, const ReducedWord& b_word);

/// One seeded random configuration for the openness check.
struct PwScenario {
  std::shared_ptr<const SampleSet> sample;
  std::size_t x_index = 0;
  std::vector<PiecewiseMap> conjugators;
  std::uint64_t u_index = 0;
  ReducedWord b_word;  // evaluates into V at x by construction
};
PwScenario make_pw_scenario(const GroupOracle& oracle, Rng& rng, std::uint32_t max_sample,
                            std::uint32_t max_dim, std::uint32_t max_conjugators,
                            std::uint64_t max_u);

}  // namespace freetop
