#include "freetop/pw.hpp"

#include <algorithm>
#include <map>

#include "freetop/errors.hpp"

namespace freetop {

namespace {

void require_words_fit(const SampleSet& sample, const std::vector<ReducedWord>& words) {
  for (const ReducedWord& w : words) {
    for (const Letter& l : w.letters()) {
      if (l.index >= sample.coord_dim) {
        throw Error("cell word references coordinate " + std::to_string(l.index) +
                    " but points have " + std::to_string(sample.coord_dim));
      }
    }
  }
}

}  // namespace

PiecewiseMap PiecewiseMap::constant(std::shared_ptr<const SampleSet> sample, ReducedWord word) {
  return from_cells(std::move(sample), {}, {std::move(word)});
}

PiecewiseMap PiecewiseMap::projection(std::shared_ptr<const SampleSet> sample,
                                      std::uint32_t coord) {
  return constant(std::move(sample), ReducedWord::generator(coord));
}

PiecewiseMap PiecewiseMap::from_cells(std::shared_ptr<const SampleSet> sample,
                                      std::vector<std::uint32_t> cell_of_point,
                                      std::vector<ReducedWord> words) {
  if (!sample || sample->size() == 0 || sample->coord_dim == 0) {
    throw Error("piecewise map needs a nonempty sample with d >= 1");
  }
  if (cell_of_point.empty()) cell_of_point.assign(sample->size(), 0);
  if (cell_of_point.size() != sample->size()) {
    throw Error("cell assignment size does not match the sample");
  }
  if (words.empty()) throw Error("piecewise map needs at least one cell word");
  for (std::uint32_t c : cell_of_point) {
    if (c >= words.size()) throw Error("cell id out of range");
  }
  require_words_fit(*sample, words);

  PiecewiseMap f;
  f.sample_ = std::move(sample);
  f.cells_ = std::move(cell_of_point);
  f.words_ = std::move(words);
  f.canonicalize();
  return f;
}

void PiecewiseMap::canonicalize() {
  // merge cells with equal words, renumber by first occurrence over points
  std::vector<std::uint32_t> new_id(words_.size(), UINT32_MAX);
  std::vector<ReducedWord> new_words;
  std::vector<std::uint32_t> new_cells(cells_.size());
  for (std::size_t p = 0; p < cells_.size(); ++p) {
    const ReducedWord& w = words_[cells_[p]];
    std::uint32_t id = UINT32_MAX;
    for (std::uint32_t q = 0; q < new_words.size(); ++q) {
      if (new_words[q] == w) {
        id = q;
        break;
      }
    }
    if (id == UINT32_MAX) {
      id = static_cast<std::uint32_t>(new_words.size());
      new_words.push_back(w);
    }
    new_cells[p] = id;
  }
  cells_ = std::move(new_cells);
  words_ = std::move(new_words);
}

GroupElem PiecewiseMap::eval(const GroupOracle& oracle, std::size_t point_index) const {
  if (!sample_) throw Error("eval on a null piecewise map");
  if (point_index >= sample_->size()) throw UnknownPoint("point index out of range");
  const std::vector<GroupElem>& coords = sample_->points[point_index];
  GroupElem acc = oracle.identity();
  for (const Letter& l : words_[cells_[point_index]].letters()) {
    GroupElem v = coords[l.index];
    if (l.sign < 0) v = oracle.inv(v);
    acc = oracle.mul(acc, v);
  }
  return acc;
}

GroupElem PiecewiseMap::eval_at(const GroupOracle& oracle,
                                const std::vector<GroupElem>& coords) const {
  for (std::size_t p = 0; p < sample_->size(); ++p) {
    if (sample_->points[p] == coords) return eval(oracle, p);
  }
  throw UnknownPoint("point is not in the sample set");
}

PiecewiseMap k_mul(const PiecewiseMap& f, const PiecewiseMap& g) {
  if (!(f.sample() == g.sample())) {
    throw SampleSetMismatch("k_mul: maps live on different sample sets");
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> refined;
  std::vector<std::uint32_t> cells(f.cells_.size());
  std::vector<ReducedWord> words;
  for (std::size_t p = 0; p < f.cells_.size(); ++p) {
    const auto key = std::make_pair(f.cells_[p], g.cells_[p]);
    auto it = refined.find(key);
    if (it == refined.end()) {
      it = refined.emplace(key, static_cast<std::uint32_t>(words.size())).first;
      words.push_back(multiply(f.words_[key.first], g.words_[key.second]));
    }
    cells[p] = it->second;
  }
  return PiecewiseMap::from_cells(f.sample_ptr(), std::move(cells), std::move(words));
}

PiecewiseMap k_inv(const PiecewiseMap& f) {
  std::vector<ReducedWord> words;
  words.reserve(f.words_.size());
  for (const ReducedWord& w : f.words_) words.push_back(invert(w));
  return PiecewiseMap::from_cells(f.sample_ptr(), f.cells_, std::move(words));
}

bool w_u_member(const GroupOracle& oracle, const PiecewiseMap& f, std::uint64_t u_index) {
  for (std::size_t p = 0; p < f.sample().size(); ++p) {
    if (!oracle.basis_member(u_index, f.eval(oracle, p))) return false;
  }
  return true;
}

bool invariant_nbhd_member(const GroupOracle& oracle, const PiecewiseMap& f,
                           const std::vector<PiecewiseMap>& conjugators,
                           std::uint64_t u_index) {
  if (conjugators.empty()) return w_u_member(oracle, f, u_index);
  for (const PiecewiseMap& g : conjugators) {
    if (!w_u_member(oracle, k_mul(k_mul(k_inv(g), f), g), u_index)) return false;
  }
  return true;
}

std::uint64_t cube_bound(const GroupOracle& oracle, const GroupElem& a,
                         std::uint64_t u_index) {
  const std::uint64_t c = oracle.conj_bound(a, u_index);  // conj(V_c) in V_u
  const std::uint64_t t = oracle.sq_bound(c);             // V_t^2 in V_c
  const std::uint64_t s = std::max(oracle.sq_bound(t), t);
  // V_s^3 = V_s^2 * V_s  in  V_t * V_t  in  V_c, so a^{-1} V_s^3 a in V_u.
  return s;
}

OpennessTranscript openness_witness(const GroupOracle& oracle,
                                    std::shared_ptr<const SampleSet> sample,
                                    std::size_t x_index,
                                    const std::vector<PiecewiseMap>& conjugators,
                                    std::uint64_t u_index, const ReducedWord& b_word) {
  if (!sample || x_index >= sample->size()) throw UnknownPoint("x outside the sample");
  OpennessTranscript tr;

  for (const PiecewiseMap& g : conjugators) {
    if (!(g.sample() == *sample)) {
      throw SampleSetMismatch("openness_witness: conjugator on a different sample");
    }
    tr.a.push_back(g.eval(oracle, x_index));
  }

  tr.v_index = cube_bound(oracle, oracle.identity(), u_index);
  for (const GroupElem& ai : tr.a) {
    tr.v_index = std::max(tr.v_index, cube_bound(oracle, ai, u_index));
  }

  // b must already sit inside V; the caller shrinks it otherwise.
  const PiecewiseMap b_map = PiecewiseMap::constant(sample, b_word);
  tr.b = b_map.eval(oracle, x_index);
  if (!oracle.basis_member(tr.v_index, tr.b)) {
    throw BNotInV("b = " + oracle.format(tr.b) + " lies outside V_" +
                  std::to_string(tr.v_index));
  }

  // witness: b_word on {x}, identity elsewhere
  std::vector<std::uint32_t> cells(sample->size(), 0);
  cells[x_index] = 1;
  tr.witness = PiecewiseMap::from_cells(sample, std::move(cells),
                                        {ReducedWord{}, b_word});

  // ---- in-line verification; failures here are defects ----
  tr.eval_matches = tr.witness.eval(oracle, x_index) == tr.b;
  tr.invariant_member = invariant_nbhd_member(oracle, tr.witness, conjugators, u_index);
  if (!tr.eval_matches || !tr.invariant_member) {
    throw Error("openness witness failed its own verification");
  }

  // Per-conjugator intermediate containments at y = x:
  // g_i(x) in V*a_i, f(x) in V, and a_i^{-1} b a_i in V_u.
  for (std::size_t i = 0; i < conjugators.size(); ++i) {
    const GroupElem gx = conjugators[i].eval(oracle, x_index);
    const GroupElem ai = tr.a[i];
    const bool translate_ok =
        oracle.basis_member(tr.v_index, oracle.mul(gx, oracle.inv(ai)));
    const bool value_ok = oracle.basis_member(tr.v_index, tr.b);
    const bool conj_ok = oracle.basis_member(
        u_index, oracle.mul(oracle.mul(oracle.inv(ai), tr.b), ai));
    if (!translate_ok || !value_ok || !conj_ok) {
      throw Error("openness intermediate containment failed");
    }
    tr.intermediate_checks += 3;
  }

  // Sampled cube containment a_i^{-1} V^3 a_i in V_u.
  const std::uint64_t sample_count =
      std::min<std::uint64_t>(3, oracle.basis_size(tr.v_index).value_or(3));
  std::vector<GroupElem> vs;
  for (std::uint64_t i = 0; i < sample_count; ++i) {
    vs.push_back(oracle.basis_enumerate(tr.v_index, i));
  }
  std::vector<GroupElem> hubs = tr.a;
  if (hubs.empty()) hubs.push_back(oracle.identity());
  for (const GroupElem& ai : hubs) {
    for (const GroupElem& v1 : vs) {
      for (const GroupElem& v2 : vs) {
        for (const GroupElem& v3 : vs) {
          const GroupElem cube = oracle.mul(oracle.mul(v1, v2), v3);
          const GroupElem moved = oracle.mul(oracle.mul(oracle.inv(ai), cube), ai);
          if (!oracle.basis_member(u_index, moved)) {
            throw Error("sampled cube containment failed");
          }
          ++tr.cube_samples;
        }
      }
    }
  }
  return tr;
}

PwScenario make_pw_scenario(const GroupOracle& oracle, Rng& rng, std::uint32_t max_sample,
                            std::uint32_t max_dim, std::uint32_t max_conjugators,
                            std::uint64_t max_u) {
  PwScenario sc;
  const std::uint32_t dim = 1 + static_cast<std::uint32_t>(rng.below(max_dim));
  const std::uint32_t count = 1 + static_cast<std::uint32_t>(rng.below(max_sample));
  sc.u_index = rng.below(max_u + 1);

  auto sample = std::make_shared<SampleSet>();
  sample->coord_dim = dim;
  for (std::uint32_t p = 0; p < count; ++p) {
    std::vector<GroupElem> coords;
    for (std::uint32_t c = 0; c < dim; ++c) {
      if (rng.coin()) {
        const std::uint64_t span = std::min<std::uint64_t>(
            10, oracle.enum_size().value_or(10));
        coords.push_back(oracle.enumerate(1 + rng.below(span)));
      } else {
        // a coordinate from a deep basis set keeps V cap G_x nontrivial
        const std::uint64_t level = sc.u_index + 2 + rng.below(3);
        const std::uint64_t idx =
            rng.below(std::min<std::uint64_t>(oracle.basis_size(level).value_or(6), 6));
        coords.push_back(oracle.basis_enumerate(level, idx));
      }
    }
    sample->points.push_back(std::move(coords));
  }
  sc.sample = sample;
  sc.x_index = rng.below(count);

  const std::uint32_t n_conj = static_cast<std::uint32_t>(rng.below(max_conjugators + 1));
  for (std::uint32_t i = 0; i < n_conj; ++i) {
    std::vector<std::uint32_t> cells(count);
    const std::uint32_t cell_count = 1 + static_cast<std::uint32_t>(rng.below(count));
    for (std::uint32_t p = 0; p < count; ++p) {
      cells[p] = static_cast<std::uint32_t>(rng.below(cell_count));
    }
    std::vector<ReducedWord> words;
    for (std::uint32_t c = 0; c < cell_count; ++c) {
      std::vector<Letter> raw;
      const std::uint64_t len = rng.below(3);
      for (std::uint64_t l = 0; l < len; ++l) {
        raw.push_back(Letter{static_cast<std::uint32_t>(rng.below(dim)),
                             static_cast<std::int8_t>(rng.coin() ? 1 : -1)});
      }
      words.push_back(ReducedWord::reduce(raw));
    }
    sc.conjugators.push_back(PiecewiseMap::from_cells(sample, std::move(cells),
                                                      std::move(words)));
  }

  // choose b_word with value inside V at x: scan short words, identity as
  // the guaranteed fallback (e lies in every V)
  std::uint64_t v_index = cube_bound(oracle, oracle.identity(), sc.u_index);
  for (const PiecewiseMap& g : sc.conjugators) {
    v_index = std::max(v_index, cube_bound(oracle, g.eval(oracle, sc.x_index), sc.u_index));
  }
  const std::vector<GroupElem>& x = sc.sample->points[sc.x_index];
  sc.b_word = ReducedWord{};
  for (std::uint32_t c = 0; c < dim && sc.b_word.empty(); ++c) {
    for (int sign : {+1, -1}) {
      GroupElem v = x[c];
      if (sign < 0) v = oracle.inv(v);
      if (oracle.basis_member(v_index, v) && !(v == oracle.identity())) {
        sc.b_word = ReducedWord::generator(c, sign);
        break;
      }
    }
  }
  return sc;
}

}  // namespace freetop
