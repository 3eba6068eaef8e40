#include "freetop/quotient.hpp"

#include <algorithm>
#include <limits>

#include "freetop/errors.hpp"
#include "freetop/neighborhoods.hpp"

namespace freetop {

std::uint64_t RefinedBasis::raw(std::uint64_t n) const {
  if (n >= indices.size()) {
    throw DepthExceeded("refined basis depth " + std::to_string(indices.size()) +
                        " exceeded at n=" + std::to_string(n));
  }
  return indices[n];
}

std::uint64_t RefinedBasis::from_raw(std::uint64_t raw_index) const {
  const auto it = std::lower_bound(indices.begin(), indices.end(), raw_index);
  if (it == indices.end()) {
    throw DepthExceeded("refined basis depth " + std::to_string(indices.size()) +
                        " cannot reach raw index " + std::to_string(raw_index));
  }
  return static_cast<std::uint64_t>(it - indices.begin());
}

RefinedBasis build_refined_basis(const GroupOracle& oracle, std::uint32_t depth) {
  if (depth < 1) throw Error("build_refined_basis: depth must be >= 1");
  RefinedBasis basis;
  basis.indices.push_back(0);
  const std::uint64_t enum_cap = oracle.enum_size().value_or(
      std::numeric_limits<std::uint64_t>::max());
  for (std::uint32_t n = 0; n + 1 < depth; ++n) {
    const std::uint64_t jn = basis.indices.back();
    std::uint64_t next = std::max(oracle.sq_bound(jn), jn + 1);
    for (std::uint64_t m = 1; m <= n && m <= enum_cap; ++m) {
      next = std::max(next, oracle.conj_bound(oracle.enumerate(m), jn));
    }
    basis.indices.push_back(next);
  }

  // Post-hoc sampled soundness: a few elements of each V'_{n+1}, conjugated
  // by the enumerated prefix, must land in V'_n.
  for (std::uint32_t n = 0; n + 1 < depth && n <= 4; ++n) {
    const std::uint64_t jn = basis.indices[n];
    const std::uint64_t jn1 = basis.indices[n + 1];
    const std::uint64_t sample = std::min<std::uint64_t>(
        8, oracle.basis_size(jn1).value_or(8));
    for (std::uint64_t m = 1; m <= n && m <= enum_cap; ++m) {
      const GroupElem g = oracle.enumerate(m);
      const GroupElem gi = oracle.inv(g);
      for (std::uint64_t i = 0; i < sample; ++i) {
        const GroupElem v = oracle.basis_enumerate(jn1, i);
        if (!oracle.basis_member(jn, oracle.mul(oracle.mul(gi, v), g)) ||
            !oracle.basis_member(jn, oracle.mul(oracle.mul(g, v), gi))) {
          throw OracleUnsound(oracle.id() + ": conj_bound failed post-hoc at n=" +
                              std::to_string(n) + ", m=" + std::to_string(m));
        }
      }
    }
    // squaring spot-check
    for (std::uint64_t i = 0; i < sample; ++i) {
      for (std::uint64_t j = 0; j < sample; ++j) {
        const GroupElem v = oracle.basis_enumerate(jn1, i);
        const GroupElem w = oracle.basis_enumerate(jn1, j);
        if (!oracle.basis_member(jn, oracle.mul(v, w))) {
          throw OracleUnsound(oracle.id() + ": sq_bound failed post-hoc at n=" +
                              std::to_string(n));
        }
      }
    }
  }
  return basis;
}

ScaleProfile scale_offsets(const GroupOracle& oracle, const RefinedBasis& basis,
                           const GroupElem& g, std::uint32_t n_max) {
  ScaleProfile profile;
  profile.exact = true;
  profile.theta_upper.reserve(n_max + 1);
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    const std::uint64_t jn = basis.raw(n);
    std::uint64_t raw;
    if (auto exact = oracle.theta_exact(g, jn)) {
      raw = *exact;
    } else {
      raw = oracle.conj_bound(g, jn);
      profile.exact = false;
    }
    const std::uint64_t theta = basis.from_raw(raw);
    profile.theta_upper.push_back(theta);
    if (theta > n) profile.m = std::max(profile.m, theta - n);
  }
  return profile;
}

std::uint64_t greedy_surjection(const std::vector<std::uint64_t>& m_values, std::uint64_t k) {
  if (m_values.empty() || m_values[0] != 0) {
    throw Error("greedy_surjection: m_values(0) must be 0");
  }
  GreedySurjection greedy(m_values.size());
  auto m_of = [&](std::uint64_t i) { return m_values[i]; };
  std::uint64_t last = 0;
  for (std::uint64_t step = 0; step <= k; ++step) last = greedy.pick(step, m_of);
  return last;
}

QuotientMap::QuotientMap(std::shared_ptr<const GroupOracle> oracle,
                         std::shared_ptr<const IndexChain> chain, std::uint32_t depth,
                         std::uint32_t n_max)
    : oracle_(std::move(oracle)),
      chain_(std::move(chain)),
      basis_(build_refined_basis(*oracle_, depth)),
      n_max_(n_max) {
  if (depth <= n_max) throw Error("QuotientMap: depth must exceed the scale horizon n_max");
}

QuotientMap::FiberState& QuotientMap::fiber(std::uint64_t level) {
  auto it = fibers_.find(level);
  if (it == fibers_.end()) {
    const std::uint64_t jn = basis_.raw(level);
    it = fibers_.emplace(level, FiberState(oracle_->basis_size(jn))).first;
  }
  return it->second;
}

std::uint64_t QuotientMap::m_of_basis_element(std::uint64_t level, std::uint64_t index) {
  auto& cache = m_cache_[level];
  while (cache.size() <= index) {
    const GroupElem v = oracle_->basis_enumerate(basis_.raw(level), cache.size());
    cache.push_back(scale_offsets(*oracle_, basis_, v, n_max_).m);
  }
  return cache[index];
}

void QuotientMap::advance_fiber(std::uint64_t level, std::uint64_t k) {
  FiberState& st = fiber(level);
  auto m_of = [&](std::uint64_t i) { return m_of_basis_element(level, i); };
  while (true) {
    const std::uint64_t pos = st.next_pos;
    const std::uint64_t member = chain_->fiber_member(level, pos);
    if (member > k) break;
    const std::uint64_t idx = st.greedy.pick(member, m_of);
    st.value[member] = idx;
    choices_[level].push_back(CoverEntry{idx, member});
    ++st.next_pos;
  }
}

std::uint64_t QuotientMap::f_index(std::uint64_t k) {
  const std::uint64_t level = chain_->level(k);
  advance_fiber(level, k);
  return fiber(level).value.at(k);
}

GroupElem QuotientMap::f(std::uint64_t k) {
  const std::uint64_t level = chain_->level(k);
  return oracle_->basis_enumerate(basis_.raw(level), f_index(k));
}

GroupElem QuotientMap::bar_f(const ReducedWord& w) {
  GroupElem acc = oracle_->identity();
  for (const Letter& l : w.letters()) {
    GroupElem v = f(l.index);
    if (l.sign < 0) v = oracle_->inv(v);
    acc = oracle_->mul(acc, v);
  }
  return acc;
}

std::uint64_t QuotientMap::theta_refined(const GroupElem& g, std::uint64_t n,
                                         bool& exact) const {
  const std::uint64_t jn = basis_.raw(n);
  std::uint64_t raw;
  if (auto t = oracle_->theta_exact(g, jn)) {
    raw = *t;
    exact = true;
  } else {
    raw = oracle_->conj_bound(g, jn);
    exact = false;
  }
  return basis_.from_raw(raw);
}

Eq1Report QuotientMap::verify_chain_eq1(std::uint64_t k, std::uint64_t n) {
  Eq1Report r;
  r.k = k;
  r.n = n;
  r.phi_nk = n + k;
  const GroupElem fk = f(k);
  r.m_fk = m_of_basis_element(chain_->level(k), f_index(k));
  r.theta = theta_refined(fk, n, r.theta_is_exact);
  r.slack1 = static_cast<std::int64_t>(r.phi_nk) - static_cast<std::int64_t>(n + r.m_fk);
  r.slack2 = static_cast<std::int64_t>(n + r.m_fk) - static_cast<std::int64_t>(r.theta);
  r.holds = r.slack1 >= 0 && r.slack2 >= 0;
  return r;
}

MainLemmaReport QuotientMap::verify_main_lemma(const PhiContext& ctx, const ReducedWord& w,
                                               std::uint64_t n) {
  MainLemmaReport r;
  const GroupElem image = bar_f(w);
  r.image = oracle_->format(image);
  r.phi = ctx.phi(n, w);
  r.theta = theta_refined(image, n, r.theta_is_exact);
  if (r.theta <= r.phi) {
    r.verdict = LemmaVerdict::Pass;
  } else {
    r.verdict = r.theta_is_exact ? LemmaVerdict::Fail : LemmaVerdict::Inconclusive;
  }
  return r;
}

ContinuityReport QuotientMap::continuity_check(const PhiContext& ctx, std::uint64_t n,
                                               std::uint64_t samples, Rng& rng) {
  ContinuityReport rep;
  rep.samples = samples;
  const std::uint64_t jn = basis_.raw(n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    ReducedWord w;
    if (s % 2 == 0) {
      // random conjugated letter in V_{Phi_n}
      std::vector<Letter> conj;
      const std::uint64_t len = rng.below(4);  // conjugator length 0..3
      for (std::uint64_t i = 0; i < len; ++i) {
        conj.push_back(Letter{static_cast<std::uint32_t>(rng.below(6)),
                              static_cast<std::int8_t>(rng.coin() ? 1 : -1)});
      }
      const ReducedWord g = ReducedWord::reduce(conj);
      const std::uint64_t t = ctx.phi(n, g) + rng.below(3);
      const std::uint64_t k = chain_->level_member(t, rng.below(5));
      w = conjugate(ReducedWord::generator(static_cast<std::uint32_t>(k),
                                           rng.coin() ? +1 : -1),
                    g);
      if (!vphi_member(ctx, w, n, ReducedWord{})) {
        throw Error("continuity sampler produced a word outside V_Phi_n");
      }
    } else {
      // product with distinct slots >= n+2
      const std::uint64_t r = 1 + rng.below(3);
      std::uint64_t slot = n + 2 + rng.below(2);
      for (std::uint64_t i = 0; i < r; ++i) {
        std::vector<Letter> conj;
        const std::uint64_t len = rng.below(3);
        for (std::uint64_t j = 0; j < len; ++j) {
          conj.push_back(Letter{static_cast<std::uint32_t>(rng.below(6)),
                                static_cast<std::int8_t>(rng.coin() ? 1 : -1)});
        }
        const ReducedWord g = ReducedWord::reduce(conj);
        const std::uint64_t t = ctx.phi(slot, g) + rng.below(2);
        const std::uint64_t k = chain_->level_member(t, rng.below(4));
        w = multiply(w, conjugate(ReducedWord::generator(static_cast<std::uint32_t>(k),
                                                         rng.coin() ? +1 : -1),
                                  g));
        slot += 1 + rng.below(2);  // strictly increasing => distinct
      }
    }
    if (!oracle_->basis_member(jn, bar_f(w))) {
      ++rep.violations;
      if (rep.first_violation.empty()) rep.first_violation = format_word(w);
    }
  }
  return rep;
}

OpennessReport QuotientMap::openness_check(std::uint64_t n, std::uint64_t prefix) {
  OpennessReport rep;
  const std::uint64_t jn = basis_.raw(n);
  rep.requested = std::min<std::uint64_t>(prefix,
                                          oracle_->basis_size(jn).value_or(prefix));
  FiberState& st = fiber(n);
  auto m_of = [&](std::uint64_t i) { return m_of_basis_element(n, i); };
  std::map<std::uint64_t, std::uint64_t> first_k;  // enum index -> fiber element
  for (const CoverEntry& e : choices_[n]) {
    first_k.try_emplace(e.index, e.k);
  }
  constexpr std::uint64_t kStepCap = 1u << 21;
  std::uint64_t steps = 0;
  while (st.greedy.next_candidate() < rep.requested && steps < kStepCap) {
    const std::uint64_t member = chain_->fiber_member(n, st.next_pos);
    const std::uint64_t idx = st.greedy.pick(member, m_of);
    st.value[member] = idx;
    choices_[n].push_back(CoverEntry{idx, member});
    first_k.try_emplace(idx, member);
    ++st.next_pos;
    ++steps;
  }
  rep.complete = true;
  for (std::uint64_t i = 0; i < rep.requested; ++i) {
    auto it = first_k.find(i);
    if (it == first_k.end()) {
      rep.complete = false;
      continue;
    }
    rep.covered.push_back(CoverEntry{i, it->second});
    rep.max_k = std::max(rep.max_k, it->second);
  }
  return rep;
}

}  // namespace freetop
