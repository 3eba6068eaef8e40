#include "freetop/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>

#include "freetop/errors.hpp"
#include "freetop/rng.hpp"

namespace freetop {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Enumerates all nonempty reduced words with length <= max_len over
// generators 0..max_letter, both signs, in depth-first length-lex order.
void for_each_reduced_word(std::uint32_t max_len, std::uint32_t max_letter,
                           const std::function<void(const ReducedWord&)>& fn) {
  std::vector<Letter> stack;
  auto rec = [&](auto&& self) -> void {
    if (!stack.empty()) fn(ReducedWord::reduce(stack));
    if (stack.size() >= max_len) return;
    for (std::uint32_t a = 0; a <= max_letter; ++a) {
      for (int sign : {+1, -1}) {
        const Letter l{a, static_cast<std::int8_t>(sign)};
        if (!stack.empty() && stack.back() == inverse_of(l)) continue;
        stack.push_back(l);
        self(self);
        stack.pop_back();
      }
    }
  };
  rec(rec);
}

ReducedWord random_word(Rng& rng, std::uint32_t max_len, std::uint32_t letter_span) {
  std::vector<Letter> raw;
  const std::uint64_t len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i) {
    raw.push_back(Letter{static_cast<std::uint32_t>(rng.below(letter_span)),
                         static_cast<std::int8_t>(rng.coin() ? 1 : -1)});
  }
  return ReducedWord::reduce(raw);
}

// A certificate valid by construction: distinct slots, random conjugators,
// letters drawn from deep enough chain levels.
SymCertificate random_cert(const PhiContext& ctx, Rng& rng, const SubbasicSpec& spec,
                           std::uint32_t max_factors) {
  const std::uint32_t r = 1 + static_cast<std::uint32_t>(rng.below(max_factors));
  std::vector<std::uint64_t> pool;
  for (std::uint64_t s = 1; s <= r + 3; ++s) pool.push_back(s);
  SymCertificate c;
  c.spec = spec;
  for (std::uint32_t i = 0; i < r; ++i) {
    const std::uint64_t slot = pool[rng.below(pool.size())];
    pool.erase(std::find(pool.begin(), pool.end(), slot));
    ReducedWord g = random_word(rng, 2, 5);
    const std::uint64_t t =
        ctx.phi_threshold(spec.dilation * slot, g, spec.h) + rng.below(2);
    const std::uint64_t k = ctx.chain().level_member(t, rng.below(3));
    c.factors.push_back(CertEntry{slot, std::move(g),
                                  Letter{static_cast<std::uint32_t>(k),
                                         static_cast<std::int8_t>(rng.coin() ? 1 : -1)}});
  }
  return c;
}

struct SuiteContext {
  const RunConfig& cfg;
  std::shared_ptr<const IndexChain> chain;
  PhiContext phi;
  Report report;
  std::map<std::string, std::shared_ptr<const GroupOracle>> oracles;
  std::map<std::string, std::shared_ptr<QuotientMap>> maps;

  // support-containment bookkeeping over every certificate produced
  std::uint64_t certs_seen = 0;
  std::uint64_t support_min_slack = UINT64_MAX;
  std::uint64_t support_violations = 0;

  explicit SuiteContext(const RunConfig& c)
      : cfg(c), chain(make_chain(c.chain)), phi(chain) {}

  const GroupOracle& oracle(const std::string& id) {
    auto it = oracles.find(id);
    if (it == oracles.end()) it = oracles.emplace(id, make_oracle(id)).first;
    return *it->second;
  }

  QuotientMap& map(const std::string& id) {
    auto it = maps.find(id);
    if (it == maps.end()) {
      auto oracle_it = oracles.find(id);
      if (oracle_it == oracles.end()) {
        oracle_it = oracles.emplace(id, make_oracle(id)).first;
      }
      it = maps.emplace(id, std::make_shared<QuotientMap>(oracle_it->second, chain,
                                                          /*depth=*/34, /*n_max=*/8))
               .first;
    }
    return *it->second;
  }

  void note_cert(const SymCertificate& c) {
    ++certs_seen;
    const std::uint64_t lo = cert_min_letter_level(*chain, c);
    if (lo == UINT64_MAX) return;  // empty certificate
    if (lo < c.spec.dilation) {
      ++support_violations;
    } else {
      support_min_slack = std::min(support_min_slack, lo - c.spec.dilation);
    }
  }

  void record(std::string check, std::string property, std::string instance,
              Verdict verdict, Json details, Clock::time_point t0) {
    report.add(CheckRecord{std::move(check), std::move(property), std::move(instance),
                           verdict, std::move(details), ms_since(t0)});
  }
};

// ---------------------------------------------------------------- phi

void suite_phi(SuiteContext& sc) {
  const auto t0 = Clock::now();
  const std::uint32_t L = sc.cfg.phi_max_len;
  const std::uint32_t A = sc.cfg.phi_max_letter;
  const std::uint32_t N = sc.cfg.phi_max_n;

  std::uint64_t cases = 0, mismatches = 0, sym_bad = 0, mono_bad = 0, letter_bad = 0;
  std::string witness;
  for_each_reduced_word(L, A, [&](const ReducedWord& w) {
    const ReducedWord wi = invert(w);
    std::uint64_t prev = 0;
    for (std::uint32_t n = 0; n <= N; ++n) {
      const std::uint64_t v = sc.phi.phi(n, w);
      ++cases;
      if (v != phi_closed(n, w)) {
        ++mismatches;
        if (witness.empty()) witness = format_word(w) + " @ n=" + std::to_string(n);
      }
      if (v != sc.phi.phi(n, wi)) ++sym_bad;
      if (n > 0 && v < prev) ++mono_bad;
      prev = v;
    }
  });
  // the empty word and single letters, exact anchors
  for (std::uint32_t n = 0; n <= N; ++n) {
    if (sc.phi.phi(n, ReducedWord{}) != n) ++letter_bad;
    for (std::uint32_t k = 0; k <= A; ++k) {
      if (sc.phi.phi(n, ReducedWord::generator(k)) != n + k) ++letter_bad;
      if (sc.phi.phi(n, ReducedWord::generator(k, -1)) != n + k) ++letter_bad;
    }
  }

  const std::string instance = "len<=" + std::to_string(L) + ",letters<=" +
                               std::to_string(A) + ",n<=" + std::to_string(N);
  Json d{{"cases", cases}, {"mismatches", mismatches}};
  if (!witness.empty()) d["witness"] = witness;
  sc.record("phi-closed-form", "recursion equals n + index_sum", instance,
            mismatches == 0 ? Verdict::Pass : Verdict::Fail, d, t0);
  sc.record("phi-symmetry-monotone", "phi(n,w) = phi(n,w^-1), phi nondecreasing in n",
            instance,
            (sym_bad + mono_bad + letter_bad) == 0 ? Verdict::Pass : Verdict::Fail,
            Json{{"symmetry_violations", sym_bad},
                 {"monotonicity_violations", mono_bad},
                 {"anchor_violations", letter_bad}},
            t0);
}

// --------------------------------------------------------------- certs

void suite_certs(SuiteContext& sc) {
  const SearchBounds bounds{sc.cfg.max_factors, sc.cfg.max_conj_len};

  {  // bounded-search soundness fuzz
    const auto t0 = Clock::now();
    Rng rng(derive_seed(sc.cfg.seed, "certs/search"));
    std::uint64_t members = 0, unknowns = 0, bad = 0, attempts = 0;
    std::string witness;
    const std::uint64_t want = sc.cfg.fuzz_members;
    while (members < want && attempts < 4 * want + 100) {
      ++attempts;
      SubbasicSpec spec;
      spec.dilation = rng.below(4) == 0 ? 2 : 1;
      if (rng.below(4) == 0) {
        spec.h = ReducedWord::generator(static_cast<std::uint32_t>(rng.below(3)),
                                        rng.coin() ? 1 : -1);
      }
      const SymCertificate planted = random_cert(sc.phi, rng, spec, 3);
      sc.note_cert(planted);
      const ReducedWord w = cert_product(planted);
      const MemberResult res = sym_member_bounded(sc.phi, w, spec, bounds);
      if (res.status == Membership::Member) {
        ++members;
        sc.note_cert(*res.certificate);
        if (!cert_verify(sc.phi, *res.certificate, w)) {
          ++bad;
          if (witness.empty()) witness = format_word(w);
        }
      } else {
        ++unknowns;
      }
    }
    Json d{{"members", members}, {"unknowns", unknowns}, {"attempts", attempts},
           {"verify_failures", bad}};
    if (!witness.empty()) d["witness"] = witness;
    sc.record("cert-soundness", "bounded search results verify independently",
              std::to_string(want) + " members", (bad == 0 && members >= want)
                                                     ? Verdict::Pass
                                                     : Verdict::Fail,
              d, t0);
  }

  {  // arbitrary random words: any Member must verify; Unknown is fine
    const auto t0 = Clock::now();
    Rng rng(derive_seed(sc.cfg.seed, "certs/arbitrary"));
    std::uint64_t members = 0, bad = 0;
    const std::uint64_t total = 500;
    for (std::uint64_t i = 0; i < total; ++i) {
      const ReducedWord w = random_word(rng, 5, 10);
      const MemberResult res = sym_member_bounded(sc.phi, w, SubbasicSpec{}, bounds);
      if (res.status == Membership::Member) {
        ++members;
        sc.note_cert(*res.certificate);
        if (!cert_verify(sc.phi, *res.certificate, w)) ++bad;
      }
    }
    sc.record("cert-soundness", "arbitrary words never yield bogus certificates",
              std::to_string(total) + " arbitrary words",
              bad == 0 ? Verdict::Pass : Verdict::Fail,
              Json{{"members", members}, {"verify_failures", bad}}, t0);
  }

  const std::uint64_t rounds = sc.cfg.fuzz_transforms;

  {  // symmetry: inverted certificates certify the inverse word
    const auto t0 = Clock::now();
    Rng rng(derive_seed(sc.cfg.seed, "certs/invert"));
    std::uint64_t bad = 0;
    Json witness;
    for (std::uint64_t i = 0; i < rounds; ++i) {
      SubbasicSpec spec;
      spec.dilation = 1 + static_cast<std::uint32_t>(rng.below(2));
      const SymCertificate c = random_cert(sc.phi, rng, spec, 3);
      sc.note_cert(c);
      const SymCertificate ci = cert_invert(c);
      sc.note_cert(ci);
      if (!cert_verify(sc.phi, ci, invert(cert_product(c)))) {
        if (bad++ == 0) witness = cert_to_json(c);
      }
    }
    Json d{{"failures", bad}};
    if (bad > 0) d["witness"] = witness;
    sc.record("cert-invert", "symmetry of the symmetric product",
              std::to_string(rounds) + " certificates",
              bad == 0 ? Verdict::Pass : Verdict::Fail, d, t0);
  }

  {  // squaring: doubled-family certificates merge
    const auto t0 = Clock::now();
    Rng rng(derive_seed(sc.cfg.seed, "certs/square"));
    std::uint64_t bad = 0;
    Json witness;
    for (std::uint64_t i = 0; i < rounds; ++i) {
      SubbasicSpec doubled;
      doubled.dilation = 2 * (1 + static_cast<std::uint32_t>(rng.below(2)));
      const SymCertificate c1 = random_cert(sc.phi, rng, doubled, 2);
      const SymCertificate c2 = random_cert(sc.phi, rng, doubled, 2);
      sc.note_cert(c1);
      sc.note_cert(c2);
      const SymCertificate sq = cert_square(c1, c2);
      sc.note_cert(sq);
      if (!cert_verify(sc.phi, sq, multiply(cert_product(c1), cert_product(c2)))) {
        if (bad++ == 0) witness = Json{{"c1", cert_to_json(c1)}, {"c2", cert_to_json(c2)}};
      }
    }
    Json d{{"failures", bad}};
    if (bad > 0) d["witness"] = witness;
    sc.record("cert-square", "squaring lemma for pointwise monotone families",
              std::to_string(rounds) + " pairs", bad == 0 ? Verdict::Pass : Verdict::Fail,
              d, t0);
  }

  {  // translation: h-translated certificates conjugate back
    const auto t0 = Clock::now();
    Rng rng(derive_seed(sc.cfg.seed, "certs/translate"));
    std::uint64_t bad = 0;
    Json witness;
    for (std::uint64_t i = 0; i < rounds; ++i) {
      SubbasicSpec spec;
      spec.dilation = 1 + static_cast<std::uint32_t>(rng.below(2));
      spec.h = random_word(rng, 2, 4);
      const SymCertificate c = random_cert(sc.phi, rng, spec, 3);
      sc.note_cert(c);
      const SymCertificate cc = cert_conjugate(c, spec.h);
      sc.note_cert(cc);
      if (!cert_verify(sc.phi, cc, conjugate(cert_product(c), spec.h))) {
        if (bad++ == 0) witness = cert_to_json(c);
      }
    }
    Json d{{"failures", bad}};
    if (bad > 0) d["witness"] = witness;
    sc.record("cert-conjugate", "translate lemma", std::to_string(rounds) + " certificates",
              bad == 0 ? Verdict::Pass : Verdict::Fail, d, t0);
  }

  {  // support containment over everything seen so far
    const auto t0 = Clock::now();
    Json d{{"certificates", sc.certs_seen}, {"violations", sc.support_violations}};
    if (sc.support_min_slack != UINT64_MAX) d["min_slack"] = sc.support_min_slack;
    sc.record("hausdorff-support", "certificate letters stay at level >= dilation",
              "all certificates produced", sc.support_violations == 0 ? Verdict::Pass
                                                                      : Verdict::Fail,
              d, t0);
  }
}

// ------------------------------------------------------------------ bk

std::vector<std::vector<std::uint16_t>> z2_8_chain() {
  std::vector<std::vector<std::uint16_t>> chain;
  for (std::uint32_t n = 0; n <= 8; ++n) {
    std::vector<std::uint16_t> set;
    for (std::uint32_t x = 0; x < 256; x += (1u << n)) set.push_back(static_cast<std::uint16_t>(x));
    chain.push_back(std::move(set));
  }
  return chain;
}

// S5 chain: all, even permutations, the double-transposition Klein group on
// {0..3}, one of its order-2 subgroups, {e}.
std::vector<std::vector<std::uint16_t>> s5_chain(const FiniteGroup&) {
  std::vector<std::uint8_t> base{0, 1, 2, 3, 4};
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<std::uint8_t> p = base;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  auto parity_even = [](const std::vector<std::uint8_t>& q) {
    int inv = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = i + 1; j < q.size(); ++j) inv += q[i] > q[j];
    }
    return inv % 2 == 0;
  };
  auto index_of = [&](std::vector<std::uint8_t> q) {
    return static_cast<std::uint16_t>(
        std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };

  std::vector<std::uint16_t> all(perms.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::uint16_t> even;
  for (std::uint16_t i = 0; i < perms.size(); ++i) {
    if (parity_even(perms[i])) even.push_back(i);
  }
  const std::uint16_t e = index_of({0, 1, 2, 3, 4});
  const std::uint16_t ab = index_of({1, 0, 3, 2, 4});  // (01)(23)
  const std::uint16_t ac = index_of({2, 3, 0, 1, 4});  // (02)(13)
  const std::uint16_t ad = index_of({3, 2, 1, 0, 4});  // (03)(12)
  return {all, even, {e, ab, ac, ad}, {e, ab}, {e}};
}

void suite_bk(SuiteContext& sc) {
  struct Case {
    std::string name;
    FiniteGroup group;
    std::vector<std::vector<std::uint16_t>> chain;
  };
  std::vector<Case> cases;
  cases.push_back({"z2^8 subgroup chain", FiniteGroup::cyclic(256), z2_8_chain()});
  {
    FiniteGroup s5 = FiniteGroup::symmetric(5);
    auto chain = s5_chain(s5);
    cases.push_back({"s5 symmetric-set chain", std::move(s5), std::move(chain)});
  }

  for (const Case& c : cases) {
    for (std::uint64_t k = 0; k <= 2; ++k) {
      const auto t0 = Clock::now();
      const BkReport rep = bk_check_finite(c.group, c.chain, k, 4);
      sc.record("bk-finite", "distinct-slot products from level k+2 stay in V_k",
                c.name + ", k=" + std::to_string(k),
                rep.violation_count == 0 ? Verdict::Pass : Verdict::Fail,
                bk_report_to_json(rep), t0);
    }
  }

  {  // seeded bad chains must be rejected up front
    const auto t0 = Clock::now();
    const FiniteGroup z8 = FiniteGroup::cyclic(8);
    bool caught_square = false, caught_symmetry = false;
    try {
      bk_check_finite(z8, {{0, 1, 2, 3, 4, 5, 6, 7}, {0, 4}, {0, 1, 7}}, 0, 2);
    } catch (const HypothesisViolation&) {
      caught_square = true;
    }
    try {
      bk_check_finite(z8, {{0, 1, 2, 3, 4, 5, 6, 7}, {0, 2, 4, 6}, {0, 1}}, 0, 2);
    } catch (const HypothesisViolation&) {
      caught_symmetry = true;
    }
    sc.record("bk-finite", "hypothesis validator rejects seeded bad chains",
              "z8 bad chains",
              (caught_square && caught_symmetry) ? Verdict::Pass : Verdict::Fail,
              Json{{"caught_square", caught_square}, {"caught_symmetry", caught_symmetry}},
              t0);
  }
}

// ----------------------------------------------------------------- sur

void suite_sur(SuiteContext& sc) {
  for (const std::string& gid : sc.cfg.groups) {
    QuotientMap& q = sc.map(gid);
    {
      const auto t0 = Clock::now();
      std::uint64_t violations = 0, fresh = 0;
      std::string witness;
      for (std::uint64_t k = 0; k <= sc.cfg.sur_k_max; ++k) {
        const std::uint64_t level = sc.chain->level(k);
        std::uint64_t m = q.m_of_basis_element(level, q.f_index(k));
        if (k < 100 || k % 97 == 0) {
          // recompute the offset from the oracle, bypassing the cache the
          // greedy itself consulted
          m = scale_offsets(q.oracle(), q.basis(), q.f(k), q.n_max()).m;
          ++fresh;
        }
        if (m > k) {
          ++violations;
          if (witness.empty()) witness = "k=" + std::to_string(k);
        }
      }
      Json d{{"k_max", sc.cfg.sur_k_max},
             {"violations", violations},
             {"fresh_recomputations", fresh}};
      if (!witness.empty()) d["witness"] = witness;
      sc.record("sur-greedy", "m(f(k)) <= k", gid,
                violations == 0 ? Verdict::Pass : Verdict::Fail, d, t0);
    }
    for (std::uint64_t n = 0; n <= sc.cfg.sur_cover_n; ++n) {
      const auto t0 = Clock::now();
      const OpennessReport rep = q.openness_check(n, sc.cfg.sur_cover_prefix);
      sc.record("sur-cover", "greedy surjection covers the enumeration prefix",
                gid + ", n=" + std::to_string(n),
                rep.complete ? Verdict::Pass : Verdict::Fail,
                openness_report_to_json(rep), t0);
    }
  }
}

// ----------------------------------------------------------------- eq1

void suite_eq1(SuiteContext& sc) {
  for (const std::string& gid : sc.cfg.groups) {
    QuotientMap& q = sc.map(gid);
    const auto t0 = Clock::now();
    std::uint64_t checks = 0, violations = 0;
    std::int64_t min_slack1 = INT64_MAX, min_slack2 = INT64_MAX;
    std::string witness;
    for (std::uint64_t k = 0; k <= sc.cfg.eq1_k_max; ++k) {
      for (std::uint64_t n = 0; n <= sc.cfg.eq1_n_max; ++n) {
        const Eq1Report r = q.verify_chain_eq1(k, n);
        ++checks;
        min_slack1 = std::min(min_slack1, r.slack1);
        min_slack2 = std::min(min_slack2, r.slack2);
        if (!r.holds) {
          ++violations;
          if (witness.empty()) {
            witness = "k=" + std::to_string(k) + ",n=" + std::to_string(n);
          }
        }
      }
    }
    Json d{{"checks", checks},
           {"violations", violations},
           {"min_slack1", min_slack1},
           {"min_slack2", min_slack2}};
    if (!witness.empty()) d["witness"] = witness;
    sc.record("eq1-chain", "phi_n(k) >= n + m(f(k)) >= theta_{f(k)}(n)", gid,
              violations == 0 ? Verdict::Pass : Verdict::Fail, d, t0);
  }
}

// ----------------------------------------------------------- main lemma

void suite_mainlemma(SuiteContext& sc) {
  {  // exhaustive on the nontrivial-scale adapter
    const auto t0 = Clock::now();
    QuotientMap& q = sc.map("symfin");
    std::uint64_t passes = 0, fails = 0, inconclusive = 0;
    std::string witness;
    for_each_reduced_word(sc.cfg.lemma_max_len, sc.cfg.lemma_max_letter,
                          [&](const ReducedWord& w) {
                            for (std::uint64_t n = 0; n <= sc.cfg.lemma_max_n; ++n) {
                              const MainLemmaReport r = q.verify_main_lemma(sc.phi, w, n);
                              switch (r.verdict) {
                                case LemmaVerdict::Pass: ++passes; break;
                                case LemmaVerdict::Fail:
                                  ++fails;
                                  if (witness.empty()) {
                                    witness = format_word(w) + " @ n=" + std::to_string(n);
                                  }
                                  break;
                                case LemmaVerdict::Inconclusive: ++inconclusive; break;
                              }
                            }
                          });
    // the empty word: theta_e(n) = n = phi_n(e)
    for (std::uint64_t n = 0; n <= sc.cfg.lemma_max_n; ++n) {
      const MainLemmaReport r = q.verify_main_lemma(sc.phi, ReducedWord{}, n);
      r.verdict == LemmaVerdict::Pass ? ++passes : ++fails;
    }
    Json d{{"pass", passes}, {"fail", fails}, {"inconclusive", inconclusive}};
    if (!witness.empty()) d["witness"] = witness;
    sc.record("main-lemma", "theta_{f_bar(x)}(n) <= phi_n(x)",
              "symfin exhaustive len<=" + std::to_string(sc.cfg.lemma_max_len) +
                  ",letters<=" + std::to_string(sc.cfg.lemma_max_letter) + ",n<=" +
                  std::to_string(sc.cfg.lemma_max_n),
              (fails == 0 && inconclusive == 0) ? Verdict::Pass : Verdict::Fail, d, t0);
  }

  for (const std::string& gid : sc.cfg.groups) {
    if (gid == "symfin") continue;
    const auto t0 = Clock::now();
    QuotientMap& q = sc.map(gid);
    Rng rng(derive_seed(sc.cfg.seed, "mainlemma/" + gid));
    std::uint64_t passes = 0, fails = 0, inconclusive = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
      const ReducedWord w = random_word(rng, 4, 12);
      const MainLemmaReport r = q.verify_main_lemma(sc.phi, w, rng.below(5));
      switch (r.verdict) {
        case LemmaVerdict::Pass: ++passes; break;
        case LemmaVerdict::Fail: ++fails; break;
        case LemmaVerdict::Inconclusive: ++inconclusive; break;
      }
    }
    sc.record("main-lemma", "theta_{f_bar(x)}(n) <= phi_n(x)", gid + " random sample",
              fails == 0 ? Verdict::Pass : Verdict::Fail,
              Json{{"pass", passes}, {"fail", fails}, {"inconclusive", inconclusive}}, t0);
  }
}

// ----------------------------------------------------------- continuity

void suite_continuity(SuiteContext& sc) {
  for (const std::string& gid : sc.cfg.groups) {
    QuotientMap& q = sc.map(gid);
    for (std::uint64_t n = 0; n <= sc.cfg.continuity_n_max; ++n) {
      const auto t0 = Clock::now();
      Rng rng(derive_seed(sc.cfg.seed, "continuity/" + gid + "/" + std::to_string(n)));
      const ContinuityReport rep =
          q.continuity_check(sc.phi, n, sc.cfg.continuity_samples, rng);
      Json d{{"samples", rep.samples}, {"violations", rep.violations}};
      if (!rep.first_violation.empty()) d["witness"] = rep.first_violation;
      sc.record("continuity", "f_bar maps V_{Phi_n} and deep products into V'_n",
                gid + ", n=" + std::to_string(n),
                rep.violations == 0 ? Verdict::Pass : Verdict::Fail, d, t0);
    }
  }
}

// ------------------------------------------------------------- openness

void suite_openness(SuiteContext& sc) {
  const std::vector<std::string> groups = {"zp2", "dyadic", "symfin"};
  const auto t0 = Clock::now();
  Rng rng(derive_seed(sc.cfg.seed, "openness"));
  std::uint64_t ok = 0, failures = 0, b_nontrivial = 0;
  std::uint64_t cube_samples = 0;
  std::string witness;
  for (std::uint64_t i = 0; i < sc.cfg.openness_scenarios; ++i) {
    const std::string gid = groups[i % groups.size()];
    const GroupOracle& oracle = sc.oracle(gid);
    try {
      const PwScenario scenario = make_pw_scenario(oracle, rng, 4, 3, 3, 4);
      const OpennessTranscript t =
          openness_witness(oracle, scenario.sample, scenario.x_index,
                           scenario.conjugators, scenario.u_index, scenario.b_word);
      cube_samples += t.cube_samples;
      if (!scenario.b_word.empty()) ++b_nontrivial;
      ++ok;
    } catch (const Error& e) {
      ++failures;
      if (witness.empty()) {
        witness = gid + " scenario " + std::to_string(i) + ": " + e.what();
      }
    }
  }
  Json d{{"scenarios", sc.cfg.openness_scenarios},
         {"ok", ok},
         {"failures", failures},
         {"nontrivial_b", b_nontrivial},
         {"cube_samples", cube_samples}};
  if (!witness.empty()) d["witness"] = witness;
  sc.record("openness", "evaluation maps are open at finite scale",
            std::to_string(sc.cfg.openness_scenarios) + " scenarios over zp2/dyadic/symfin",
            failures == 0 ? Verdict::Pass : Verdict::Fail, d, t0);
}

// ---------------------------------------------------------- determinism

void suite_determinism(SuiteContext& sc) {
  const auto t0 = Clock::now();
  RunConfig mini = sc.cfg;
  mini.suites = {"certs", "continuity", "openness"};
  mini.fuzz_members = 300;
  mini.fuzz_transforms = 100;
  mini.continuity_samples = 60;
  mini.continuity_n_max = 3;
  mini.openness_scenarios = 12;
  mini.groups = {"zp2", "symfin"};

  const std::string a = run_suite(mini).to_json(false).dump();
  const std::string b = run_suite(mini).to_json(false).dump();
  sc.record("determinism", "same seed, canonical-identical report", "seeded double run",
            a == b ? Verdict::Pass : Verdict::Fail,
            Json{{"bytes", a.size()}, {"identical", a == b}}, t0);
}

}  // namespace

Report run_suite(const RunConfig& config) {
  SuiteContext sc(config);
  sc.report.config = config.to_json();

  if (config.wants("phi")) suite_phi(sc);
  if (config.wants("certs")) suite_certs(sc);
  if (config.wants("bk")) suite_bk(sc);
  if (config.wants("sur")) suite_sur(sc);
  if (config.wants("eq1")) suite_eq1(sc);
  if (config.wants("mainlemma")) suite_mainlemma(sc);
  if (config.wants("continuity")) suite_continuity(sc);
  if (config.wants("openness")) suite_openness(sc);
  if (config.wants("determinism")) suite_determinism(sc);

  sc.report.canonicalize();
  return sc.report;
}

int report_exit_code(const Report& report) { return report.failed() ? 1 : 0; }

}  // namespace freetop
