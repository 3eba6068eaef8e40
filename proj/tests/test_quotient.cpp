#include <doctest.h>

#include <set>

#include "freetop/errors.hpp"
#include "freetop/quotient.hpp"

using namespace freetop;

namespace {

ReducedWord W(const std::string& s) { return parse_word(s); }

// Wrapper hiding theta_exact and inflating conj_bound: still sound, but too
// weak to settle the lemma, so verdicts must degrade to INCONCLUSIVE, never
// to FAIL.
class BlurredOracle final : public GroupOracle {
public:
  explicit BlurredOracle(std::shared_ptr<const GroupOracle> inner)
      : inner_(std::move(inner)) {}
  std::string id() const override { return inner_->id() + "+blur"; }
  GroupElem identity() const override { return inner_->identity(); }
  GroupElem enumerate(std::uint64_t m) const override { return inner_->enumerate(m); }
  std::optional<std::uint64_t> enum_size() const override { return inner_->enum_size(); }
  GroupElem mul(const GroupElem& a, const GroupElem& b) const override {
    return inner_->mul(a, b);
  }
  GroupElem inv(const GroupElem& a) const override { return inner_->inv(a); }
  bool basis_member(std::uint64_t n, const GroupElem& g) const override {
    return inner_->basis_member(n, g);
  }
  GroupElem basis_enumerate(std::uint64_t n, std::uint64_t i) const override {
    return inner_->basis_enumerate(n, i);
  }
  std::optional<std::uint64_t> basis_size(std::uint64_t n) const override {
    return inner_->basis_size(n);
  }
  std::uint64_t conj_bound(const GroupElem& g, std::uint64_t n) const override {
    return inner_->conj_bound(g, n) + 10;
  }
  std::uint64_t sq_bound(std::uint64_t n) const override { return inner_->sq_bound(n); }
  std::optional<std::uint64_t> theta_exact(const GroupElem&, std::uint64_t) const override {
    return std::nullopt;
  }
  std::string format(const GroupElem& g) const override { return inner_->format(g); }

private:
  std::shared_ptr<const GroupOracle> inner_;
};

// Wrapper whose "exact" scale is wrong on purpose: exercises the FAIL
// branch of the lemma verdicts (reported only when the scale is exact).
class LyingThetaOracle final : public GroupOracle {
public:
  explicit LyingThetaOracle(std::shared_ptr<const GroupOracle> inner)
      : inner_(std::move(inner)) {}
  std::string id() const override { return inner_->id() + "+lie"; }
  GroupElem identity() const override { return inner_->identity(); }
  GroupElem enumerate(std::uint64_t m) const override { return inner_->enumerate(m); }
  std::optional<std::uint64_t> enum_size() const override { return inner_->enum_size(); }
  GroupElem mul(const GroupElem& a, const GroupElem& b) const override {
    return inner_->mul(a, b);
  }
  GroupElem inv(const GroupElem& a) const override { return inner_->inv(a); }
  bool basis_member(std::uint64_t n, const GroupElem& g) const override {
    return inner_->basis_member(n, g);
  }
  GroupElem basis_enumerate(std::uint64_t n, std::uint64_t i) const override {
    return inner_->basis_enumerate(n, i);
  }
  std::optional<std::uint64_t> basis_size(std::uint64_t n) const override {
    return inner_->basis_size(n);
  }
  std::uint64_t conj_bound(const GroupElem& g, std::uint64_t n) const override {
    return inner_->conj_bound(g, n);
  }
  std::uint64_t sq_bound(std::uint64_t n) const override { return inner_->sq_bound(n); }
  std::optional<std::uint64_t> theta_exact(const GroupElem& g,
                                           std::uint64_t n) const override {
    return *inner_->theta_exact(g, n) + 5;
  }
  std::string format(const GroupElem& g) const override { return inner_->format(g); }

private:
  std::shared_ptr<const GroupOracle> inner_;
};

// Deliberately inconsistent oracle: the claimed squaring bound fails for
// elements near the basis-set boundary, which the post-build sampling must
// catch. Abelian (Z, +) with V_n = { x : |x| < 100 / (n+1) } for n >= 1 and
// the enumeration biased toward the boundary.
class InconsistentOracle final : public GroupOracle {
public:
  std::string id() const override { return "test:inconsistent"; }
  GroupElem identity() const override { return std::int64_t{0}; }
  GroupElem enumerate(std::uint64_t m) const override {
    return static_cast<std::int64_t>(m) - 1;
  }
  GroupElem mul(const GroupElem& a, const GroupElem& b) const override {
    return std::get<std::int64_t>(a) + std::get<std::int64_t>(b);
  }
  GroupElem inv(const GroupElem& a) const override { return -std::get<std::int64_t>(a); }
  bool basis_member(std::uint64_t n, const GroupElem& g) const override {
    if (n == 0) return true;
    const std::int64_t x = std::get<std::int64_t>(g);
    return static_cast<std::uint64_t>(x < 0 ? -x : x) * (n + 1) < 100;
  }
  GroupElem basis_enumerate(std::uint64_t n, std::uint64_t i) const override {
    if (i == 0) return std::int64_t{0};
    const std::int64_t top = n == 0 ? 1000 : static_cast<std::int64_t>(99 / (n + 1));
    const std::int64_t off = static_cast<std::int64_t>((i - 1) / 2);
    const std::int64_t mag = std::max<std::int64_t>(top - off, 1);
    return i % 2 == 1 ? mag : -mag;
  }
  std::uint64_t conj_bound(const GroupElem&, std::uint64_t n) const override { return n; }
  std::uint64_t sq_bound(std::uint64_t n) const override { return n == 0 ? 0 : n + 1; }
  std::optional<std::uint64_t> theta_exact(const GroupElem&, std::uint64_t n) const override {
    return n;
  }
  std::string format(const GroupElem& g) const override {
    return std::to_string(std::get<std::int64_t>(g));
  }
};

}  // namespace

TEST_CASE("build_refined_basis on the trivial-bound adapters") {
  {
    const RefinedBasis b = build_refined_basis(*make_oracle("zp2"), 5);
    CHECK(b.indices == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
  }
  {
    const RefinedBasis b = build_refined_basis(*make_oracle("dyadic"), 4);
    CHECK(b.indices == std::vector<std::uint64_t>{0, 1, 2, 3});
  }
  {
    const RefinedBasis b = build_refined_basis(*make_oracle("symfin"), 12);
    REQUIRE(b.depth() == 12);
    CHECK(b.indices[0] == 0);
    for (std::size_t n = 0; n + 1 < b.indices.size(); ++n) {
      CHECK(b.indices[n + 1] > b.indices[n]);
    }
  }
  CHECK_THROWS_AS(build_refined_basis(*make_oracle("zp2"), 0), Error);
}

TEST_CASE("refined basis translation and depth errors") {
  const RefinedBasis b{{0, 1, 3, 7}};
  CHECK(b.raw(2) == 3);
  CHECK(b.from_raw(0) == 0);
  CHECK(b.from_raw(2) == 2);
  CHECK(b.from_raw(7) == 3);
  CHECK_THROWS_AS(b.raw(4), DepthExceeded);
  CHECK_THROWS_AS(b.from_raw(8), DepthExceeded);
}

TEST_CASE("post-build sampling catches an inconsistent oracle") {
  const auto bad = std::make_shared<InconsistentOracle>();
  CHECK_THROWS_AS(build_refined_basis(*bad, 5), OracleUnsound);
}

TEST_CASE("scale_offsets") {
  {  // identity always has offset 0
    for (const std::string id : {"zp2", "zp3", "symfin", "dyadic", "finite:s3"}) {
      auto o = make_oracle(id);
      const RefinedBasis b = build_refined_basis(*o, 10);
      const ScaleProfile p = scale_offsets(*o, b, o->identity(), 6);
      CHECK(p.m == 0);
    }
  }
  {  // the (0 4) transposition against the raw basis
    auto o = make_oracle("symfin");
    RefinedBasis raw;
    for (std::uint64_t j = 0; j <= 20; ++j) raw.indices.push_back(j);
    const ScaleProfile p =
        scale_offsets(*o, raw, Permutation::transposition(0, 4), 6);
    CHECK(p.m == 4);
    CHECK(p.exact);
    CHECK(p.theta_upper[1] == 5);
    CHECK(p.theta_upper[0] == 0);
  }
  {  // abelian scale offsets vanish
    auto o = make_oracle("zp2");
    const RefinedBasis b = build_refined_basis(*o, 10);
    CHECK(scale_offsets(*o, b, o->enumerate(17), 6).m == 0);
  }
}

TEST_CASE("greedy_surjection follows the recursion") {
  {
    std::vector<std::uint64_t> zeros(20, 0);
    for (std::uint64_t k = 0; k < 20; ++k) CHECK(greedy_surjection(zeros, k) == k);
  }
  {
    const std::vector<std::uint64_t> m{0, 3, 1, 0, 0};
    const std::vector<std::uint64_t> expect{0, 0, 0, 1, 2};
    for (std::uint64_t k = 0; k < expect.size(); ++k) {
      CHECK(greedy_surjection(m, k) == expect[k]);
    }
  }
  CHECK_THROWS_AS(greedy_surjection({5, 0}, 0), Error);
}

TEST_CASE("greedy_surjection keeps m(f(k)) <= k on random m-values") {
  Rng rng(31);
  std::vector<std::uint64_t> m{0};
  for (int i = 0; i < 400; ++i) m.push_back(rng.below(40));
  GreedySurjection greedy(m.size());
  auto m_of = [&](std::uint64_t i) { return m[i]; };
  std::set<std::uint64_t> chosen;
  for (std::uint64_t k = 0; k < 2000; ++k) {
    const std::uint64_t idx = greedy.pick(k, m_of);
    CHECK(m[idx] <= k);
    chosen.insert(idx);
  }
  CHECK(chosen.size() == m.size());  // surjective onto the finite target
}

TEST_CASE("amalgamated f on zp2 with the dyadic chain") {
  QuotientMap q(make_oracle("zp2"), make_chain("dyadic"), 16, 6);
  CHECK(q.f(0) == GroupElem{std::int64_t{0}});
  CHECK(q.f(2) == GroupElem{std::int64_t{1}});   // 2nd point of the level-0 fiber
  CHECK(q.f(7) == GroupElem{std::int64_t{0}});   // 1st point of the level-3 fiber
  CHECK(q.f(4) == GroupElem{std::int64_t{-1}});  // 3rd point of the level-0 fiber
  // f(k) lands in V'_{nu(k)}
  for (std::uint64_t k = 0; k < 200; ++k) {
    CHECK(q.oracle().basis_member(q.basis().raw(q.chain().level(k)), q.f(k)));
  }
}

TEST_CASE("bar_f is a homomorphism") {
  QuotientMap q(make_oracle("zp2"), make_chain("dyadic"), 16, 6);
  CHECK(q.bar_f(ReducedWord{}) == GroupElem{std::int64_t{0}});
  CHECK(q.bar_f(W("0 2")) == GroupElem{std::int64_t{1}});
  CHECK(q.bar_f(W("2 2'")) == GroupElem{std::int64_t{0}});

  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    std::vector<Letter> raw;
    for (std::uint64_t j = 0, len = rng.below(7); j < len; ++j) {
      raw.push_back(Letter{static_cast<std::uint32_t>(rng.below(12)),
                           static_cast<std::int8_t>(rng.coin() ? 1 : -1)});
    }
    const ReducedWord u = ReducedWord::reduce(raw);
    raw.clear();
    for (std::uint64_t j = 0, len = rng.below(7); j < len; ++j) {
      raw.push_back(Letter{static_cast<std::uint32_t>(rng.below(12)),
                           static_cast<std::int8_t>(rng.coin() ? 1 : -1)});
    }
    const ReducedWord v = ReducedWord::reduce(raw);
    CHECK(q.bar_f(multiply(u, v)) == q.oracle().mul(q.bar_f(u), q.bar_f(v)));
  }
}

TEST_CASE("eq1 chain links hold with the documented slacks") {
  {
    QuotientMap q(make_oracle("zp2"), make_chain("dyadic"), 16, 6);
    for (std::uint64_t k = 0; k < 50; ++k) {
      const Eq1Report r = q.verify_chain_eq1(k, 2);
      CHECK(r.holds);
      CHECK(r.m_fk == 0);  // abelian
      CHECK(r.slack1 == static_cast<std::int64_t>(k));
    }
  }
  {
    // find the k with f(k) = (0 4); there the n=1 link is tight
    QuotientMap q(make_oracle("symfin"), make_chain("dyadic"), 20, 8);
    const GroupElem t04 = Permutation::transposition(0, 4);
    std::uint64_t k_hit = 0;
    bool found = false;
    for (std::uint64_t k = 0; k < 20000 && !found; ++k) {
      if (q.f(k) == t04) {
        k_hit = k;
        found = true;
      }
    }
    REQUIRE(found);
    const Eq1Report r = q.verify_chain_eq1(k_hit, 1);
    CHECK(r.holds);
    CHECK(r.theta == 5);
    CHECK(r.m_fk == 4);
    CHECK(r.slack2 == 0);  // tight
  }
  {  // k = 0 forces m(f(0)) = 0
    QuotientMap q(make_oracle("symfin"), make_chain("dyadic"), 20, 8);
    const Eq1Report r = q.verify_chain_eq1(0, 3);
    CHECK(r.holds);
    CHECK(r.m_fk == 0);
  }
}

TEST_CASE("main lemma verdicts") {
  PhiContext ctx(make_chain("dyadic"));
  {
    QuotientMap q(make_oracle("symfin"), make_chain("dyadic"), 24, 8);
    // the empty word: theta_e(n) = n = phi_n(e)
    for (std::uint64_t n = 0; n <= 4; ++n) {
      const MainLemmaReport r = q.verify_main_lemma(ctx, ReducedWord{}, n);
      CHECK(r.verdict == LemmaVerdict::Pass);
      CHECK(r.theta == r.phi);
    }
    // single letters are exactly the eq1 instance
    for (std::uint32_t k = 0; k <= 12; ++k) {
      for (std::uint64_t n = 0; n <= 3; ++n) {
        CHECK(q.verify_main_lemma(ctx, ReducedWord::generator(k), n).verdict ==
              LemmaVerdict::Pass);
      }
    }
  }
  {
    // a wrong exact scale is reported as FAIL (and only then)
    auto lying = std::make_shared<LyingThetaOracle>(make_oracle("symfin"));
    QuotientMap q(lying, make_chain("dyadic"), 16, 4);
    bool saw_fail = false;
    for (std::uint64_t n = 0; n <= 2 && !saw_fail; ++n) {
      const MainLemmaReport r = q.verify_main_lemma(ctx, W("0"), n);
      saw_fail = r.verdict == LemmaVerdict::Fail;
      if (saw_fail) CHECK(r.theta_is_exact);
    }
    CHECK(saw_fail);
  }
  {
    // weak bounds degrade to INCONCLUSIVE, never FAIL
    auto blurred = std::make_shared<BlurredOracle>(make_oracle("symfin"));
    QuotientMap q(blurred, make_chain("dyadic"), 12, 4);
    bool saw_inconclusive = false;
    for (std::uint64_t n = 0; n <= 3; ++n) {
      for (const char* text : {"0", "0'", "1", "2"}) {
        const MainLemmaReport r = q.verify_main_lemma(ctx, W(text), n);
        CHECK(r.verdict != LemmaVerdict::Fail);
        saw_inconclusive = saw_inconclusive || r.verdict == LemmaVerdict::Inconclusive;
      }
    }
    CHECK(saw_inconclusive);
  }
}

TEST_CASE("continuity sampling finds no violations") {
  PhiContext ctx(make_chain("dyadic"));
  for (const std::string id : {"zp2", "symfin"}) {
    CAPTURE(id);
    QuotientMap q(make_oracle(id), make_chain("dyadic"), 34, 8);
    for (std::uint64_t n : {0ull, 2ull, 4ull}) {
      Rng rng(33 + n);
      const ContinuityReport r = q.continuity_check(ctx, n, 100, rng);
      CHECK(r.violations == 0);
    }
  }
}

TEST_CASE("openness cover") {
  {
    QuotientMap q(make_oracle("zp2"), make_chain("dyadic"), 16, 6);
    const OpennessReport r = q.openness_check(1, 10);
    CHECK(r.complete);
    CHECK(r.covered.size() == 10);
    // e is covered at the very first fiber point
    CHECK(r.covered[0].index == 0);
    CHECK(r.covered[0].k == q.chain().fiber_member(1, 0));
    CHECK(r.max_k > 0);
  }
  {
    QuotientMap q(make_oracle("symfin"), make_chain("dyadic"), 20, 8);
    const OpennessReport r = q.openness_check(0, 25);
    CHECK(r.complete);
    CHECK(r.covered.size() == 25);
  }
  {  // finite target: the prefix clips to |V'_n|
    QuotientMap q(make_oracle("finite:s3"), make_chain("dyadic"), 16, 6);
    const OpennessReport r0 = q.openness_check(0, 50);
    CHECK(r0.requested == 6);
    CHECK(r0.complete);
    const OpennessReport r2 = q.openness_check(2, 50);
    CHECK(r2.requested == 1);
    CHECK(r2.complete);
  }
}

TEST_CASE("map construction guards") {
  CHECK_THROWS_AS(QuotientMap(make_oracle("zp2"), make_chain("dyadic"), 4, 6), Error);
}
