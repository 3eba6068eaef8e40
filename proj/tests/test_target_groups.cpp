#include <doctest.h>

#include <set>

#include "freetop/errors.hpp"
#include "freetop/target_groups.hpp"

using namespace freetop;

namespace {

// Independent scale oracle for the finitary-permutation adapter: conjugation
// by g moves some i < n iff v moves g(i) or g^{-1}(i); whenever any v in V_j
// does, the transposition swapping that point with another point >= j does
// too. Scanning all transpositions inside [j, C] is therefore a complete
// violation search once C clears every point g touches below n.
std::uint64_t brute_theta_symfin(const GroupOracle& o, const Permutation& g,
                                 std::uint64_t n, std::uint32_t window) {
  const GroupElem ge = g;
  const GroupElem gi = o.inv(ge);
  for (std::uint64_t j = 0;; ++j) {
    bool safe = true;
    for (std::uint32_t a = static_cast<std::uint32_t>(j); a <= window && safe; ++a) {
      for (std::uint32_t b = a + 1; b <= window + 1 && safe; ++b) {
        const GroupElem v = Permutation::transposition(a, b);
        const GroupElem left = o.mul(o.mul(gi, v), ge);
        const GroupElem right = o.mul(o.mul(ge, v), gi);
        safe = o.basis_member(n, left) && o.basis_member(n, right);
      }
    }
    if (safe) return j;
  }
}

}  // namespace

TEST_CASE("zp2 adapter basics") {
  auto o = make_oracle("zp2");
  CHECK(o->id() == "zp2");
  CHECK(o->basis_member(3, GroupElem{std::int64_t{8}}));
  CHECK_FALSE(o->basis_member(4, GroupElem{std::int64_t{8}}));
  CHECK(o->conj_bound(o->enumerate(5), 7) == 7);
  CHECK(o->basis_enumerate(1, 2) == GroupElem{std::int64_t{-2}});
  CHECK(o->basis_enumerate(1, 0) == o->identity());
  CHECK(o->enumerate(1) == o->identity());
  CHECK(*o->theta_exact(o->enumerate(9), 5) == 5);
}

TEST_CASE("dyadic adapter basics") {
  auto o = make_oracle("dyadic");
  const GroupElem eighth = DyadicRational::make(1, 3);
  CHECK(o->basis_member(2, eighth));    // 1/8 < 1/4
  CHECK_FALSE(o->basis_member(3, eighth));
  CHECK(o->sq_bound(3) == 4);
  CHECK(o->sq_bound(0) == 0);
  CHECK(o->basis_enumerate(5, 0) == o->identity());
  // V_0 = G: everything, including values of size >= 1
  CHECK(o->basis_member(0, o->enumerate(7)));
  // group law is exact addition
  const GroupElem q = o->mul(DyadicRational::make(3, 2), DyadicRational::make(1, 2));
  CHECK(q == GroupElem{DyadicRational::make(1, 0)});
  CHECK(o->mul(eighth, o->inv(eighth)) == o->identity());
}

TEST_CASE("symfin adapter scale values") {
  auto o = make_oracle("symfin");
  const GroupElem t04 = Permutation::transposition(0, 4);
  CHECK(*o->theta_exact(t04, 1) == 5);
  for (std::uint64_t n = 1; n <= 7; ++n) {
    CHECK(*o->theta_exact(t04, n) == std::max<std::uint64_t>(n, 5));
  }
  CHECK(*o->theta_exact(t04, 0) == 0);
  for (std::uint64_t n = 0; n <= 6; ++n) {
    CHECK(*o->theta_exact(o->identity(), n) == n);
  }
}

TEST_CASE("symfin theta matches the brute-force minimum") {
  auto o = make_oracle("symfin");
  for (std::uint64_t m = 1; m <= 80; ++m) {
    const GroupElem g = o->enumerate(m);
    const auto& p = std::get<Permutation>(g);
    if (p.support_bound() > 8) continue;
    for (std::uint64_t n = 0; n <= 6; ++n) {
      CHECK(*o->theta_exact(g, n) == brute_theta_symfin(*o, p, n, 14));
    }
  }
}

TEST_CASE("finite adapter has the discrete chain") {
  auto o = make_oracle("finite:s3");
  CHECK(o->basis_member(1, o->identity()));
  CHECK_FALSE(o->basis_member(1, o->enumerate(2)));
  CHECK(o->conj_bound(o->enumerate(2), 0) == 0);
  CHECK(*o->theta_exact(o->enumerate(2), 3) == 1);
  CHECK(*o->theta_exact(o->enumerate(2), 0) == 0);
  CHECK(o->enum_size() == 6);
  CHECK(o->basis_size(0) == 6);
  CHECK(o->basis_size(2) == 1);
  CHECK_THROWS_AS(o->enumerate(7), DepthExceeded);
  CHECK_THROWS_AS(o->basis_enumerate(1, 1), DepthExceeded);
}

TEST_CASE("every adapter: enumeration and basis invariants") {
  for (const std::string id : {"zp2", "zp3", "symfin", "dyadic", "finite:s3"}) {
    CAPTURE(id);
    auto o = make_oracle(id);

    // enumerate: e at m=1, injective prefix
    CHECK(o->enumerate(1) == o->identity());
    const std::uint64_t span = std::min<std::uint64_t>(200, o->enum_size().value_or(200));
    std::vector<GroupElem> seen;
    for (std::uint64_t m = 1; m <= span; ++m) {
      const GroupElem g = o->enumerate(m);
      for (const GroupElem& other : seen) CHECK_FALSE(g == other);
      seen.push_back(g);
    }

    for (std::uint64_t n = 0; n <= 4; ++n) {
      // basis_enumerate: e first, members only, injective prefix
      CHECK(o->basis_enumerate(n, 0) == o->identity());
      const std::uint64_t count = std::min<std::uint64_t>(200, o->basis_size(n).value_or(200));
      std::vector<GroupElem> elems;
      for (std::uint64_t i = 0; i < count; ++i) {
        const GroupElem v = o->basis_enumerate(n, i);
        CHECK(o->basis_member(n, v));
        for (const GroupElem& other : elems) CHECK_FALSE(v == other);
        elems.push_back(v);
      }
      // symmetry of V_n
      for (const GroupElem& v : elems) CHECK(o->basis_member(n, o->inv(v)));
      // V_0 = G on a sample
      CHECK(o->basis_member(0, o->enumerate(span)));
    }
  }
}

TEST_CASE("every adapter: conj_bound and sq_bound are sound on samples") {
  for (const std::string id : {"zp2", "zp3", "symfin", "dyadic", "finite:s3"}) {
    CAPTURE(id);
    auto o = make_oracle(id);
    const std::uint64_t gs = std::min<std::uint64_t>(50, o->enum_size().value_or(50));
    for (std::uint64_t n = 0; n <= 6; ++n) {
      for (std::uint64_t m = 1; m <= gs; ++m) {
        const GroupElem g = o->enumerate(m);
        const std::uint64_t j = o->conj_bound(g, n);
        const std::uint64_t vcount =
            std::min<std::uint64_t>(50, o->basis_size(j).value_or(50));
        for (std::uint64_t i = 0; i < vcount; ++i) {
          const GroupElem v = o->basis_enumerate(j, i);
          CHECK(o->basis_member(n, o->mul(o->mul(o->inv(g), v), g)));
          CHECK(o->basis_member(n, o->mul(o->mul(g, v), o->inv(g))));
        }
      }
      const std::uint64_t s = o->sq_bound(n);
      const std::uint64_t vcount = std::min<std::uint64_t>(25, o->basis_size(s).value_or(25));
      for (std::uint64_t i = 0; i < vcount; i += 2) {
        for (std::uint64_t j = 0; j < vcount; j += 3) {
          CHECK(o->basis_member(
              n, o->mul(o->basis_enumerate(s, i), o->basis_enumerate(s, j))));
        }
      }
    }
  }
}

TEST_CASE("theta minimality: one level up always fails on a witness") {
  for (const std::string id : {"zp2", "dyadic", "symfin"}) {
    CAPTURE(id);
    auto o = make_oracle(id);
    for (std::uint64_t n = 1; n <= 4; ++n) {
      const GroupElem g = o->enumerate(5);
      const std::uint64_t theta = *o->theta_exact(g, n);
      if (theta == 0) continue;
      bool escaped = false;
      for (std::uint64_t i = 0; i < 300 && !escaped; ++i) {
        const GroupElem v = o->basis_enumerate(theta - 1, i);
        escaped = !o->basis_member(n, o->mul(o->mul(o->inv(g), v), g)) ||
                  !o->basis_member(n, o->mul(o->mul(g, v), o->inv(g)));
      }
      CHECK(escaped);
    }
  }
}

TEST_CASE("unknown oracle ids are rejected") {
  CHECK_THROWS_AS(make_oracle("nope"), ParseError);
  CHECK_THROWS_AS(make_oracle("finite:/does/not/exist"), ParseError);
}
