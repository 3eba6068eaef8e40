#include <doctest.h>

#include <fstream>
#include <sstream>

#include "freetop/errors.hpp"
#include "freetop/finite_group.hpp"

using namespace freetop;

TEST_CASE("cyclic group tables validate") {
  const FiniteGroup z6 = FiniteGroup::cyclic(6);
  CHECK(z6.order() == 6);
  CHECK(z6.identity() == 0);
  CHECK(z6.mul(4, 5) == 3);
  CHECK(z6.inv(2) == 4);
  CHECK(z6.is_abelian());
}

TEST_CASE("symmetric group composition convention (a*b)(x) = a(b(x))") {
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.is_abelian());
  // lex order: 0=[012] e, 1=[021], 2=[102], 3=[120], 4=[201], 5=[210]
  CHECK(s3.identity() == 0);
  // [021]*[102]: x -> [102](x) -> [021](.) gives 0->1->2? [102](0)=1, [021](1)=2 -> image 2
  const std::uint16_t prod = s3.mul(1, 2);
  CHECK(prod == 4);  // images (2,0,1) = [201]? [021]([102](0..2)) = [021](1,0,2) = (2,0,1)
  for (std::uint16_t g = 0; g < 6; ++g) {
    CHECK(s3.mul(g, s3.inv(g)) == s3.identity());
  }
}

TEST_CASE("malformed tables are rejected") {
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), ParseError);  // no inverse row
  CHECK_THROWS_AS(FiniteGroup::from_table({{1}}), ParseError);             // no identity
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}}), ParseError);          // not square
  std::istringstream bad("0 1\n1 x\n");
  CHECK_THROWS_AS(FiniteGroup::parse(bad), ParseError);
}

TEST_CASE("parse round-trips a table") {
  std::ostringstream os;
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  for (std::uint16_t i = 0; i < 4; ++i) {
    for (std::uint16_t j = 0; j < 4; ++j) os << z4.mul(i, j) << (j == 3 ? "" : " ");
    os << '\n';
  }
  std::istringstream in(os.str());
  const FiniteGroup back = FiniteGroup::parse(in);
  CHECK(back.order() == 4);
  CHECK(back.mul(3, 2) == 1);
}

TEST_CASE("the bundled s3 table matches the builder") {
  std::ifstream in(FREETOP_DATA_DIR "/s3.cayley");
  REQUIRE(in.good());
  const FiniteGroup file = FiniteGroup::parse(in);
  const FiniteGroup built = FiniteGroup::symmetric(3);
  REQUIRE(file.order() == built.order());
  for (std::uint16_t i = 0; i < 6; ++i) {
    for (std::uint16_t j = 0; j < 6; ++j) CHECK(file.mul(i, j) == built.mul(i, j));
  }
}

TEST_CASE("bk_check_finite accepts subgroup chains of z2^8") {
  const FiniteGroup g = FiniteGroup::cyclic(256);
  std::vector<std::vector<std::uint16_t>> chain;
  for (std::uint32_t n = 0; n <= 8; ++n) {
    std::vector<std::uint16_t> set;
    for (std::uint32_t x = 0; x < 256; x += (1u << n)) set.push_back(static_cast<std::uint16_t>(x));
    chain.push_back(std::move(set));
  }
  const BkReport rep = bk_check_finite(g, chain, 2, 4);
  CHECK(rep.violation_count == 0);
  CHECK(rep.orderings_collapsed);
  CHECK(rep.products_checked > 1000);
}

TEST_CASE("bk_check_finite rejects bad chains up front") {
  const FiniteGroup z8 = FiniteGroup::cyclic(8);
  const std::vector<std::uint16_t> all{0, 1, 2, 3, 4, 5, 6, 7};
  // squaring violation: {0,1,7}^2 contains 2, which is outside {0,4}
  CHECK_THROWS_AS(bk_check_finite(z8, {all, {0, 4}, {0, 1, 7}}, 0, 2), HypothesisViolation);
  // symmetry violation: 1 without its inverse 7
  CHECK_THROWS_AS(bk_check_finite(z8, {all, {0, 2, 4, 6}, {0, 1}}, 0, 2),
                  HypothesisViolation);
  // missing identity
  CHECK_THROWS_AS(bk_check_finite(z8, {all, {4}}, 0, 2), HypothesisViolation);
}

TEST_CASE("bk_check_finite reports violations when the conclusion fails") {
  // A chain satisfying the hypotheses but checked at an impossible k is not
  // constructible (the lemma is a theorem); instead check the reporting path
  // on a chain whose sets are not nested subgroups: hypotheses hold, zero
  // violations expected all the same.
  const FiniteGroup z16 = FiniteGroup::cyclic(16);
  std::vector<std::uint16_t> v0;
  for (std::uint16_t i = 0; i < 16; ++i) v0.push_back(i);
  // balls around 0: {0, +-1, +-2}, {0, +-1}, {0}
  const std::vector<std::vector<std::uint16_t>> chain{
      v0, {0, 1, 15, 2, 14}, {0, 1, 15}, {0}};
  const BkReport rep = bk_check_finite(z16, chain, 0, 3);
  CHECK(rep.violation_count == 0);
}
