#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wallrig/error.hpp"
#include "wallrig/group.hpp"

using namespace wallrig;

namespace {
constexpr GroupElement e{0, 0, false};
constexpr GroupElement s{0, 0, true};
Point pt(mpq_class x, mpq_class y) { return {x, y}; }
}  // namespace

TEST_CASE("multiply examples") {
  CHECK(multiply(e, {5, -3, true}) == GroupElement{5, -3, true});
  CHECK(multiply({1, 2, true}, {3, 4, false}) == GroupElement{4, -2, true});
  CHECK(multiply({1, 0, true}, {1, 0, true}) == GroupElement{2, 0, false});
  CHECK(oracle::compose({1, 2, true}, {3, 4, false}) == GroupElement{4, -2, true});
}

TEST_CASE("inverse examples") {
  CHECK(inverse(e) == e);
  CHECK(inverse({1, 2, true}) == GroupElement{-1, 2, true});
  CHECK(inverse({3, 4, false}) == GroupElement{-3, -4, false});
  CHECK(multiply({1, 2, true}, inverse({1, 2, true})).is_identity());
}

TEST_CASE("apply_point and linear part") {
  CHECK(apply_point(s, pt(3, 5)) == pt(3, -5));
  CHECK(apply_point(e, pt(mpq_class(7, 2), -1)) == pt(mpq_class(7, 2), -1));
  CHECK(apply_point({1, 2, true}, pt(0, 1)) == pt(1, 1));
  CHECK(linear_part_apply({5, 7, false}, pt(1, 0)) == pt(1, 0));
  CHECK(linear_part_apply({5, 7, true}, pt(1, 0)) == pt(1, 0));
  CHECK(linear_part_apply(s, pt(0, 1)) == pt(0, -1));
}

TEST_CASE("membership agrees with generator closure") {
  CHECK(member_of({1, 1, false}, GroupTag::cm));
  CHECK_FALSE(member_of({1, 0, false}, GroupTag::cm));
  CHECK(member_of({1, 0, true}, GroupTag::pg));
  CHECK_FALSE(member_of(s, GroupTag::pg));
  for (auto tag : {GroupTag::pm, GroupTag::cm, GroupTag::pg}) {
    auto closed = oracle::closure(oracle::generators(tag), 8);
    for (int x = -3; x <= 3; ++x) {
      for (int y = -3; y <= 3; ++y) {
        for (bool r : {false, true}) {
          GroupElement a{x, y, r};
          CHECK_MESSAGE(member_of(a, tag) == (closed.count(a) > 0), to_string(tag), " ", format(a));
        }
      }
    }
  }
}

TEST_CASE("group laws on random samples") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    auto a = oracle::random_element(rng, 50), b = oracle::random_element(rng, 50), c = oracle::random_element(rng, 50);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * inverse(a)).is_identity());
    CHECK((inverse(a) * a).is_identity());
    CHECK(a * b == oracle::compose(a, b));
    Point p{oracle::frac(static_cast<long>(rng() % 41) - 20, 3), oracle::frac(static_cast<long>(rng() % 41) - 20, 7)};
    CHECK(apply_point(a * b, p) == apply_point(a, apply_point(b, p)));
    CHECK(apply_point(a, p) == oracle::act(a, p));
    GroupElement t{b.tx, b.ty, false};
    CHECK_FALSE(conjugate(a, t).refl);
  }
}

TEST_CASE("subgroups are closed") {
  std::mt19937_64 rng(12);
  for (auto tag : {GroupTag::cm, GroupTag::pg}) {
    for (int i = 0; i < 1000; ++i) {
      auto a = oracle::random_member(rng, 20, tag), b = oracle::random_member(rng, 20, tag);
      CHECK(member_of(a * b, tag));
      CHECK(member_of(inverse(a), tag));
    }
  }
}

TEST_CASE("group tag text") {
  CHECK(parse_group_tag("pg") == GroupTag::pg);
  CHECK(to_string(GroupTag::cm) == "cm");
  CHECK_THROWS_AS(parse_group_tag("p4"), Error);
  CHECK(format({-1, 2, true}) == "(-1,2,s)");
}
