#include "doctest.h"

#include "chainring/chain_ring.hpp"
#include "chainring/errors.hpp"

using namespace chainring;

namespace {

ChainRing make_r3() { return ChainRing(FieldContext::make(3, 1), 3); }

}  // namespace

TEST_CASE("construction and element validation") {
  ChainRing R = make_r3();
  CHECK(R.t() == 3);
  CHECK(R.is_zero(R.zero()));
  CHECK(R.is_unit(R.one()));
  CHECK_THROWS_AS(R.make({1, 2}), InvalidInput);
  CHECK_THROWS_AS(R.make({1, 2, 9}), InvalidInput);
  RtElem a = R.from_digit_rows({{1}, {2}});
  CHECK(a == R.make({1, 2, 0}));
}

TEST_CASE("arithmetic truncates at u^t") {
  ChainRing R = make_r3();
  RtElem a = R.make({1, 1, 0});  // 1 + u
  RtElem b = R.make({0, 2, 1});  // 2u + u^2
  CHECK(R.add(a, b) == R.make({1, 0, 1}));
  CHECK(R.mul(a, b) == R.make({0, 2, 0}));  // (1+u)(2u+u^2) = 2u + 3u^2 + u^3
  CHECK(R.mul(R.make({0, 0, 1}), R.make({0, 1, 0})) == R.zero());
  CHECK(R.u_valuation(b) == 1);
  CHECK(R.u_valuation(R.zero()) == 3);
  CHECK(R.pow(a, 4) == R.mul(R.mul(a, a), R.mul(a, a)));
}

TEST_CASE("units invert digit by digit") {
  ChainRing R = make_r3();
  RtElem a = R.make({1, 1, 0});
  RtElem ai = R.inv(a);
  CHECK(ai == R.make({1, 2, 1}));  // (1+u)^{-1} = 1 - u + u^2
  CHECK(R.mul(a, ai) == R.one());
  CHECK_THROWS_AS(R.inv(R.make({0, 1, 0})), NotAUnit);

  // Every unit of R^2 over F_2 inverts.
  ChainRing S(FieldContext::make(2, 2), 2);
  for (Fq a0 = 1; a0 < 4; ++a0)
    for (Fq a1 = 0; a1 < 4; ++a1) {
      RtElem x = S.make({a0, a1});
      CHECK(S.mul(x, S.inv(x)) == S.one());
    }
}

TEST_CASE("nth power detection matches the residue field") {
  ChainRing R = make_r3();
  CHECK(R.is_nth_power(R.make({1, 1, 0}), 2));
  CHECK_FALSE(R.is_nth_power(R.make({2, 0, 0}), 2));
  CHECK_FALSE(R.is_nth_power(R.make({2, 1, 2}), 2));
  CHECK_THROWS_AS(R.is_nth_power(R.make({0, 1, 0}), 2), NotAUnit);
  CHECK_THROWS_AS(R.is_nth_power(R.one(), 3), UnsupportedParameter);  // p | n
  CHECK_THROWS_AS(R.is_nth_power(R.one(), 0), InvalidInput);
}

TEST_CASE("nth root lifts one digit per level") {
  ChainRing R = make_r3();
  RtElem a = R.make({1, 1, 0});  // 1 + u
  RtElem r = R.nth_root(a, 2);
  CHECK(r == R.make({1, 2, 1}));  // (1+2u+u^2)^2 = 1+u
  CHECK(R.mul(r, r) == a);
  CHECK_THROWS_AS(R.nth_root(R.make({2, 0, 0}), 2), NotAnNthPower);

  // Exhaustive square check over R^2 for F_3: roots square back.
  ChainRing S(FieldContext::make(3, 1), 2);
  for (Fq a0 = 1; a0 < 3; ++a0)
    for (Fq a1 = 0; a1 < 3; ++a1) {
      RtElem x = S.make({a0, a1});
      if (!S.is_nth_power(x, 2)) continue;
      RtElem rt = S.nth_root(x, 2);
      CHECK(S.mul(rt, rt) == x);
    }

  // Cubes in R^2 over F_7 (n coprime to p).
  ChainRing T(FieldContext::make(7, 1), 2);
  for (Fq a0 = 1; a0 < 7; ++a0)
    for (Fq a1 = 0; a1 < 7; ++a1) {
      RtElem x = T.make({a0, a1});
      if (!T.is_nth_power(x, 3)) continue;
      RtElem rt = T.nth_root(x, 3);
      CHECK(T.pow(rt, 3) == x);
    }
}

TEST_CASE("reduction to fewer levels") {
  ChainRing R = make_r3();
  RtElem a = R.make({1, 2, 1});
  RtElem b = R.reduce_mod_u(a, 2);
  CHECK(b == ChainRing(R.field_ptr(), 2).make({1, 2}));
  CHECK_THROWS_AS(R.reduce_mod_u(a, 0), InvalidInput);
  CHECK_THROWS_AS(R.reduce_mod_u(a, 4), InvalidInput);
}

TEST_CASE("printing") {
  ChainRing R = make_r3();
  CHECK(R.to_string(R.zero()) == "0");
  CHECK(R.to_string(R.make({1, 0, 2})).find("u^2") != std::string::npos);
}
