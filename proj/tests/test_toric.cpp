#include <qopolar/bunches.hpp>
#include <qopolar/poly_text.hpp>
#include <qopolar/toric.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace qopolar;
using qtest::q;
using qtest::qv;

TEST_CASE("toric base change") {
  SECTION("identity basis") {
    auto h = parse_polynomial("Y^2 - X1^3*X2^2 + X1", 2);
    std::vector<std::vector<Int>> id{{Int(1), Int(0)}, {Int(0), Int(1)}};
    CHECK(toric_base_change(h, id) == h);
  }
  SECTION("exponents transform by the inverse transpose") {
    // basis a1 = (1,0), a2 = (1,1): X^(1,1) = V1^c1 V2^c2 with
    // c = (A^T)^-1 (1,1) = (0,1)
    auto h = parse_polynomial("X1*X2", 2);
    std::vector<std::vector<Int>> basis{{Int(1), Int(0)}, {Int(1), Int(1)}};
    auto out = toric_base_change(h, basis);
    CHECK(out == parse_polynomial("X2", 2));
    // monomial identity: transform back by the inverse basis
    auto h2 = parse_polynomial("X1^2*X2 - Y", 2);
    auto t2 = toric_base_change(h2, basis);
    CHECK(t2 == parse_polynomial("X1*X2 - Y", 2));
  }
  SECTION("non-unimodular and negative bases are rejected") {
    auto h = parse_polynomial("X1*X2", 2);
    CHECK_THROWS_AS(toric_base_change(h, {{Int(2), Int(0)}, {Int(0), Int(1)}}), error);
    CHECK_THROWS_AS(toric_base_change(h, {{Int(1), Int(0)}, {Int(-1), Int(1)}}), error);
  }
  SECTION("coherent paths are preserved for w in the cone of the basis") {
    auto h = parse_polynomial("Y^4 - X1^3*X2^2*Y^2 - X1^2*X2^3*Y + X1^5*X2^5", 2);
    std::vector<std::vector<Int>> basis{{Int(1), Int(0)}, {Int(1), Int(1)}};
    auto ht = toric_base_change(h, basis);
    // w_old in the cone dual to the basis; the transformed path is read
    // against w_new = A w_old and corresponds edge by edge through the
    // inverse-transpose exponent map
    std::vector<Rat> w_old{q("1"), q("2")};
    std::vector<Rat> w_new{q("1"), q("3")};  // (a1.w, a2.w)
    auto path = coherent_path(newton_polyhedron(h), w_old);
    auto patht = coherent_path(newton_polyhedron(ht), w_new);
    REQUIRE(path.size() == patht.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
      CHECK(path[i].height == patht[i].height);
      // q_new = (A^T)^-1 q_old, here (q1 - q2, q2)
      CHECK(patht[i].inclination ==
            QVec({path[i].inclination[0] - path[i].inclination[1], path[i].inclination[1]}));
    }
  }
}

TEST_CASE("laurent normalization") {
  SECTION("negative exponents shift out") {
    auto f = parse_polynomial("Y^2 - X^(-1)", 1);
    auto norm = laurent_normalize(f);
    CHECK(norm.q == std::vector<Int>{Int(-1)});
    CHECK(norm.f == parse_polynomial("Y^2 - X", 1));
  }
  SECTION("holomorphic input is unchanged") {
    auto f = parse_polynomial("Y^2 - X^3 + X*Y", 1);
    auto norm = laurent_normalize(f);
    CHECK(norm.q == std::vector<Int>{Int(0)});
    CHECK(norm.f == f);
  }
  SECTION("derivative compatibility with the same q") {
    auto f = parse_polynomial("Y^2 - X^(-1)", 1);
    auto norm = laurent_normalize(f);
    auto lhs = laurent_transform(f.derivative_main(), norm.q);
    CHECK(lhs == norm.f.derivative_main());
    // and for a mixed two-variable Laurent polynomial
    auto g = parse_polynomial("Y^3 - X1^(-2)*X2*Y + X1^(-1)", 2);
    auto n2 = laurent_normalize(g);
    CHECK_FALSE(n2.f.has_negative_x_exponent());
    CHECK(laurent_transform(g.derivative_main(), n2.q) == n2.f.derivative_main());
  }
}

TEST_CASE("type shift under the laurent transform") {
  BunchType t(1, 1);
  t.add_column({{qv({"3"})}, Int(1)});
  SECTION("zero shift is the identity") {
    auto s = shift_type(t, {Int(0)}, {Int(2)});
    CHECK(s == t);
  }
  SECTION("single-branch entry moves by deg * q") {
    auto s = shift_type(t, {Int(-1)}, {Int(2)});
    REQUIRE(s.columns().size() == 1);
    CHECK(s.columns()[0].values[0] == qv({"1"}));
    CHECK(s.columns()[0].multiplicity == 1);
  }
  SECTION("round trip with -q") {
    BunchType t2(2, 2);
    t2.add_column({{qv({"3", "1"}), qv({"2", "2"})}, Int(4)});
    t2.add_column({{qv({"5", "2"}), qv({"2", "2"})}, Int(2)});
    std::vector<Int> qvec{Int(-2), Int(1)};
    std::vector<Int> back{Int(2), Int(-1)};
    auto shifted = shift_type(t2, qvec, {Int(2), Int(3)});
    CHECK(shift_type(shifted, back, {Int(2), Int(3)}) == t2);
    CHECK(shifted != t2);
  }
  SECTION("shape mismatches are rejected") {
    CHECK_THROWS_AS(shift_type(t, {Int(1)}, {Int(1), Int(2)}), error);
    CHECK_THROWS_AS(shift_type(t, {Int(1), Int(0)}, {Int(2)}), error);
  }
}
