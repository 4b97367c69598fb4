// Cross-checks of tree-level predictions against the resultant oracle on
// explicit equations beyond the shipped corpus: attachment formulas,
// comparable-but-not-radically-comparable inputs, a mixed-degree
// two-branch product, and the Laurent type shift.

#include <qopolar/bunches.hpp>
#include <qopolar/lmw.hpp>
#include <qopolar/poly_text.hpp>
#include <qopolar/resultant.hpp>
#include <qopolar/toric.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace qopolar;
using qtest::pt;
using qtest::q;
using qtest::qv;

namespace {

EggersWallTree f11_tree() {
  return EggersWallTree({{"f11", Int(4), {qv({"3/2", "1"}), qv({"7/4", "3/2"})}}},
                        {{QVec::infinity(2)}}, Lattice::standard(2));
}

}  // namespace

TEST_CASE("attachment formula matches the oracle at genus two") {
  auto tree = f11_tree();
  auto f11 = parse_polynomial("(Y^2 - X1^3*X2^2)^2 - X1^5*X2^4*Y", 2);

  SECTION("h = Y attaches at the first exponent") {
    auto r = rho(f11, SparsePoly::main_variable(2));
    REQUIRE(r.comparable);
    CHECK(r.rho == qv({"6", "4"}));
    CHECK(tree.rho_from_coincidence(0, qv({"3/2", "1"})) == qv({"6", "4"}));
  }
  SECTION("h = Y^2 - X1^3*X2^2 attaches at the second exponent") {
    auto h = parse_polynomial("Y^2 - X1^3*X2^2", 2);
    auto r = rho(f11, h);
    REQUIRE(r.comparable);
    CHECK(r.rho == qv({"13", "10"}));
    // rho / deg h equals the formula value at the coincidence (7/4,3/2)
    CHECK(tree.rho_from_coincidence(0, qv({"7/4", "3/2"})) * Rat(2) == qv({"13", "10"}));
    // and the psi image is the predicted elementary polyhedron of height 2
    auto img = psi_image(f11, h);
    auto hull = newton_polyhedron(img);
    REQUIRE(hull.vertices().size() == 2);
    CHECK(hull.vertices()[0] == pt({"0", "0", "2"}));
    CHECK(hull.vertices()[1] == pt({"13", "10", "0"}));
  }
  SECTION("psi image of an attached degree-1 factor is elementary") {
    auto img = psi_image(f11, SparsePoly::main_variable(2));
    auto hull = newton_polyhedron(img);
    REQUIRE(hull.vertices().size() == 2);
    CHECK(hull.vertices()[0] == pt({"0", "0", "1"}));
    CHECK(hull.vertices()[1] == pt({"6", "4", "0"}));
  }
}

TEST_CASE("comparable does not imply radically comparable") {
  // Y^3 + X1*X2*Y^2 + X1^3*X2*Y + X1*X2 is quasi-ordinary; its polar is
  // comparable to it but the product with the polar is not quasi-ordinary
  auto f = parse_polynomial("Y^3 + X1*X2*Y^2 + X1^3*X2*Y + X1*X2", 2);
  auto qo = is_quasi_ordinary(f);
  REQUIRE(qo.quasi_ordinary);
  auto polar = f.monic_derivative();
  auto r = rho(f, polar);
  CHECK(r.comparable);
  auto mixed = is_quasi_ordinary(f * polar);
  CHECK_FALSE(mixed.quasi_ordinary);
}

TEST_CASE("two branches of different degrees verify end to end") {
  // f = f11 * (Y^2 - X1^3*X2^2): quasi-ordinary (the pairwise resultant is
  // a monomial), coincidence (7/4,3/2)
  auto f11 = parse_polynomial("(Y^2 - X1^3*X2^2)^2 - X1^5*X2^4*Y", 2);
  auto h = parse_polynomial("Y^2 - X1^3*X2^2", 2);
  auto qo = is_quasi_ordinary(f11 * h);
  REQUIRE(qo.quasi_ordinary);

  std::vector<BranchData> bs{{"a", Int(4), {qv({"3/2", "1"}), qv({"7/4", "3/2"})}},
                             {"b", Int(2), {qv({"3/2", "1"})}}};
  std::vector<std::vector<QVec>> contact(2, std::vector<QVec>(2, QVec::infinity(2)));
  contact[0][1] = contact[1][0] = qv({"7/4", "3/2"});
  EggersWallTree tree(bs, contact, Lattice::standard(2));

  auto type = bunch_type_fY(tree);
  REQUIRE(type.columns().size() == 2);
  CHECK(type.columns()[0].values ==
        std::vector<QVec>{qv({"6", "4"}), qv({"3", "2"})});
  CHECK(type.columns()[0].multiplicity == 1);
  CHECK(type.columns()[1].values ==
        std::vector<QVec>{qv({"13/2", "5"}), qv({"13/4", "5/2"})});
  CHECK(type.columns()[1].multiplicity == 4);

  SparsePoly f = f11 * h;
  SparsePoly polar = f.monic_derivative();
  auto img_a = newton_polyhedron(psi_image(f11, polar));
  CHECK(profile_of_polyhedron(img_a) == predicted_psi_i(tree, 0));
  REQUIRE(img_a.vertices().size() == 3);
  CHECK(img_a.vertices()[1] == pt({"6", "4", "4"}));
  CHECK(img_a.vertices()[2] == pt({"32", "24", "0"}));

  auto img_b = newton_polyhedron(psi_image(h, polar));
  CHECK(profile_of_polyhedron(img_b) == predicted_psi_i(tree, 1));
  REQUIRE(img_b.vertices().size() == 3);
  CHECK(img_b.vertices()[1] == pt({"3", "2", "4"}));
  CHECK(img_b.vertices()[2] == pt({"16", "12", "0"}));

  auto total = newton_polyhedron(psi_image(f, polar));
  CHECK(total == predicted_psi_total(tree));
}

TEST_CASE("the contact chain of the bunches recovers the boundary chain") {
  std::vector<BranchData> bs;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      bs.push_back({"f" + std::to_string(i) + std::to_string(j), Int(4),
                    {qv({"3/2", "1"}), qv({"7/4", "3/2"})}});
  std::vector<std::vector<QVec>> contact(4, std::vector<QVec>(4, QVec::infinity(2)));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) contact[a][b] = (a / 2 == b / 2) ? qv({"7/4", "3/2"}) : qv({"3/2", "1"});
  EggersWallTree tree(bs, contact, Lattice::standard(2));

  QVec l1 = qv({"3/2", "1"}), l2 = qv({"7/4", "3/2"});
  std::vector<EggersWallTree::AttachedFactor> bunches{
      {Int(3), {l1, l1, l1, l1}},
      {Int(6), {l2, l2, l1, l1}},
      {Int(6), {l1, l1, l2, l2}},
  };
  CHECK(tree.contact_chain(bunches) == tree.gamma_boundary());
}

TEST_CASE("laurent type shift agrees with the direct laurent oracle") {
  auto F = parse_polynomial("Y^2 - X^(-1)", 1);
  auto norm = laurent_normalize(F);
  // tree of f = Y^2 - X: one exponent 1/2
  EggersWallTree tree({{"f1", Int(2), {qv({"1/2"})}}}, {{QVec::infinity(1)}},
                      Lattice::standard(1));
  auto type = bunch_type_fY(tree);
  REQUIRE(type.columns().size() == 1);
  CHECK(type.columns()[0].values[0] == qv({"1"}));
  // oracle on the holomorphic side
  auto r = rho(norm.f, norm.f.monic_derivative());
  REQUIRE(r.comparable);
  CHECK(r.rho == qv({"1"}));
  // shifted type: entries move by deg(F) * q = -2
  auto shifted = shift_type(type, norm.q, {Int(2)});
  CHECK(shifted.columns()[0].values[0] == qv({"-1"}));
  // direct Laurent-side resultant: Res_Y(F, F_Y-normalized) = -X^(-1)
  auto rl = rho(F, F.monic_derivative());
  REQUIRE(rl.comparable);
  CHECK(rl.rho == qv({"-1"}));
}

TEST_CASE("property: random binomial-branch products verify against the oracle") {
  // products of irreducible binomial branches Y^n - c X^alpha with pairwise
  // comparable inclinations: the contact of two branches is the smaller
  // inclination (the larger-order terms differ first when the inclinations
  // are equal, exactly when the binomials share (n, alpha)); the resulting
  // tree predictions must match the resultant oracle on the equations
  qtest::Rng rng(24601);
  int done = 0;
  int tries = 0;
  while (done < 30 && ++tries < 200) {
    std::size_t d = static_cast<std::size_t>(rng.pick(1, 2));
    long s = rng.pick(2, 3);
    // a comparable chain of candidate inclinations
    std::vector<QVec> chain;
    {
      std::vector<Rat> cur(d);
      for (auto& c : cur) c = rng.pos_rat(3, 3);
      for (int t = 0; t < 3; ++t) {
        chain.push_back(QVec(cur));
        for (auto& c : cur) c += rng.pos_rat(2, 3);
      }
    }
    struct Branch {
      long n;
      QVec lambda;
      long c;
    };
    std::vector<Branch> picks;
    std::vector<BranchData> bs;
    bool ok = true;
    for (long i = 0; i < s && ok; ++i) {
      Branch b;
      b.lambda = chain[static_cast<std::size_t>(rng.pick(0, 2))];
      b.c = rng.pick(1, 3);
      // smallest n realizing the inclination as an irreducible binomial
      Lattice m0 = Lattice::standard(d);
      b.n = static_cast<long>(m0.index_in(m0.extend(b.lambda)).get_si());
      if (b.n < 2) {
        ok = false;  // integral inclination: not a characteristic exponent
        break;
      }
      for (const auto& other : picks)
        if (other.lambda == b.lambda && other.c == b.c) ok = false;  // duplicate branch
      picks.push_back(b);
      BranchData bd;
      bd.name = "f" + std::to_string(i + 1);
      bd.degree = b.n;
      bd.exponents = {b.lambda};
      bs.push_back(bd);
    }
    if (!ok) continue;
    std::vector<std::vector<QVec>> contact(bs.size(),
                                           std::vector<QVec>(bs.size(), QVec::infinity(d)));
    for (std::size_t i = 0; i < bs.size(); ++i)
      for (std::size_t j = i + 1; j < bs.size(); ++j)
        contact[i][j] = contact[j][i] = comparable_min(picks[i].lambda, picks[j].lambda);
    EggersWallTree tree(bs, contact, Lattice::standard(d));

    // the equations
    std::vector<SparsePoly> eqs;
    SparsePoly f = SparsePoly::one(d);
    for (const auto& b : picks) {
      SparsePoly p = SparsePoly::main_power(d, b.n);
      std::vector<Rat> alpha(d);
      for (std::size_t t = 0; t < d; ++t) alpha[t] = b.lambda[t] * Rat(b.n);
      p.add_term(alpha, 0, Rat(-b.c));
      eqs.push_back(p);
      f = f * p;
    }
    REQUIRE(is_quasi_ordinary(f).quasi_ordinary);
    SparsePoly polar = f.monic_derivative();
    if (polar.degree() < 1) continue;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      auto hull = newton_polyhedron(psi_image(eqs[i], polar));
      REQUIRE(profile_of_polyhedron(hull) == predicted_psi_i(tree, i));
    }
    REQUIRE(newton_polyhedron(psi_image(f, polar)) == predicted_psi_total(tree));
    ++done;
  }
  CHECK(done >= 30);
}
