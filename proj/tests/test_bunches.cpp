#include <qopolar/bunches.hpp>
#include <qopolar/poly_text.hpp>
#include <qopolar/resultant.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "tree_gen.hpp"

using namespace qopolar;
using qtest::pt;
using qtest::q;
using qtest::qv;

namespace {

EggersWallTree quartet_tree() {
  std::vector<BranchData> bs;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      bs.push_back({"f" + std::to_string(i) + std::to_string(j), Int(4),
                    {qv({"3/2", "1"}), qv({"7/4", "3/2"})}});
  QVec l1 = qv({"3/2", "1"});
  QVec l2 = qv({"7/4", "3/2"});
  std::vector<std::vector<QVec>> contact(4, std::vector<QVec>(4, QVec::infinity(2)));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) contact[a][b] = (a / 2 == b / 2) ? l2 : l1;
  return EggersWallTree(bs, contact, Lattice::standard(2));
}

EggersWallTree cusp_tree() {
  return EggersWallTree({{"f1", Int(2), {qv({"3/2"})}}},
                        {{QVec::infinity(1)}}, Lattice::standard(1));
}

EggersWallTree f11_tree() {
  return EggersWallTree({{"f11", Int(4), {qv({"3/2", "1"}), qv({"7/4", "3/2"})}}},
                        {{QVec::infinity(2)}}, Lattice::standard(2));
}

}  // namespace

TEST_CASE("bunch type of the quartet example") {
  auto type = bunch_type_fY(quartet_tree());
  REQUIRE(type.columns().size() == 3);
  // display order P1, P2, P3
  const auto& c = type.columns();
  CHECK(c[0].values == std::vector<QVec>{qv({"6", "4"}), qv({"6", "4"}), qv({"6", "4"}),
                                         qv({"6", "4"})});
  CHECK(c[0].multiplicity == 3);
  CHECK(c[1].values == std::vector<QVec>{qv({"13/2", "5"}), qv({"13/2", "5"}), qv({"6", "4"}),
                                         qv({"6", "4"})});
  CHECK(c[1].multiplicity == 6);
  CHECK(c[2].values == std::vector<QVec>{qv({"6", "4"}), qv({"6", "4"}), qv({"13/2", "5"}),
                                         qv({"13/2", "5"})});
  CHECK(c[2].multiplicity == 6);
  CHECK(type.total_multiplicity() == 15);
}

TEST_CASE("bunch type of irreducible branches") {
  auto cusp = bunch_type_fY(cusp_tree());
  REQUIRE(cusp.columns().size() == 1);
  CHECK(cusp.columns()[0].values[0] == qv({"3"}));
  CHECK(cusp.columns()[0].multiplicity == 1);

  auto t11 = bunch_type_fY(f11_tree());
  REQUIRE(t11.columns().size() == 2);
  CHECK(t11.columns()[0].values[0] == qv({"6", "4"}));
  CHECK(t11.columns()[0].multiplicity == 1);
  CHECK(t11.columns()[1].values[0] == qv({"13/2", "5"}));
  CHECK(t11.columns()[1].multiplicity == 2);

  // smooth case: no non-extremal vertex, empty type
  EggersWallTree smooth({{"f1", Int(1), {}}}, {{QVec::infinity(1)}}, Lattice::standard(1));
  CHECK(bunch_type_fY(smooth).empty());
}

TEST_CASE("predicted psi profiles") {
  auto tree = quartet_tree();
  for (std::size_t i = 0; i < 4; ++i) {
    auto p = predicted_psi_i(tree, i);
    REQUIRE(p.terms().size() == 2);
    CHECK(p.terms()[0].inclination == qv({"6", "4"}));
    CHECK(p.terms()[0].height == 9);
    CHECK(p.terms()[1].inclination == qv({"13/2", "5"}));
    CHECK(p.terms()[1].height == 6);
  }
  auto vs = vertices_of_profile(predicted_psi_i(tree, 0));
  CHECK(vs[0] == pt({"0", "0", "15"}));
  CHECK(vs[1] == pt({"54", "36", "6"}));
  CHECK(vs[2] == pt({"93", "66", "0"}));

  auto cusp = predicted_psi_i(cusp_tree(), 0);
  REQUIRE(cusp.terms().size() == 1);
  CHECK(cusp.terms()[0].inclination == qv({"3"}));
  CHECK(cusp.terms()[0].height == 1);

  auto p11 = predicted_psi_i(f11_tree(), 0);
  REQUIRE(p11.terms().size() == 2);
  CHECK(p11.terms()[0].height == 1);
  CHECK(p11.terms()[1].height == 2);
}

TEST_CASE("predicted total polyhedron") {
  auto g = predicted_psi_total(quartet_tree());
  REQUIRE(g.vertices().size() == 3);
  CHECK(g.vertices()[0] == pt({"0", "0", "15"}));
  CHECK(g.vertices()[1] == pt({"72", "48", "12"}));
  CHECK(g.vertices()[2] == pt({"372", "264", "0"}));

  // single branch: the total coincides with the per-branch prediction
  auto t11 = f11_tree();
  CHECK(predicted_psi_total(t11) == profile_to_polyhedron(predicted_psi_i(t11, 0)));

  // two-branch tree whose summed inclinations are incomparable: the total
  // polyhedron is not polygonal
  std::vector<BranchData> bs{{"f1", Int(2), {qv({"2", "3/2"})}},
                             {"f2", Int(2), {qv({"3/2", "2"})}}};
  std::vector<std::vector<QVec>> contact(2, std::vector<QVec>(2, QVec::infinity(2)));
  contact[0][1] = contact[1][0] = qv({"1", "1"});
  EggersWallTree skew(bs, contact, Lattice::standard(2));
  auto total = predicted_psi_total(skew);
  CHECK_FALSE(total.is_polygonal());
  for (std::size_t i = 0; i < 2; ++i) CHECK_NOTHROW(predicted_psi_i(skew, i));
}

TEST_CASE("coherent path of the total polyhedron near (1,1)") {
  auto total = predicted_psi_total(quartet_tree());
  auto path = coherent_path(total, {q("1"), q("1")});
  REQUIRE(path.size() == 2);
  // bottom edge carries the w-larger inclination (25,18) with height 12
  CHECK(path[0].inclination == qv({"25", "18"}));
  CHECK(path[0].height == 12);
  CHECK(path[1].inclination == qv({"24", "16"}));
  CHECK(path[1].height == 3);
}

TEST_CASE("ambient dimension three stays within the hull cap") {
  // three X variables: the total polyhedron lives in Q^4
  std::vector<BranchData> bs{{"f1", Int(2), {qv({"3/2", "1", "1"})}},
                             {"f2", Int(2), {qv({"3/2", "1", "1"})}}};
  std::vector<std::vector<QVec>> contact(2, std::vector<QVec>(2, QVec::infinity(3)));
  contact[0][1] = contact[1][0] = qv({"2", "2", "2"});
  EggersWallTree t(bs, contact, Lattice::standard(3));
  auto type = bunch_type_fY(t);
  REQUIRE(type.columns().size() == 2);
  auto total = predicted_psi_total(t);
  CHECK(total.ambient_dim() == 4);
  CHECK(total.is_polygonal());
  auto rebuilt = reconstruct_tree(type, {Int(2), Int(2)});
  CHECK(rebuilt.isomorphic_to(t));
}

TEST_CASE("grouping factors by normalized orders") {
  SECTION("all distinct and one factor") {
    auto g = group_bunches({{qv({"1"}), qv({"2"})}}, {Int(1), Int(1)}, 1);
    CHECK(g.classes.size() == 2);
    auto one = group_bunches({{qv({"5"})}}, {Int(2)}, 1);
    CHECK(one.classes.size() == 1);
    CHECK(one.type.columns()[0].multiplicity == 2);
  }
  SECTION("two-cusp oracle grouping") {
    auto f1 = parse_polynomial("Y^2 - X^3", 1);
    auto f2 = parse_polynomial("Y^2 - X^7", 1);
    auto h1 = parse_polynomial("Y", 1);
    auto h2 = parse_polynomial("Y^2 - 1/2*X^3 - 1/2*X^7", 1);
    std::vector<std::vector<QVec>> table(2);
    for (auto* f : {&f1, &f2})
      for (auto* h : {&h1, &h2}) {
        auto r = rho(*f, *h);
        REQUIRE(r.comparable);
        table[f == &f1 ? 0 : 1].push_back(r.rho);
      }
    auto g = group_bunches(table, {Int(1), Int(2)}, 1);
    REQUIRE(g.classes.size() == 2);
    // factor Y has tuple (3,7); the quadratic factor has tuple (3,3)
    CHECK(g.type.columns()[0].values == std::vector<QVec>{qv({"3"}), qv({"7"})});
    CHECK(g.type.columns()[0].multiplicity == 1);
    CHECK(g.type.columns()[1].values == std::vector<QVec>{qv({"3"}), qv({"3"})});
    CHECK(g.type.columns()[1].multiplicity == 2);
  }
  SECTION("quartet grouping from the tree data") {
    auto tree = quartet_tree();
    auto type = bunch_type_fY(tree);
    // feed the raw rho values of the three bunches back as if they were
    // per-factor data, with each bunch split into degree-1 pieces
    std::vector<std::vector<QVec>> table(4);
    std::vector<Int> degs;
    for (const auto& col : type.columns())
      for (Int t(0); t < col.multiplicity; ++t) {
        for (std::size_t i = 0; i < 4; ++i) table[i].push_back(col.values[i]);
        degs.push_back(Int(1));
      }
    auto g = group_bunches(table, degs, 2);
    REQUIRE(g.classes.size() == 3);
    CHECK(g.type == type);
  }
}

TEST_CASE("peeling profiles back to the contact chain") {
  auto tree = quartet_tree();
  std::vector<PolygonalProfile> profiles;
  for (std::size_t i = 0; i < 4; ++i) profiles.push_back(predicted_psi_i(tree, i));
  auto chain = peel_contact(profiles, tree);
  REQUIRE(chain.size() == 3);
  auto interior = tree.interior_vertices();
  CHECK(chain.at(tree.key_of(interior[0])) == 3);
  CHECK(chain.at(tree.key_of(interior[1])) == 6);
  CHECK(chain.at(tree.key_of(interior[2])) == 6);

  auto cusp = cusp_tree();
  auto cchain = peel_contact({predicted_psi_i(cusp, 0)}, cusp);
  REQUIRE(cchain.size() == 1);
  CHECK(cchain.begin()->first.value == qv({"3/2"}));
  CHECK(cchain.begin()->second == 1);

  // empty profiles give the empty chain
  std::vector<PolygonalProfile> empty{PolygonalProfile(1, Int(0))};
  CHECK(peel_contact(empty, cusp).empty());

  // inconsistent heights are rejected
  std::vector<PolygonalProfile> bad;
  bad.push_back(predicted_psi_i(tree, 0));
  bad.push_back(predicted_psi_i(tree, 1));
  bad.push_back(predicted_psi_i(tree, 2));
  PolygonalProfile wrong(2, Int(0));
  bad.push_back(wrong);
  CHECK_THROWS_AS(peel_contact(bad, tree), error);
}

TEST_CASE("reconstruction of the quartet example") {
  auto tree = quartet_tree();
  auto type = bunch_type_fY(tree);
  auto rebuilt = reconstruct_tree(type, {Int(4), Int(4), Int(4), Int(4)});
  CHECK(rebuilt.isomorphic_to(tree));
  // the valuations and the derived chain coefficient on P1->P2
  CHECK(rebuilt.branch(0).exponents[0] == qv({"3/2", "1"}));
  CHECK(rebuilt.branch(0).exponents[1] == qv({"7/4", "3/2"}));
  CHECK(rebuilt.contact(0, 1) == qv({"7/4", "3/2"}));
  CHECK(rebuilt.contact(0, 2) == qv({"3/2", "1"}));
  CHECK(rebuilt.gamma_above(0, qv({"3/2", "1"})) == 2);  // deg+deg-c = 4+4-6

  // cusp inverse
  BunchType cusp_type(1, 1);
  cusp_type.add_column({{qv({"3"})}, Int(1)});
  auto cusp = reconstruct_tree(cusp_type, {Int(2)});
  REQUIRE(cusp.branch(0).exponents.size() == 1);
  CHECK(cusp.branch(0).exponents[0] == qv({"3/2"}));

  // column order does not matter
  BunchType shuffled(4, 2);
  auto cols = type.columns();
  shuffled.add_column(cols[2]);
  shuffled.add_column(cols[0]);
  shuffled.add_column(cols[1]);
  auto again = reconstruct_tree(shuffled, {Int(4), Int(4), Int(4), Int(4)});
  CHECK(again.isomorphic_to(tree));

  // corrupted multiplicities fail loudly
  BunchType broken(4, 2);
  broken.add_column(cols[0]);
  broken.add_column(cols[1]);
  BunchColumn wrong = cols[2];
  wrong.multiplicity = 7;
  broken.add_column(wrong);
  CHECK_THROWS_AS(reconstruct_tree(broken, {Int(4), Int(4), Int(4), Int(4)}), error);
}

TEST_CASE("property: peeling recovers contact chains of attached factors") {
  // random factors attached at arbitrary path points (vertices, segment
  // midpoints, or above every vertex); their per-branch profiles are
  // Minkowski sums of deg/nu terms, and peeling must return the chain
  qtest::Rng rng(999);
  int done = 0;
  int tries = 0;
  while (done < 100 && ++tries < 400) {
    std::size_t d = static_cast<std::size_t>(rng.pick(1, 2));
    qtest::TreeGen gen(rng, d);
    auto tree = gen.generate(static_cast<int>(rng.pick(1, 3)));
    std::size_t s = tree.branch_count();
    long nfactors = rng.pick(1, 3);
    std::vector<EggersWallTree::AttachedFactor> factors;
    for (long t = 0; t < nfactors; ++t) {
      std::size_t i = static_cast<std::size_t>(rng.pick(0, static_cast<long>(s) - 1));
      // sorted finite valuations along the path of branch i
      std::vector<QVec> vals{QVec::zero(d)};
      for (std::size_t vid : tree.branch_paths()[i])
        if (tree.vertices()[vid].value.is_finite() &&
            tree.vertices()[vid].value != QVec::zero(d))
          vals.push_back(tree.vertices()[vid].value);
      std::size_t at = static_cast<std::size_t>(rng.pick(1, static_cast<long>(vals.size()) - 0) - 1);
      QVec a = vals.back() + QVec(std::vector<Rat>(d, rng.pos_rat(2, 2)));
      if (at + 1 < vals.size()) {
        // midpoint of a segment or the upper vertex itself
        a = rng.pick(0, 1) ? vals[at + 1]
                           : (vals[at] + vals[at + 1]) * qopolar::ratio(1, 2);
      }
      EggersWallTree::AttachedFactor h;
      h.degree = Int(rng.pick(1, 3));
      for (std::size_t j = 0; j < s; ++j)
        h.contact.push_back(j == i ? a : comparable_min(a, tree.contact(i, j)));
      factors.push_back(std::move(h));
    }
    auto chain = tree.contact_chain(factors);
    // profiles predicted from the chain
    std::vector<PolygonalProfile> profiles;
    for (std::size_t i = 0; i < s; ++i) {
      std::vector<ElementaryPolyhedron> terms;
      for (const auto& h : factors) {
        std::size_t carrier = 0;
        for (std::size_t j = 0; j < s; ++j)
          if (h.contact[j] == tree.attachment_point(h).value &&
              std::find(tree.attachment_point(h).branches.begin(),
                        tree.attachment_point(h).branches.end(),
                        j) != tree.attachment_point(h).branches.end())
            carrier = j;
        terms.push_back({h.degree, tree.nu_at(i, carrier, h.contact[carrier])});
      }
      profiles.push_back(minkowski_sum_profiles(terms));
    }
    auto peeled = peel_contact(profiles, tree);
    REQUIRE(peeled == chain);
    ++done;
  }
  CHECK(done >= 100);
}

TEST_CASE("reconstruction is row-order independent and rejects duplicate tuples") {
  auto tree = quartet_tree();
  auto type = bunch_type_fY(tree);
  // permute the rows (branches) of the matrix: swap the two pairs
  std::vector<std::size_t> perm{2, 3, 0, 1};
  BunchType permuted(4, 2);
  for (const auto& col : type.columns()) {
    BunchColumn nc;
    nc.multiplicity = col.multiplicity;
    for (std::size_t r = 0; r < 4; ++r) nc.values.push_back(col.values[perm[r]]);
    permuted.add_column(std::move(nc));
  }
  auto rebuilt = reconstruct_tree(permuted, {Int(4), Int(4), Int(4), Int(4)});
  // same branch data, contacts permuted accordingly
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(rebuilt.branch(r).exponents == tree.branch(perm[r]).exponents);
    for (std::size_t k = 0; k < 4; ++k)
      if (r != k) CHECK(rebuilt.contact(r, k) == tree.contact(perm[r], perm[k]));
  }

  // two columns with identical value tuples cannot be told apart
  BunchType dup(1, 1);
  dup.add_column({{qv({"3"})}, Int(1)});
  dup.add_column({{qv({"3"})}, Int(2)});
  CHECK_THROWS_AS(reconstruct_tree(dup, {Int(4)}), error);
}

TEST_CASE("property: reconstruction round trip on random trees") {
  qtest::Rng rng(777);
  int done = 0;
  int tries = 0;
  while (done < 100 && ++tries < 500) {
    std::size_t d = static_cast<std::size_t>(rng.pick(1, 3));
    qtest::TreeGen gen(rng, d);
    auto tree = gen.generate(static_cast<int>(rng.pick(1, 4)));
    auto type = bunch_type_fY(tree);
    if (type.empty()) continue;  // smooth singleton: nothing to reconstruct
    std::vector<Int> degrees;
    for (std::size_t i = 0; i < tree.branch_count(); ++i)
      degrees.push_back(tree.branch(i).degree);
    auto rebuilt = reconstruct_tree(type, degrees);
    REQUIRE(rebuilt.isomorphic_to(tree));
    ++done;
  }
  CHECK(done >= 100);
}

TEST_CASE("property: type, profiles and contact chain determine each other") {
  qtest::Rng rng(888);
  int done = 0;
  int tries = 0;
  while (done < 100 && ++tries < 500) {
    std::size_t d = static_cast<std::size_t>(rng.pick(1, 2));
    qtest::TreeGen gen(rng, d);
    auto tree = gen.generate(static_cast<int>(rng.pick(2, 4)));
    auto type = bunch_type_fY(tree);
    if (type.empty()) continue;
    // profiles predicted from the type equal the per-branch predictions
    std::vector<PolygonalProfile> profiles;
    for (std::size_t i = 0; i < tree.branch_count(); ++i)
      profiles.push_back(predicted_psi_i(tree, i));
    // total height bookkeeping: deg f_Y = sum deg - 1
    Int degsum(0);
    for (std::size_t i = 0; i < tree.branch_count(); ++i) degsum += tree.branch(i).degree;
    for (const auto& p : profiles) REQUIRE(p.total_height() == degsum - 1);
    // peeling recovers the -d(gamma) chain on the non-extremal vertices
    auto chain = peel_contact(profiles, tree);
    auto expected = tree.gamma_boundary();
    REQUIRE(chain == expected);
    ++done;
  }
  CHECK(done >= 100);
}
