#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "grf/group.hpp"

using namespace grf;

namespace {

// Independent order census: repeated table application, no FiniteGroup
// helpers.
std::multiset<int> order_census(const std::vector<std::vector<int>>& table) {
  std::multiset<int> census;
  for (size_t g = 0; g < table.size(); ++g) {
    int acc = static_cast<int>(g), k = 1;
    while (acc != 0) {
      acc = table[acc][g];
      ++k;
    }
    census.insert(k);
  }
  return census;
}

std::string write_temp(const std::string& text, const std::string& name) {
  std::string path = std::string("grf_test_") + name + ".txt";
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("cyclic groups") {
  GroupPtr z1 = make_cyclic(1);
  CHECK(z1->order() == 1);
  CHECK(z1->mul(0, 0) == 0);

  GroupPtr z3 = make_cyclic(3);
  CHECK(z3->order() == 3);
  CHECK(z3->mul(1, 2) == 0);
  CHECK(z3->inverse(1) == 2);
  CHECK(z3->name(2) == "2");
  CHECK(z3->is_abelian());

  GroupPtr z2 = make_cyclic(2);
  CHECK(z2->inverse(0) == 0);
  CHECK(z2->inverse(1) == 1);

  CHECK_THROWS_AS(make_cyclic(0), std::invalid_argument);
  CHECK_THROWS_AS(make_cyclic(-4), std::invalid_argument);
}

TEST_CASE("powers and element orders") {
  GroupPtr z6 = make_cyclic(6);
  CHECK(z6->power(1, 4) == 4);
  CHECK(z6->power(1, -1) == 5);
  CHECK(z6->power(5, 0) == 0);
  CHECK(z6->power(2, -2) == 2);
  CHECK(z6->element_order(0) == 1);
  CHECK(z6->element_order(1) == 6);
  CHECK(z6->element_order(2) == 3);
  CHECK(z6->element_order(3) == 2);
}

TEST_CASE("direct products") {
  GroupPtr z2 = make_cyclic(2);
  GroupPtr z3 = make_cyclic(3);
  GroupPtr k4 = make_direct_product(*z2, *z2);
  CHECK(k4->order() == 4);
  for (int g = 0; g < 4; ++g) CHECK(k4->mul(g, g) == 0);

  // Z2 x Z3 has the same order census as Z6: {1, 2, 3, 3, 6, 6}.
  GroupPtr z2z3 = make_direct_product(*z2, *z3);
  GroupPtr z6 = make_cyclic(6);
  CHECK(order_census(z2z3->table()) == order_census(z6->table()));

  // The one-element group is a neutral factor.
  GroupPtr z1 = make_cyclic(1);
  GroupPtr padded = make_direct_product(*z1, *z3);
  CHECK(padded->table() == z3->table());

  CHECK(parse_group_spec("Z2xZ2xZ3")->order() == 12);
}

TEST_CASE("dihedral groups") {
  CHECK_THROWS_AS(make_dihedral(1), std::invalid_argument);

  GroupPtr d2 = make_dihedral(2);
  CHECK(d2->order() == 4);
  CHECK(d2->is_abelian());

  GroupPtr d3 = make_dihedral(3);
  CHECK(d3->order() == 6);
  CHECK_FALSE(d3->is_abelian());

  GroupPtr d4 = make_dihedral(4);
  CHECK(d4->order() == 8);
  // Self-inverse census: rotations e and r^2, plus every reflection.
  int rot_self = 0, ref_self = 0;
  for (int g = 0; g < 4; ++g) rot_self += d4->mul(g, g) == 0 ? 1 : 0;
  for (int g = 4; g < 8; ++g) ref_self += d4->mul(g, g) == 0 ? 1 : 0;
  CHECK(rot_self == 2);
  CHECK(ref_self == 4);
  // Rotations form a closed abelian subgroup up front.
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(d4->mul(a, b) < 4);
      CHECK(d4->mul(a, b) == d4->mul(b, a));
    }
}

TEST_CASE("symmetric groups") {
  CHECK_THROWS_AS(make_symmetric(0), std::invalid_argument);
  CHECK_THROWS_AS(make_symmetric(6), std::invalid_argument);

  GroupPtr s1 = make_symmetric(1);
  CHECK(s1->order() == 1);

  GroupPtr s3 = make_symmetric(3);
  CHECK(s3->order() == 6);
  CHECK(s3->name(0) == "e");

  // Exhaustive scan exhibits a non-commuting pair.
  bool found = false;
  for (int a = 0; a < 6 && !found; ++a)
    for (int b = 0; b < 6 && !found; ++b)
      if (s3->mul(a, b) != s3->mul(b, a)) found = true;
  CHECK(found);

  GroupPtr s4 = make_symmetric(4);
  CHECK(s4->order() == 24);
  // Census of S4: 1 identity, 9 elements of order 2, 8 of order 3, 6 of
  // order 4.
  std::multiset<int> census = order_census(s4->table());
  CHECK(census.count(1) == 1);
  CHECK(census.count(2) == 9);
  CHECK(census.count(3) == 8);
  CHECK(census.count(4) == 6);

  CHECK(make_symmetric(5)->order() == 120);
}

TEST_CASE("subgroup generated by the square") {
  GroupPtr z5 = make_cyclic(5);
  Subgroup h5 = square_generated_subgroup(z5, 1);
  CHECK(h5.members == std::vector<int>{0, 1, 2, 3, 4});

  GroupPtr z6 = make_cyclic(6);
  Subgroup h6 = square_generated_subgroup(z6, 1);
  CHECK(h6.members == std::vector<int>{0, 2, 4});

  Subgroup he = square_generated_subgroup(z6, 0);
  CHECK(he.members == std::vector<int>{0});

  // A reflection in D4 squares to the identity.
  GroupPtr d4 = make_dihedral(4);
  Subgroup hr = square_generated_subgroup(d4, 5);
  CHECK(hr.members == std::vector<int>{0});
}

TEST_CASE("right cosets") {
  GroupPtr z6 = make_cyclic(6);
  Subgroup h = square_generated_subgroup(z6, 1);
  auto blocks = right_cosets(h);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::vector<int>{0, 2, 4});
  CHECK(blocks[1] == std::vector<int>{1, 3, 5});

  Subgroup whole{z6, {0, 1, 2, 3, 4, 5}};
  CHECK(right_cosets(whole).size() == 1);

  Subgroup trivial{z6, {0}};
  auto singletons = right_cosets(trivial);
  REQUIRE(singletons.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(singletons[i] == std::vector<int>{i});

  // Every block is a full partition cell of the same size.
  GroupPtr d4 = make_dihedral(4);
  Subgroup h2 = square_generated_subgroup(d4, 1);  // <r^2> = {0, 2}
  CHECK(h2.members == std::vector<int>{0, 2});
  auto d4blocks = right_cosets(h2);
  REQUIRE(d4blocks.size() == 4);
  std::set<int> seen;
  for (const auto& b : d4blocks) {
    CHECK(b.size() == 2);
    seen.insert(b.begin(), b.end());
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("automorphism checking") {
  GroupPtr z3 = make_cyclic(3);
  CHECK(check_automorphism(*z3, {0, 1, 2}));
  CHECK(check_automorphism(*z3, {0, 2, 1}));  // inversion
  CHECK_FALSE(check_automorphism(*z3, {1, 0, 2}));
  CHECK_THROWS_AS(check_automorphism(*z3, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(check_automorphism(*z3, {0, 1, 1}), std::invalid_argument);

  // Conjugation is an automorphism of S3.
  GroupPtr s3 = make_symmetric(3);
  std::vector<int> conj(6);
  for (int i = 0; i < 6; ++i) conj[i] = s3->mul(s3->mul(1, i), s3->inverse(1));
  CHECK(check_automorphism(*s3, conj));
}

TEST_CASE("group spec parsing") {
  CHECK(parse_group_spec("Z6")->order() == 6);
  CHECK(parse_group_spec("D4")->order() == 8);
  CHECK(parse_group_spec("S3")->order() == 6);
  CHECK(parse_group_spec("Z2xZ4")->order() == 8);

  CHECK_THROWS_AS(parse_group_spec(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("Z0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("Q8"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("Zx"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("Z2x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("Z2y Z3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("@file:/no/such/file"),
                  std::invalid_argument);
}

TEST_CASE("cayley table files round-trip") {
  for (const char* spec : {"Z6", "D4", "S3", "Z2xZ4"}) {
    GroupPtr g = parse_group_spec(spec);
    std::string path = write_temp(render_cayley_table(*g),
                                  std::string("roundtrip_") + spec);
    GroupPtr back = parse_group_spec("@file:" + path);
    CHECK(back->table() == g->table());
    CHECK(back->names() == g->names());
    std::remove(path.c_str());
  }

  // Bare table without header or names.
  std::string path = write_temp("0 1\n1 0\n", "bare");
  GroupPtr z2 = parse_group_spec("@file:" + path);
  CHECK(z2->table() == make_cyclic(2)->table());
  std::remove(path.c_str());
}

TEST_CASE("table validation names the violated axiom") {
  using Table = std::vector<std::vector<int>>;

  // Row 0 must be the identity row.
  CHECK_THROWS_WITH_AS(FiniteGroup(Table{{1, 0}, {0, 1}}, {}),
                       doctest::Contains("identity"), std::invalid_argument);

  // Repeated entry in a row.
  CHECK_THROWS_WITH_AS(FiniteGroup(Table{{0, 1}, {1, 1}}, {}),
                       doctest::Contains("Latin"), std::invalid_argument);

  // A Latin square with identity that fails associativity: Z6 with the
  // rectangle (1,1),(1,4),(4,1),(4,4) swapped.
  Table twisted(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) twisted[a][b] = (a + b) % 6;
  twisted[1][1] = 5;
  twisted[1][4] = 2;
  twisted[4][1] = 2;
  twisted[4][4] = 5;
  CHECK_THROWS_WITH_AS(FiniteGroup(twisted, {}),
                       doctest::Contains("associativity"),
                       std::invalid_argument);

  // File parsing surfaces the same axiom names.
  std::string path = write_temp("0 1\n1 1\n", "bad_latin");
  CHECK_THROWS_WITH_AS(parse_group_spec("@file:" + path),
                       doctest::Contains("Latin"), std::invalid_argument);
  std::remove(path.c_str());

  std::string garbled = write_temp("|G| = 2\n0 1\n1 x\n", "bad_token");
  CHECK_THROWS_WITH_AS(parse_group_spec("@file:" + garbled),
                       doctest::Contains("integer"), std::invalid_argument);
  std::remove(garbled.c_str());
}

TEST_CASE("structural comparison") {
  GroupPtr a = make_cyclic(4);
  GroupPtr b = make_cyclic(4);
  CHECK(same_structure(*a, *b));
  CHECK_FALSE(same_structure(*a, *make_direct_product(*make_cyclic(2),
                                                      *make_cyclic(2))));
  CHECK_FALSE(same_structure(*make_dihedral(3), *make_cyclic(6)));
}
