#include <doctest.h>

#include <random>

#include "cdlab/free_group.hpp"
#include "cdlab/group.hpp"

using namespace cdlab;

namespace {

void check_axioms(const FiniteGroup& g) {
  const int n = g.order();
  for (int x = 0; x < n; ++x) {
    CHECK(g.mul(g.identity(), x) == x);
    CHECK(g.mul(x, g.identity()) == x);
    CHECK(g.mul(x, g.inv(x)) == g.identity());
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) REQUIRE(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
  }
}

}  // namespace

TEST_CASE("built groups satisfy the group axioms") {
  for (const auto& g : {cyclic_group(1), cyclic_group(7), dihedral_group(5), symmetric_group(4),
                        product_group(*cyclic_group(2), *symmetric_group(3))})
    check_axioms(*g);
  CHECK(symmetric_group(5)->order() == 120);
  CHECK(dihedral_group(4)->order() == 8);
}

TEST_CASE("cyclic group arithmetic") {
  const auto z4 = cyclic_group(4);
  CHECK(z4->order() == 4);
  CHECK(z4->mul(1, 3) == 0);
  CHECK(z4->inv(1) == 3);
  CHECK(z4->is_abelian());
}

TEST_CASE("S3 is non-abelian") {
  const auto s3 = symmetric_group(3);
  const int a = s3->element("(12)");
  const int b = s3->element("(13)");
  CHECK(s3->order() == 6);
  CHECK(s3->mul(a, b) != s3->mul(b, a));
  CHECK_FALSE(s3->is_abelian());
  CHECK(s3->label(s3->identity()) == "e");
}

TEST_CASE("dihedral relations") {
  const int n = 5;
  const auto d = dihedral_group(n);
  const int r = 1, s = n;
  int rn = d->identity();
  for (int i = 0; i < n; ++i) rn = d->mul(rn, r);
  CHECK(rn == d->identity());
  CHECK(d->mul(s, s) == d->identity());
  CHECK(d->mul(d->mul(s, r), s) == d->inv(r));
}

TEST_CASE("table validation names the first failure") {
  // A loop of order 5 with identity and inverses but (1 1) 2 != 1 (1 2).
  const std::vector<std::vector<int>> t{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    group_from_table(t);
    FAIL("expected a construction error");
  } catch (const ConstructionError& e) {
    CHECK(std::string(e.what()).find("not associative at (x, y, z) = (1, 1, 2)") != std::string::npos);
  }
  CHECK_THROWS_AS(group_from_table({{0, 1}, {1, 1}}), ConstructionError);
  CHECK_THROWS_AS(group_from_table({{0, 1}, {1}}), ConstructionError);
  CHECK_THROWS_AS(group_from_table({}), ConstructionError);
  CHECK_THROWS_AS(cyclic_group(121), CapacityError);
  CHECK_THROWS(symmetric_group(6));
  CHECK_THROWS_AS(symmetric_group(3)->element("(45)"), ConstructionError);
}

TEST_CASE("table round trip") {
  const auto s3 = symmetric_group(3);
  const auto copy = group_from_table(s3->cayley(), s3->labels());
  CHECK(*copy == *s3);
}

TEST_CASE("generated subgroups") {
  const auto z6 = cyclic_group(6);
  CHECK(generated_subgroup(z6, std::vector<int>{2}).members() == std::vector<int>{0, 2, 4});
  CHECK(generated_subgroup(cyclic_group(4), std::vector<int>{1}).order() == 4);
  const auto s3 = symmetric_group(3);
  CHECK(generated_subgroup(s3, std::vector<int>{s3->element("(12)"), s3->element("(13)")}).order() == 6);
  CHECK(generated_subgroup(s3, std::vector<int>{}).members() == std::vector<int>{s3->identity()});

  const auto s4 = symmetric_group(4);
  for (int x = 0; x < s4->order(); ++x) {
    const auto h = generated_subgroup(s4, std::vector<int>{x, s4->inv((x + 5) % 24)});
    CHECK(generated_subgroup(s4, h.members()).members() == h.members());
    CHECK(s4->order() % h.order() == 0);
  }
}

TEST_CASE("left cosets") {
  const auto z6 = cyclic_group(6);
  const auto p = left_cosets(generated_subgroup(z6, std::vector<int>{2}));
  CHECK(p.blocks == std::vector<std::vector<int>>{{0, 2, 4}, {1, 3, 5}});
  CHECK(p.block_of[3] == 1);
  CHECK(left_cosets(generated_subgroup(z6, std::vector<int>{1})).blocks.size() == 1);

  const auto s3 = symmetric_group(3);
  const auto h = generated_subgroup(s3, std::vector<int>{s3->element("(12)")});
  const auto q = left_cosets(h);
  REQUIRE(q.blocks.size() == 3);
  std::vector<int> seen(6, 0);
  for (const auto& b : q.blocks) {
    CHECK(b.size() == 2);
    for (int x : b) ++seen[static_cast<size_t>(x)];
    // x^-1 y in H for x, y in the same block.
    CHECK(h.contains(s3->mul(s3->inv(b[0]), b[1])));
  }
  CHECK(seen == std::vector<int>(6, 1));
}

TEST_CASE("free group words") {
  const auto a = FreeWord::parse(2, "a");
  CHECK(free_mul(a, free_inverse(a)).empty());
  CHECK(free_mul(FreeWord::parse(2, "ab"), FreeWord::parse(2, "Ba")) == FreeWord::parse(2, "aa"));
  CHECK(FreeWord::parse(2, "aB").letters() == std::vector<int>{1, -2});
  CHECK(FreeWord::reduce(2, {1, 2, -2, -1, 2}).str() == "b");
  CHECK_THROWS_AS(FreeWord(2, {1, -1}), ConstructionError);
  CHECK_THROWS_AS(FreeWord(2, {3}), ConstructionError);
  CHECK_THROWS_AS(free_mul(FreeWord(2), FreeWord(3)), ConstructionError);
  CHECK(free_distance(FreeWord::parse(2, "ab"), FreeWord::parse(2, "aB")) == 2);
  CHECK(common_prefix_length(FreeWord::parse(2, "abA"), FreeWord::parse(2, "abb")) == 2);
}

TEST_CASE("free balls") {
  const auto ball = free_ball(2, 2);
  CHECK(ball.size() == 17);
  CHECK(free_ball_size(2, 2) == 17);
  CHECK(free_ball(3, 3).size() == static_cast<size_t>(1 + 6 + 30 + 150));
  for (int r = 0; r <= 8; ++r) {
    long long expected = 1, sphere = 4;
    for (int k = 1; k <= r; ++k, sphere *= 3) expected += sphere;
    CHECK(free_ball_size(2, r) == expected);
  }
  for (size_t i = 1; i < ball.size(); ++i) CHECK(ball[i - 1].length() <= ball[i].length());
}

TEST_CASE("free product is associative and inversion is an involution") {
  std::mt19937_64 eng(12345);
  for (int t = 0; t < 1000; ++t) {
    const int rank = 1 + static_cast<int>(eng() % 3);
    auto word = [&] {
      std::vector<int> letters;
      const int len = static_cast<int>(eng() % 21);
      for (int i = 0; i < len; ++i) {
        const int s = 1 + static_cast<int>(eng() % rank);
        letters.push_back(eng() % 2 ? s : -s);
      }
      return FreeWord::reduce(rank, letters);
    };
    const auto a = word(), b = word(), c = word();
    REQUIRE(free_mul(free_mul(a, b), c) == free_mul(a, free_mul(b, c)));
    REQUIRE(free_inverse(free_inverse(a)) == a);
    REQUIRE(free_inverse(free_mul(a, b)) == free_mul(free_inverse(b), free_inverse(a)));
  }
}
