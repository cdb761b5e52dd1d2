#include <doctest.h>

#include <cmath>

#include "cdlab/measure.hpp"
#include "cdlab/rng.hpp"

using namespace cdlab;

namespace {

Measure<double> on(const GroupPtr& g, std::vector<std::pair<int, double>> atoms) {
  return Measure<double>::from_atoms(g, atoms).as_probability();
}

Measure<double> on_z(std::vector<std::pair<long, double>> atoms) {
  return Measure<double>::from_atoms(atoms).as_probability();
}

// C(2m, m) / 4^m from the product of (2k-1)/(2k).
double central_binomial(int m) {
  double p = 1.0;
  for (int k = 1; k <= m; ++k) p *= double(2 * k - 1) / double(2 * k);
  return p;
}

Measure<double> random_measure(const GroupPtr& g, Engine& eng) {
  return Measure<double>(g, random_real_vector(g->order(), eng, 0.0, 1.0));
}

}  // namespace

TEST_CASE("probability validation") {
  const auto z2 = cyclic_group(2);
  CHECK_THROWS_AS(Measure<double>::from_atoms(z2, {{0, 0.5}}).as_probability(), ConstructionError);
  CHECK_THROWS_AS(Measure<double>::from_atoms(z2, {{0, 1.5}, {1, -0.5}}).as_probability(), ConstructionError);
  CHECK_FALSE(Measure<double>::from_atoms(z2, {{0, 0.5}}).is_probability());
  CHECK(on(z2, {{0, 0.5}, {1, 0.5}}).is_probability());
}

TEST_CASE("convolution on Z/2") {
  const auto z2 = cyclic_group(2);
  const auto d1 = on(z2, {{1, 1.0}});
  const auto dd = convolve(d1, d1);
  CHECK(dd[0] == 1.0);
  CHECK(dd[1] == 0.0);
  const auto u = on(z2, {{0, 0.5}, {1, 0.5}});
  const auto uu = convolve(u, u);
  CHECK(uu[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(uu[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(uu.is_probability());
}

TEST_CASE("convolution order on S3") {
  const auto s3 = symmetric_group(3);
  const int a = s3->element("(12)"), b = s3->element("(13)");
  const auto ab = convolve(on(s3, {{a, 1.0}}), on(s3, {{b, 1.0}}));
  CHECK(ab[s3->mul(a, b)] == 1.0);
}

TEST_CASE("simple random walk on Z matches central binomial coefficients") {
  const auto srw = on_z({{-1, 0.5}, {1, 0.5}});
  const auto p100 = convolution_power(srw, 100);
  CHECK(p100.lo() == -100);
  CHECK(p100.hi() == 100);
  CHECK(std::abs(p100.at(0) - central_binomial(50)) < 1e-12);
  CHECK(std::abs(p100.at(0) - 0.0795892) < 1e-7);
  CHECK(p100.at(1) == 0.0);
  CHECK(p100.at(1000) == 0.0);
  Measure<double> iter = srw;
  for (int n = 2; n <= 40; ++n) {
    iter = convolve(iter, srw);
    CHECK(iter.size() == 2 * n + 1);
  }
  CHECK((iter.weights() - convolution_power(srw, 40).weights()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("windows grow exactly") {
  const auto mu = on_z({{2, 0.25}, {5, 0.75}});
  const auto nu = on_z({{-3, 1.0}});
  const auto c = convolve(mu, nu);
  CHECK(c.lo() == -1);
  CHECK(c.hi() == 2);
  CHECK(c.at(-1) == 0.25);
  CHECK(c.at(2) == 0.75);
  CHECK_THROWS_AS(convolve(mu, on(cyclic_group(2), {{0, 1.0}})), ConstructionError);
}

TEST_CASE("reflection") {
  const auto z5 = cyclic_group(5);
  const auto r = reflect(on(z5, {{1, 0.7}, {2, 0.3}}));
  CHECK(r[4] == 0.7);
  CHECK(r[3] == 0.3);
  const auto srw = on_z({{-1, 0.5}, {1, 0.5}});
  const auto rs = reflect(srw);
  CHECK(rs.lo() == -1);
  CHECK((rs.weights() - srw.weights()).norm() == 0.0);
  CHECK(reflect(on_z({{3, 1.0}})).at(-3) == 1.0);

  const auto s4 = symmetric_group(4);
  auto eng = make_stream(kDefaultSeed, 1);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_measure(s4, eng);
    CHECK((reflect(reflect(m)).weights() - m.weights()).norm() == 0.0);
  }
}

TEST_CASE("algebraic identities on random measures") {
  const auto s4 = symmetric_group(4);
  auto eng = make_stream(kDefaultSeed, 2);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_measure(s4, eng), b = random_measure(s4, eng), c = random_measure(s4, eng);
    CHECK((convolve(convolve(a, b), c).weights() - convolve(a, convolve(b, c)).weights()).cwiseAbs().maxCoeff() < 1e-12);
    const Measure<double> bc(s4, b.weights() + c.weights());
    CHECK((convolve(a, bc).weights() - convolve(a, b).weights() - convolve(a, c).weights()).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((reflect(convolve(a, b)).weights() - convolve(reflect(b), reflect(a)).weights()).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("probability flag is preserved") {
  const auto s3 = symmetric_group(3);
  const auto mu = on(s3, {{1, 0.5}, {2, 0.5}});
  CHECK(convolve(mu, mu).is_probability());
  CHECK(convolution_power(mu, 7).is_probability());
  CHECK(cesaro_average(mu, 7).is_probability());
  CHECK(reflect(mu).is_probability());
}

TEST_CASE("Cesaro averages") {
  const auto z4 = cyclic_group(4);
  const auto a4 = cesaro_average(on(z4, {{1, 1.0}}), 4);
  for (int x = 0; x < 4; ++x) CHECK(a4[x] == 0.25);
  const auto uniform = on(z4, {{0, 0.25}, {1, 0.25}, {2, 0.25}, {3, 0.25}});
  CHECK(tv_distance(uniform, a4) == 0.0);

  const auto s3 = symmetric_group(3);
  const auto e = on(s3, {{s3->identity(), 1.0}});
  for (int n : {1, 2, 10}) CHECK(cesaro_average(e, n)[s3->identity()] == 1.0);

  const auto z6 = cyclic_group(6);
  const auto a3 = cesaro_average(on(z6, {{2, 1.0}}), 3);
  for (int x : {0, 2, 4}) CHECK(a3[x] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  for (int x : {1, 3, 5}) CHECK(a3[x] == 0.0);

  const auto seq = cesaro_sequence(on(z4, {{1, 1.0}}), std::vector<int>{1, 4, 8});
  REQUIRE(seq.size() == 3);
  CHECK(seq[1].second[0] == 0.25);
  CHECK_THROWS_AS(cesaro_average(e, 0), ConstructionError);
}

TEST_CASE("total variation") {
  const auto z2 = cyclic_group(2);
  CHECK(tv_norm(on(z2, {{0, 0.3}, {1, 0.7}})) == doctest::Approx(1.0));
  CHECK(tv_distance(on(z2, {{0, 1.0}}), on(z2, {{1, 1.0}})) == 2.0);
  CHECK(tv_distance(on_z({{0, 1.0}}), on_z({{5, 1.0}})) == 2.0);
}

TEST_CASE("Haar measure on subgroups") {
  const auto z6 = cyclic_group(6);
  const auto w = haar_on_subgroup(generated_subgroup(z6, std::vector<int>{2}));
  for (int x : {0, 2, 4}) CHECK(w[x] == doctest::Approx(1.0 / 3.0));
  CHECK(w[1] == 0.0);
  CHECK(haar_on_subgroup(generated_subgroup(z6, std::vector<int>{}))[0] == 1.0);
  const auto s3 = symmetric_group(3);
  const auto u = haar_on_subgroup(generated_subgroup(s3, std::vector<int>{1, 2, 3}));
  for (int x = 0; x < 6; ++x) CHECK(u[x] == doctest::Approx(1.0 / 6.0));
  CHECK(u.is_probability());
}

TEST_CASE("weak-star decay") {
  const auto srw = on_z({{-1, 0.5}, {1, 0.5}});
  const LatticeFunction f{0, VectorXr::Ones(1)};
  const auto d = weak_star_decay(srw, f, 200);
  REQUIRE(d.values.size() == 200);
  CHECK_FALSE(d.degenerate);
  CHECK(std::abs(d.values[99] - 0.0795892) < 1e-7);
  for (int m = 1; m <= 100; ++m) {
    CHECK(std::abs(d.values[static_cast<size_t>(2 * m - 1)] - central_binomial(m)) < 1e-12);
    if (m > 1) CHECK(d.values[static_cast<size_t>(2 * m - 1)] < d.values[static_cast<size_t>(2 * m - 3)]);
  }
  const auto flat = weak_star_decay(on_z({{0, 1.0}}), LatticeFunction{-1, VectorXr::Constant(3, 2.5)}, 10);
  CHECK(flat.degenerate);
  for (double v : flat.values) CHECK(v == 2.5);
}
