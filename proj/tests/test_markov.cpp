#include <doctest.h>

#include "cdlab/markov.hpp"
#include "cdlab/rng.hpp"

using namespace cdlab;

namespace {

Measure<double> on(const GroupPtr& g, std::vector<std::pair<int, double>> atoms) {
  return Measure<double>::from_atoms(g, atoms).as_probability();
}

Measure<double> random_probability(const GroupPtr& g, Engine& eng) {
  VectorXr w = random_real_vector(g->order(), eng, 0.0, 1.0);
  return Measure<double>(g, w / w.sum()).as_probability();
}

}  // namespace

TEST_CASE("right Markov matrices") {
  const auto z2 = cyclic_group(2);
  MatrixXr swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(right_markov_matrix(on(z2, {{1, 1.0}})) == swap);
  const auto s3 = symmetric_group(3);
  CHECK(right_markov_matrix(on(s3, {{s3->identity(), 1.0}})) == MatrixXr::Identity(6, 6));

  const auto z4 = cyclic_group(4);
  const MatrixXr m = right_markov_matrix(on(z4, {{1, 0.5}, {3, 0.5}}));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) CHECK(m(x, y) == ((y - x + 4) % 4 == 1 || (y - x + 4) % 4 == 3 ? 0.5 : 0.0));
  CHECK(is_stochastic(m));
  MatrixXr bad = m;
  bad(0, 0) = -0.1;
  bad(0, 1) = 0.6;
  CHECK_FALSE(is_stochastic(bad));
}

TEST_CASE("right Markov matrix is the average of the right regular representation") {
  const auto s3 = symmetric_group(3);
  const int a = s3->element("(12)"), b = s3->element("(123)");
  VectorXr h = VectorXr::LinSpaced(6, 1.0, 6.0);
  // (rho(g) h)(x) = h(x g)
  const VectorXr rh = right_regular_matrix<double>(*s3, b) * h;
  for (int x = 0; x < 6; ++x) CHECK(rh[x] == h[s3->mul(x, b)]);
  const VectorXr lh = left_regular_matrix<double>(*s3, b) * h;
  for (int x = 0; x < 6; ++x) CHECK(lh[x] == h[s3->mul(s3->inv(b), x)]);
  const auto mu = on(s3, {{a, 0.25}, {b, 0.75}});
  CHECK((right_markov_matrix(mu) - 0.25 * right_regular_matrix<double>(*s3, a) -
         0.75 * right_regular_matrix<double>(*s3, b)).norm() < 1e-15);
}

TEST_CASE("pi is a homomorphism for convolution") {
  const auto s4 = symmetric_group(4);
  auto eng = make_stream(kDefaultSeed, 3);
  for (int t = 0; t < 20; ++t) {
    const auto mu = random_probability(s4, eng), nu = random_probability(s4, eng);
    CHECK((right_markov_matrix(convolve(mu, nu)) - right_markov_matrix(mu) * right_markov_matrix(nu))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  const auto s3 = symmetric_group(3);
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h) {
      CHECK(right_regular_matrix<double>(*s3, s3->mul(g, h)) ==
            right_regular_matrix<double>(*s3, g) * right_regular_matrix<double>(*s3, h));
      CHECK(left_regular_matrix<double>(*s3, s3->mul(g, h)) ==
            left_regular_matrix<double>(*s3, g) * left_regular_matrix<double>(*s3, h));
      CHECK(left_regular_matrix<double>(*s3, g) * right_regular_matrix<double>(*s3, h) ==
            right_regular_matrix<double>(*s3, h) * left_regular_matrix<double>(*s3, g));
    }
}

TEST_CASE("predual action") {
  const auto z2 = cyclic_group(2);
  VectorXr x(2);
  x << 1, 0;
  const VectorXr y = predual_action(x, on(z2, {{1, 1.0}}));
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 1.0);
  CHECK(predual_action(x, on(z2, {{0, 1.0}})) == x);

  const auto s4 = symmetric_group(4);
  auto eng = make_stream(kDefaultSeed, 4);
  for (int t = 0; t < 100; ++t) {
    const auto mu = random_probability(s4, eng);
    const VectorXr xs = random_real_vector(24, eng);
    const VectorXr h = random_real_vector(24, eng);
    CHECK(std::abs(predual_action(xs, mu).dot(h) - xs.dot(right_markov_matrix(mu) * h)) < 1e-12);
    // x * mu as a convolution of measures
    const auto conv = convolve(Measure<double>(s4, xs), mu);
    CHECK((conv.weights() - predual_action(xs, mu)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("conjugation operator") {
  const auto z2 = cyclic_group(2);
  MatrixXr a(2, 2), expected(2, 2);
  a << 1, 2, 3, 4;
  expected << 4, 3, 2, 1;
  const MatrixXr c = conjugation_operator(on(z2, {{1, 1.0}}));
  const VectorXr v = c * a.reshaped();
  CHECK(v.reshaped(2, 2) == expected);
  CHECK(conjugate(a, on(z2, {{1, 1.0}})) == expected);
  CHECK(conjugation_operator(on(z2, {{0, 1.0}})) == MatrixXr::Identity(4, 4));
  CHECK_THROWS_AS(conjugation_operator(on(cyclic_group(25), {{1, 1.0}})), CapacityError);

  const auto s3 = symmetric_group(3);
  auto eng = make_stream(kDefaultSeed, 5);
  for (int t = 0; t < 20; ++t) {
    const auto mu = random_probability(s3, eng), nu = random_probability(s3, eng);
    const MatrixXr m = random_real_vector(36, eng).reshaped(6, 6);
    const MatrixXr cm = (conjugation_operator(mu) * m.reshaped()).reshaped(6, 6);
    CHECK(std::abs(cm.trace() - m.trace()) < 1e-12);
    CHECK((cm - conjugate(m, mu)).cwiseAbs().maxCoeff() < 1e-12);
    // rho(g) A rho(g)^-1 averaged against mu
    MatrixXr direct = MatrixXr::Zero(6, 6);
    for (int g = 0; g < 6; ++g) {
      const MatrixXr r = right_regular_matrix<double>(*s3, g);
      direct += mu[g] * r * m * r.transpose();
    }
    CHECK((cm - direct).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((conjugation_operator(convolve(mu, nu)) - conjugation_operator(mu) * conjugation_operator(nu))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    // <pi_*(mu) S, A> = <S, pi(mu) A> for the trace pairing
    const MatrixXr s = random_real_vector(36, eng).reshaped(6, 6);
    const MatrixXr ps = (conjugation_predual_operator(mu) * s.reshaped()).reshaped(6, 6);
    CHECK(std::abs(trace_pairing(ps, m) - trace_pairing(s, cm)) < 1e-12);
  }
}

TEST_CASE("G-space Markov matrices") {
  const auto s3 = symmetric_group(3);
  const auto action = coset_action(generated_subgroup(s3, std::vector<int>{s3->element("(23)")}));
  REQUIRE(action.points() == 3);
  const auto mu = on(s3, {{s3->element("(12)"), 0.5}, {s3->element("(13)"), 0.5}});
  const MatrixXr p = gspace_markov_matrix(action, mu);
  // Point 0 is the coset of the identity; the transpositions move it to the other two.
  CHECK(p(0, 0) == 0.0);
  CHECK(p(0, 1) == 0.5);
  CHECK(p(0, 2) == 0.5);
  CHECK(is_stochastic(p));

  CHECK(gspace_markov_matrix(trivial_action(s3, 4), mu) == MatrixXr::Identity(4, 4));

  const auto z3 = cyclic_group(3);
  const MatrixXr shift = gspace_markov_matrix(translation_action(z3), on(z3, {{1, 1.0}}));
  for (int x = 0; x < 3; ++x) CHECK(shift(x, (x + 1) % 3) == 1.0);

  CHECK_THROWS_AS(GSpaceAction(z3, {{0, 1}, {1, 0}, {0, 1}}), ConstructionError);
  CHECK_THROWS_AS(GSpaceAction(z3, {{0, 1}, {1, 0}}), ConstructionError);
}
