#include <doctest.h>

#include "cdlab/experiments.hpp"
#include "cdlab/harmonic.hpp"
#include "cdlab/markov.hpp"

using namespace cdlab;

namespace {

Measure<double> on(const GroupPtr& g, std::vector<std::pair<int, double>> atoms) {
  return Measure<double>::from_atoms(g, atoms).as_probability();
}

}  // namespace

TEST_CASE("harmonic spaces") {
  const auto z2 = cyclic_group(2);
  const auto h2 = harmonic_space(right_markov_matrix(on(z2, {{1, 1.0}})));
  REQUIRE(h2.rank() == 1);
  CHECK(std::abs(std::abs(h2.basis()(0, 0)) - std::abs(h2.basis()(1, 0))) < 1e-15);

  const auto z6 = cyclic_group(6);
  const auto h6 = harmonic_space(right_markov_matrix(on(z6, {{2, 1.0}})));
  CHECK(h6.rank() == 2);
  VectorXr even(6), odd(6);
  even << 1, 0, 1, 0, 1, 0;
  odd << 0, 1, 0, 1, 0, 1;
  CHECK(h6.orthogonal_part(even).norm() < 1e-12);
  CHECK(h6.orthogonal_part(odd).norm() < 1e-12);

  const auto s3 = symmetric_group(3);
  CHECK(harmonic_space(right_markov_matrix(
                           on(s3, {{s3->element("(12)"), 0.5}, {s3->element("(13)"), 0.5}})))
            .rank() == 1);
}

TEST_CASE("trivial solution spaces") {
  const auto z6 = cyclic_group(6);
  const auto h = generated_subgroup(z6, std::vector<int>{2});
  CHECK(trivial_solution_space(h, TrivialMode::functions).rank() == 2);
  CHECK(trivial_solution_space(generated_subgroup(z6, std::vector<int>{}), TrivialMode::functions).rank() == 6);
  CHECK(trivial_solution_space(generated_subgroup(z6, std::vector<int>{}), TrivialMode::operators).rank() == 36);

  const auto z2 = cyclic_group(2);
  const auto ops = trivial_solution_space(generated_subgroup(z2, std::vector<int>{1}), TrivialMode::operators);
  CHECK(ops.rank() == 2);
  MatrixXr swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(ops.orthogonal_part(swap.reshaped()).norm() < 1e-12);
  CHECK(ops.orthogonal_part(MatrixXr::Identity(2, 2).reshaped()).norm() < 1e-12);
}

TEST_CASE("commutants") {
  MatrixXr swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(commutant(std::vector<MatrixXr>{swap}, 2).rank() == 2);
  CHECK(commutant(std::vector<MatrixXr>{MatrixXr::Identity(2, 2)}, 2).rank() == 4);
  CHECK(commutant(std::vector<MatrixXr>{}, 3).rank() == 9);

  const auto s3 = symmetric_group(3);
  std::vector<int> all{0, 1, 2, 3, 4, 5};
  const auto c = commutant(right_regular_family<double>(*s3, all), 6);
  CHECK(c.rank() == 6);
  // The left regular matrices commute with the right regular ones.
  for (int g = 0; g < 6; ++g) CHECK(c.orthogonal_part(left_regular_matrix<double>(*s3, g).reshaped()).norm() < 1e-12);

  // A permutation with two 3-cycles: three eigenvalues of multiplicity two.
  const auto z6 = cyclic_group(6);
  CHECK(commutant(std::vector<MatrixXr>{right_regular_matrix<double>(*z6, 2)}, 6).rank() == 12);
  CHECK(commutant(std::vector<MatrixXr>{right_regular_matrix<double>(*z6, 1)}, 6).rank() == 6);
}

TEST_CASE("Cesaro projection") {
  const auto z4 = cyclic_group(4);
  const auto r4 = cesaro_projection(right_markov_matrix(on(z4, {{1, 1.0}})));
  CHECK((r4.K - MatrixXr::Constant(4, 4, 0.25)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r4.converged);

  const auto s3 = symmetric_group(3);
  const auto re = cesaro_projection(right_markov_matrix(on(s3, {{s3->identity(), 1.0}})));
  CHECK((re.K - MatrixXr::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-15);

  const auto z6 = cyclic_group(6);
  const auto mu = on(z6, {{2, 1.0}});
  const auto haar = haar_on_subgroup(generated_subgroup(z6, std::vector<int>{2}));
  std::vector<std::pair<std::string, MatrixXr>> lambdas;
  for (int g = 0; g < 6; ++g) lambdas.emplace_back(std::to_string(g), left_regular_matrix<double>(*z6, g));
  const auto r6 = cesaro_projection(right_markov_matrix(mu), {}, lambdas);
  CHECK((r6.K - right_markov_matrix(haar)).norm() < 1e-9);
  CHECK(r6.idempotency_residual < 1e-9);
  CHECK(std::abs(r6.norm_inf - 1.0) < 1e-12);
  CHECK(r6.min_entry >= -1e-12);
  CHECK(r6.row_sum_residual < 1e-12);
  CHECK(r6.max_commutation_residual() < 1e-12);
  CHECK(r6.commutation_residuals.size() == 6);

  MatrixXr bad = MatrixXr::Identity(3, 3);
  bad(0, 0) = 0.5;
  CHECK_THROWS_AS(cesaro_projection(bad), ConstructionError);
}

TEST_CASE("diamond product") {
  const auto z6 = cyclic_group(6);
  const auto mu = on(z6, {{2, 1.0}});
  VectorXr h(6);
  h << 1, -1, 1, -1, 1, -1;
  const auto d = diamond_product(h, h, mu);
  CHECK((d.value - VectorXr::Ones(6)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(d.pointwise_residual < 1e-12);
  const auto c = diamond_product(VectorXr::Constant(6, 2.0), VectorXr::Constant(6, -3.0), mu);
  CHECK((c.value - VectorXr::Constant(6, -6.0)).cwiseAbs().maxCoeff() < 1e-12);
  VectorXr not_harmonic = VectorXr::Zero(6);
  not_harmonic[0] = 1.0;
  CHECK_THROWS_AS(diamond_product(not_harmonic, h, mu), ConstructionError);
}

TEST_CASE("Choquet-Deny verdicts on the catalog") {
  for (const auto& e : catalog()) {
    CAPTURE(e.id);
    const auto v = choquet_deny_verdict(e.mu);
    CHECK(v.diamond_is_pointwise);
    CHECK(v.harmonic_is_trivial);
    CHECK(v.consistent());
    CHECK(v.harmonic_rank == v.coset_count);
  }
  const auto s3 = symmetric_group(3);
  const auto v = choquet_deny_verdict(on(s3, {{s3->identity(), 1.0}}));
  CHECK(v.harmonic_rank == 6);
  CHECK(v.coset_count == 6);
  CHECK(v.consistent());
}

TEST_CASE("subharmonicity") {
  const auto z6 = cyclic_group(6);
  const MatrixXr m = right_markov_matrix(on(z6, {{2, 1.0}}));
  VectorXr h(6);
  h << 2, -3, 2, -3, 2, -3;
  CHECK(subharmonic_violation(h.cwiseAbs(), m) <= 1e-12);
  VectorXr bump = VectorXr::Zero(6);
  bump[0] = 1.0;
  CHECK(subharmonic_violation(bump, m) == doctest::Approx(1.0));
}

TEST_CASE("l1 triviality on Z") {
  const auto srw = Measure<double>::from_atoms(std::vector<std::pair<long, double>>{{-1, 0.5}, {1, 0.5}}).as_probability();
  for (long l : {5L, 50L}) {
    const auto r = l1_harmonic_triviality(srw, l);
    CHECK(r.dim == 2 * l + 1);
    CHECK(r.kernel_rank == 0);
    CHECK_FALSE(r.excluded);
  }
  const auto delta = Measure<double>::from_atoms(std::vector<std::pair<long, double>>{{0, 1.0}}).as_probability();
  const auto r = l1_harmonic_triviality(delta, 5);
  CHECK(r.excluded);
  CHECK(r.kernel_rank == 11);
}
