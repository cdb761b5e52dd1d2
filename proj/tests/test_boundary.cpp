#include <doctest.h>

#include <cmath>

#include "cdlab/boundary.hpp"
#include "cdlab/experiments.hpp"

using namespace cdlab;

namespace {

FreeWord w(const char* s) { return FreeWord::parse(2, s); }

}  // namespace

TEST_CASE("sample paths") {
  const auto z4 = cyclic_group(4);
  const auto mu = Measure<double>::from_atoms(z4, {{1, 1.0}}).as_probability();
  const auto p = sample_path(mu, 0, 5, 1);
  CHECK(p.positions == std::vector<int>{0, 1, 2, 3, 0, 1});
  CHECK(p.increments == std::vector<int>{1, 1, 1, 1, 1});

  const auto s4 = catalog_entry("s4").mu;
  CHECK(sample_path(s4, 3, 50, 9).positions == sample_path(s4, 3, 50, 9).positions);
  CHECK(sample_path(s4, 3, 50, 9).positions != sample_path(s4, 3, 50, 10).positions);

  const auto srw = Measure<double>::from_atoms(std::vector<std::pair<long, double>>{{-1, 0.5}, {1, 0.5}}).as_probability();
  const auto pz = sample_path(srw, 10L, 100, 3);
  CHECK(pz.positions.front() == 10);
  for (size_t i = 1; i < pz.positions.size(); ++i) CHECK(std::abs(pz.positions[i] - pz.positions[i - 1]) == 1);

  const auto law = FreeLaw::simple(2);
  const auto pf = sample_path(law, FreeWord(2), 100, 4);
  CHECK(pf.positions.size() == 101);
  for (size_t i = 1; i < pf.positions.size(); ++i) CHECK(free_distance(pf.positions[i], pf.positions[i - 1]) == 1);
  CHECK(pf.positions == sample_path(law, FreeWord(2), 100, 4).positions);
}

TEST_CASE("free laws") {
  CHECK(FreeLaw::simple(3).is_simple());
  CHECK_FALSE(FreeLaw(2, {0.4, 0.1, 0.25, 0.25}).is_simple());
  CHECK_THROWS_AS(FreeLaw(2, {0.5, 0.5}), ConstructionError);
  CHECK_THROWS_AS(FreeLaw(2, {0.5, 0.5, 0.5, -0.5}), ConstructionError);
}

TEST_CASE("mean word length of simple random walk on F2") {
  MonteCarloOptions o;
  o.n = 100;
  o.paths = 10000;
  // Drift (3 - 1) / 4 per step away from the identity.
  CHECK(std::abs(mean_word_length(FreeLaw::simple(2), o) - 50.0) < 1.5);
}

TEST_CASE("harmonic measure of cylinders") {
  CHECK(harmonic_measure_cylinder(Cylinder::parse(2, "a")) == doctest::Approx(0.25));
  CHECK(harmonic_measure_cylinder(Cylinder::parse(2, "ab")) == doctest::Approx(1.0 / 12.0));
  CHECK(harmonic_measure_cylinder(Cylinder::parse(3, "abc")) == doctest::Approx(1.0 / 6.0 / 25.0));
  double total = 0.0;
  for (const char* s : {"a", "A", "b", "B"}) total += harmonic_measure_cylinder(Cylinder::parse(2, s));
  CHECK(total == doctest::Approx(1.0));
  CHECK_THROWS_AS(Cylinder(2, {}), ConstructionError);
  CHECK_THROWS_AS(Cylinder(2, {1, -1}), ConstructionError);
}

TEST_CASE("Poisson extension") {
  const auto a = Cylinder::parse(2, "a");
  CHECK(poisson_extension(a, FreeWord(2)) == doctest::Approx(0.25));
  CHECK(poisson_extension(a, w("a")) == doctest::Approx(0.75));
  CHECK(poisson_extension(a, w("aa")) == doctest::Approx(11.0 / 12.0));
  CHECK(poisson_extension(a, w("b")) == doctest::Approx(1.0 / 12.0));
  const double mean = (poisson_extension(a, w("a")) + poisson_extension(a, w("A")) + poisson_extension(a, w("b")) +
                       poisson_extension(a, w("B"))) /
                      4.0;
  CHECK(mean == doctest::Approx(0.25));

  const auto ball = free_ball(2, 8);
  for (const char* s : {"a", "ab", "Bab"}) {
    const auto c = Cylinder::parse(2, s);
    const auto h = [&](const FreeWord& x) { return poisson_extension(c, x); };
    CHECK(free_harmonic_residual(h, ball) < 1e-12);
    for (const auto& x : ball) {
      const double v = h(x);
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
  }
  for (const auto& x : ball) {
    double s = 0.0;
    for (const char* c : {"a", "A", "b", "B"}) s += poisson_extension(Cylinder::parse(2, c), x);
    REQUIRE(std::abs(s - 1.0) < 1e-12);
  }
}

TEST_CASE("subharmonic checks on the tree") {
  const auto ball = free_ball(2, 6);
  const auto a = Cylinder::parse(2, "a"), b = Cylinder::parse(2, "bA");
  const auto mx = [&](const FreeWord& x) { return std::max(poisson_extension(a, x), poisson_extension(b, x)); };
  CHECK(free_subharmonic_violation(mx, ball) <= 1e-12);
  const auto h = [&](const FreeWord& x) { return poisson_extension(a, x); };
  CHECK(free_subharmonic_violation(h, ball) <= 1e-12);
  CHECK(free_subharmonic_violation([](const FreeWord& x) { return -double(x.length()); }, ball) > 0.0);
}

TEST_CASE("cylinder frequencies match the harmonic measure") {
  std::vector<Cylinder> cylinders;
  for (const auto& x : free_ball(2, 3))
    if (!x.empty()) cylinders.emplace_back(2, x.letters());
  REQUIRE(cylinders.size() == 52);
  MonteCarloOptions o;
  o.paths = 100000;
  o.seed = 7;
  const auto est = cylinder_frequencies(cylinders, FreeLaw::simple(2), o);
  for (size_t i = 0; i < cylinders.size(); ++i) {
    CAPTURE(cylinders[i].word().str());
    const double nu = est[i].exact;
    CHECK(nu == doctest::Approx(harmonic_measure_cylinder(cylinders[i])));
    CHECK(std::abs(est[i].estimate - nu) < 3.0 * std::sqrt(nu * (1.0 - nu) / double(o.paths)));
  }
  const auto law = FreeLaw(2, {0.4, 0.1, 0.25, 0.25});
  CHECK(std::isnan(cylinder_frequencies({cylinders[0]}, law, o)[0].exact));
}

TEST_CASE("Monte Carlo results do not depend on the worker count") {
  MonteCarloOptions o;
  o.paths = 5000;
  o.seed = 11;
  const auto a = Cylinder::parse(2, "a");
  const auto one = martingale_convergence_check(a, o);
  o.workers = 3;
  const auto three = martingale_convergence_check(a, o);
  CHECK(one.agreement == three.agreement);
  CHECK(one.conclusive == three.conclusive);
  const auto d3 = diamond_vs_pointwise_mc(a, o);
  o.workers = 1;
  const auto d1 = diamond_vs_pointwise_mc(a, o);
  CHECK(d1.estimate == d3.estimate);
  CHECK(d1.stderr_ == d3.stderr_);
}

TEST_CASE("martingale convergence") {
  MonteCarloOptions o;
  o.n = 100;
  o.paths = 10000;
  const auto r = martingale_convergence_check(Cylinder::parse(2, "a"), o);
  CHECK(r.conclusive_fraction >= 0.999);
  CHECK(r.agreement_fraction >= 0.99);
  CHECK(r.conclusive + r.inconclusive == r.n_paths);
  o.n = 0;
  o.paths = 2000;
  const auto r0 = martingale_convergence_check(Cylinder::parse(2, "a"), o);
  CHECK(r0.agreement_fraction < 0.01);
}

TEST_CASE("diamond versus pointwise products") {
  MonteCarloOptions o;
  o.n = 60;
  o.paths = 100000;
  const auto d = diamond_vs_pointwise_mc(Cylinder::parse(2, "a"), o);
  CHECK(std::abs(d.estimate - 0.25) < 0.01);
  CHECK(std::abs(d.estimate - 0.0625) > 0.15);
  CHECK(d.diamond_value == doctest::Approx(0.25));
  CHECK(d.pointwise_value == doctest::Approx(0.0625));
  o.n = 0;
  o.paths = 100;
  CHECK(diamond_vs_pointwise_mc(Cylinder::parse(2, "a"), o).estimate == 0.0625);
}

TEST_CASE("one-step martingale regression") {
  MonteCarloOptions o;
  o.n = 20;
  o.paths = 5000;
  const auto r = martingale_step_regression(Cylinder::parse(2, "ab"), o);
  CHECK(r.transitions == 100000);
  CHECK(std::abs(r.mean_increment) < 3.0 * r.stderr_);
  CHECK(std::abs(r.slope) < 3.0 * r.slope_stderr + 1e-12);
}

TEST_CASE("stationary measures") {
  const auto s3 = symmetric_group(3);
  const auto mu = catalog_entry("s3").mu;
  const auto action = coset_action(generated_subgroup(s3, std::vector<int>{s3->element("(23)")}));
  const auto s = stationary_measure(action, mu);
  CHECK(s.fixed_space_dim == 1);
  CHECK(s.residual < 1e-12);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(s.eigen_solution[i] - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(s.power_solution[i] - 1.0 / 3.0) < 1e-12);
  }

  const auto triv = stationary_measure(trivial_action(s3, 4), mu);
  CHECK(triv.fixed_space_dim == 4);
  CHECK(triv.eigen_solution.size() == 0);
  for (int i = 0; i < 4; ++i) CHECK(triv.measure[i] == 0.25);

  const auto z3 = cyclic_group(3);
  const auto shift = stationary_measure(translation_action(z3), Measure<double>::from_atoms(z3, {{1, 1.0}}).as_probability());
  for (int i = 0; i < 3; ++i) CHECK(std::abs(shift.measure[i] - 1.0 / 3.0) < 1e-12);

  // Z/6 acting on cosets of {0, 3} with mu = delta_2: a 3-cycle, uniform stationary law.
  const auto z6 = cyclic_group(6);
  const auto cyc = stationary_measure(coset_action(generated_subgroup(z6, std::vector<int>{3})),
                                      Measure<double>::from_atoms(z6, {{2, 1.0}}).as_probability());
  CHECK(cyc.fixed_space_dim == 1);
  CHECK((cyc.eigen_solution - cyc.power_solution).cwiseAbs().maxCoeff() < 1e-9);
}
