#include <doctest.h>

#include <cmath>

#include "forte/rng.hpp"
#include "forte/theory.hpp"
#include "helpers.hpp"

using namespace forte;

TEST_CASE("closed-form spot values") {
  auto e = expected_prdc(5, 1000);
  CHECK(e.precision == doctest::Approx(0.993262).epsilon(1e-6));
  CHECK(e.recall == doctest::Approx(0.005).epsilon(1e-9));
  CHECK(e.density == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e.coverage == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e.coverage_alternate == doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-9));

  auto v = prdc_variances(1, 1000);
  CHECK(v.var_precision == doctest::Approx(0.232544).epsilon(1e-5));
  CHECK(v.var_precision == doctest::Approx(std::exp(-1.0) - std::exp(-2.0)).epsilon(1e-9));

  auto v5 = prdc_variances(5, 1000);
  double p = 5.0 / 1000.0;
  CHECK(v5.var_recall == doctest::Approx(p * (1.0 - p) / 1000.0).epsilon(1e-9));
  CHECK(v5.var_density == doctest::Approx((1.0 / 5.0) * (1.0 - p)).epsilon(1e-9));
  CHECK(v5.var_coverage == doctest::Approx(0.0));

  auto m = chi2_distance_moments(1.0, 10, 0.0);
  CHECK(m.mean == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(m.variance == doctest::Approx(80.0).epsilon(1e-9));

  CHECK(beta_order_statistic_mean(1, 1) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(beta_order_statistic_mean(3, 9) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("beta order-statistic mean agrees with simulation") {
  // k-th smallest of n uniforms, averaged over trials.
  SeededRng rng(99);
  const std::size_t n = 20, k = 6, trials = 40000;
  double acc = 0.0;
  std::vector<double> u(n);
  for (std::size_t t = 0; t < trials; ++t) {
    for (double& v : u) v = rng.next_double();
    std::nth_element(u.begin(), u.begin() + (k - 1), u.end());
    acc += u[k - 1];
  }
  CHECK(std::abs(acc / double(trials) - beta_order_statistic_mean(k, n)) < 0.005);
}

TEST_CASE("squared-distance moments agree with simulation, shifted and not") {
  const std::size_t D = 6, trials = 200000;
  for (double delta : {0.0, 2.0}) {
    const double sigma = 1.3;
    SeededRng rng(7 + std::uint64_t(delta));
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < D; ++j) {
        // mean difference delta along the first axis only; ||mu|| = delta
        double diff = sigma * rng.next_normal() - sigma * rng.next_normal() +
                      (j == 0 ? delta : 0.0);
        d2 += diff * diff;
      }
      sum += d2;
      sumsq += d2 * d2;
    }
    double mean = sum / trials;
    double var = sumsq / trials - mean * mean;
    auto m = chi2_distance_moments(sigma, D, delta);
    CHECK(std::abs(mean - m.mean) / m.mean < 0.01);
    CHECK(std::abs(var - m.variance) / m.variance < 0.03);
  }
}

TEST_CASE("gaussian sampler moments and determinism") {
  GaussianSpec spec{.n = 4000, .d = 8, .mean = 1.5, .sigma = 0.5, .seed = 3};
  auto a = sample_gaussian(spec);
  auto b = sample_gaussian(spec);
  CHECK(a.data() == b.data());
  spec.seed = 4;
  CHECK(sample_gaussian(spec).data() != a.data());

  double sum = 0.0, sumsq = 0.0;
  for (float v : a.data()) {
    sum += v;
    sumsq += double(v) * v;
  }
  double n = double(a.data().size());
  double mean = sum / n;
  CHECK(std::abs(mean - 1.5) < 0.01);
  CHECK(std::abs((sumsq / n - mean * mean) - 0.25) < 0.01);
}

TEST_CASE("top-2 variance fraction on planar and isotropic data") {
  // Points confined to a 2-D subspace of R^5: the top two components carry
  // everything.
  SeededRng rng(5);
  EmbeddingMatrix planar(400, 5);
  for (std::size_t i = 0; i < 400; ++i) {
    double a = rng.next_normal(), b = rng.next_normal();
    // u = (1,1,0,0,0)/sqrt(2), v = (0,0,1,-1,0)/sqrt(2)
    planar.at(i, 0) = float(a / std::sqrt(2.0));
    planar.at(i, 1) = float(a / std::sqrt(2.0));
    planar.at(i, 2) = float(b / std::sqrt(2.0));
    planar.at(i, 3) = float(-b / std::sqrt(2.0));
    planar.at(i, 4) = 0.0f;
  }
  CHECK(top2_variance_fraction(planar) == doctest::Approx(1.0).epsilon(1e-6));

  auto iso = testutil::random_matrix(3000, 4, 11);
  CHECK(top2_variance_fraction(iso) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("simulation report structure, invariants, determinism") {
  SimulationConfig cfg;
  cfg.k = 3;
  cfg.n_train = 300;
  cfg.n_test = 120;
  cfg.dim = 4;
  cfg.seeds = {0, 1};
  auto r = monte_carlo_verify(cfg);
  REQUIRE(r.per_seed.size() == 2);
  CHECK(r.per_seed_ood.empty());
  // Reference-sourced coverage is a rank identity: 1 for every seed.
  for (const auto& s : r.per_seed) CHECK(s.coverage == doctest::Approx(1.0));
  CHECK_FALSE(r.checks.empty());
  for (const auto& c : r.checks) {
    CHECK_FALSE(c.name.empty());
    CHECK((c.kind == "abs" || c.kind == "rel" || c.kind == "exact" || c.kind == "factor"));
  }

  auto j1 = simulation_report_to_json(r);
  auto j2 = simulation_report_to_json(monte_carlo_verify(cfg));
  CHECK(j1 == j2);

  auto csv = simulation_report_to_csv(r);
  CHECK(csv.rfind("seed,set,precision,recall,density,coverage", 0) == 0);

  // Shifted run populates the OOD block.
  cfg.shift = 3.0;
  cfg.dim = 16;
  auto shifted = monte_carlo_verify(cfg);
  CHECK(shifted.per_seed_ood.size() == 2);
  for (const auto& s : shifted.per_seed_ood) {
    CHECK(s.precision <= 0.05);
    CHECK(s.coverage <= 0.05);
  }
}

TEST_CASE("curse sweep rows and qualitative shape") {
  CurseConfig cfg;
  cfg.d_min = 2;
  cfg.d_max = 42;
  cfg.d_step = 10;
  cfg.n_in = 300;
  cfg.n_out = 60;
  cfg.k = 3;
  cfg.cosine_subsample = 150;
  auto rows = curse_experiment(cfg);
  REQUIRE(rows.size() == 5);  // 2, 12, 22, 32, 42
  CHECK(rows[0].dim == 2);
  CHECK(rows[4].dim == 42);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].mean_norm > rows[i - 1].mean_norm);  // norms concentrate upward
    CHECK(std::abs(rows[i].mean_cosine) < std::abs(rows[0].mean_cosine) + 0.05);
  }
  for (const auto& r : rows) {
    CHECK(r.top2_variance > 0.0);
    CHECK(r.top2_variance <= 1.0);
    CHECK(r.in_coverage >= 0.0);
    CHECK(r.in_coverage <= 1.0);
  }
  // Outliers at shift 3 lose precision/density/coverage as D grows.
  CHECK(rows[4].out_precision < rows[4].in_precision);
  CHECK(rows[4].out_density < rows[4].in_density);
  CHECK(rows[4].out_coverage < rows[4].in_coverage);

  auto csv = curse_to_csv(rows);
  CHECK(csv.rfind("dim,", 0) == 0);
  CHECK(csv.find("mean_cosine") != std::string::npos);
}
