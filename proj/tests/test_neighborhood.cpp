#include <doctest.h>

#include <cmath>

#include "forte/errors.hpp"
#include "forte/neighborhood.hpp"
#include "helpers.hpp"

using namespace forte;

TEST_CASE("squared_distances matches scalar accumulation") {
  auto a = testutil::random_matrix(17, 5, 1);
  auto b = testutil::random_matrix(9, 5, 2);
  auto d = squared_distances(a, b);
  REQUIRE(d.size() == 17 * 9);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      CHECK(d[i * b.rows() + j] == doctest::Approx(testutil::sqdist(a, i, b, j)).epsilon(1e-12));
}

TEST_CASE("knn_radii excludes self and matches sorted oracle") {
  for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
    auto x = testutil::random_matrix(40, 4, seed);
    for (std::size_t k : {1u, 3u, 7u, 39u}) {
      auto prof = knn_radii(x, k);
      auto oracle = testutil::oracle_knn_sq_radii(x, k);
      REQUIRE(prof.squared_radii.size() == 40);
      for (std::size_t i = 0; i < 40; ++i) {
        CHECK(prof.squared_radii[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
        CHECK(prof.radii[i] == doctest::Approx(std::sqrt(oracle[i])).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("knn_radii hand fixture on a line") {
  // Points 0, 1, 3, 7 on a line: k=1 radii are 1, 1, 2, 4; k=2: 3, 2, 3, 6.
  auto x = EmbeddingMatrix::from_rows({{0.0}, {1.0}, {3.0}, {7.0}});
  auto k1 = knn_radii(x, 1);
  CHECK(k1.radii[0] == doctest::Approx(1.0));
  CHECK(k1.radii[1] == doctest::Approx(1.0));
  CHECK(k1.radii[2] == doctest::Approx(2.0));
  CHECK(k1.radii[3] == doctest::Approx(4.0));
  auto k2 = knn_radii(x, 2);
  CHECK(k2.radii[0] == doctest::Approx(3.0));
  CHECK(k2.radii[1] == doctest::Approx(2.0));
  CHECK(k2.radii[2] == doctest::Approx(3.0));
  CHECK(k2.radii[3] == doctest::Approx(6.0));
}

TEST_CASE("duplicate points: ties occupy distinct ranks") {
  // Three coincident points plus one far away. From any coincident point the
  // distances are {0, 0, 5}: k=1 and k=2 both give radius 0, k=3 gives 5.
  auto x = EmbeddingMatrix::from_rows({{0.0}, {0.0}, {0.0}, {5.0}});
  auto k1 = knn_radii(x, 1);
  auto k2 = knn_radii(x, 2);
  auto k3 = knn_radii(x, 3);
  CHECK(k1.radii[0] == doctest::Approx(0.0));
  CHECK(k2.radii[0] == doctest::Approx(0.0));
  CHECK(k3.radii[0] == doctest::Approx(5.0));
  // The far point's nearest neighbor is any of the duplicates at distance 5.
  CHECK(k1.radii[3] == doctest::Approx(5.0));
  CHECK(k3.radii[3] == doctest::Approx(5.0));
}

TEST_CASE("knn_radii rejects k >= n") {
  auto x = testutil::random_matrix(5, 2, 0);
  CHECK_NOTHROW(knn_radii(x, 4));
  CHECK_THROWS_AS(knn_radii(x, 5), DataError);
}

TEST_CASE("cross_knn_radii has no self-exclusion") {
  auto base = testutil::random_matrix(30, 3, 3);
  // Querying the base against itself: nearest neighbor is the point itself.
  auto prof = cross_knn_radii(base, base, 1);
  for (double r : prof.radii) CHECK(r == doctest::Approx(0.0));

  auto q = testutil::random_matrix(12, 3, 4);
  for (std::size_t k : {1u, 4u, 30u}) {
    auto p = cross_knn_radii(q, base, k);
    auto oracle = testutil::oracle_cross_knn_sq_radii(q, base, k);
    for (std::size_t i = 0; i < q.rows(); ++i)
      CHECK(p.squared_radii[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(cross_knn_radii(q, base, 31), DataError);
}

TEST_CASE("containment_counts uses closed balls") {
  // Center at 0 with radius exactly 2 (k=1 neighbor at distance 2): a query
  // on the boundary counts.
  auto centers = EmbeddingMatrix::from_rows({{0.0}, {2.0}});
  auto prof = knn_radii(centers, 1);  // both radii = 2
  auto queries = EmbeddingMatrix::from_rows({{2.0}, {4.0}, {4.0001}, {-2.0}});
  auto counts = containment_counts(centers, prof, queries);
  CHECK(counts[0] == 2);  // boundary of ball 0, center of ball 1
  CHECK(counts[1] == 1);  // boundary of ball 1 only
  CHECK(counts[2] == 0);  // just outside
  CHECK(counts[3] == 1);  // boundary of ball 0
}

TEST_CASE("min_distances is Euclidean and exact on a fixture") {
  auto refs = EmbeddingMatrix::from_rows({{0.0, 0.0}, {3.0, 4.0}});
  auto q = EmbeddingMatrix::from_rows({{3.0, 4.0}, {1.0, 0.0}, {3.0, 0.0}});
  auto d = min_distances(q, refs);
  CHECK(d[0] == doctest::Approx(0.0));
  CHECK(d[1] == doctest::Approx(1.0));
  CHECK(d[2] == doctest::Approx(3.0));  // min(3, 4)
}
