#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include "forte/errors.hpp"
#include "forte/io.hpp"
#include "forte/matrix.hpp"
#include "forte/rng.hpp"
#include "forte/scoring.hpp"
#include "forte/standardizer.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;
using namespace forte;

namespace {
fs::path temp_file(const char* name) {
  return fs::temp_directory_path() / (std::string("forte_test_") + name);
}
}  // namespace

TEST_CASE("matrix basics and literal constructor") {
  auto m = EmbeddingMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}});
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m.at(1, 0) == doctest::Approx(3.0));
  CHECK(m.row(2)[1] == doctest::Approx(6.0));

  std::vector<std::size_t> idx{2, 0};
  auto sel = m.select_rows(idx);
  CHECK(sel.rows() == 2);
  CHECK(sel.at(0, 0) == doctest::Approx(5.0));
  CHECK(sel.at(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("require_finite names the bad cell") {
  auto m = EmbeddingMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  CHECK_NOTHROW(m.require_finite("ok"));
  m.at(1, 1) = std::numeric_limits<float>::quiet_NaN();
  CHECK_THROWS_AS(m.require_finite("bad"), DataError);
  m.at(1, 1) = std::numeric_limits<float>::infinity();
  CHECK_THROWS_AS(m.require_finite("bad"), DataError);
}

TEST_CASE("three_way_split partitions rows exactly") {
  auto m = testutil::random_matrix(100, 3, 7);
  auto split = three_way_split(m, 42);
  CHECK(split.held_out.rows() + split.reference.rows() + split.test_like.rows() == 100);
  // Remainder goes to held_out first: 100 = 34 + 33 + 33.
  CHECK(split.held_out.rows() == 34);
  CHECK(split.reference.rows() == 33);
  CHECK(split.test_like.rows() == 33);

  // Every original row appears exactly once across the three parts.
  auto key = [&](const EmbeddingMatrix& part, std::size_t i) {
    std::vector<float> row(part.row(i).begin(), part.row(i).end());
    return row;
  };
  std::set<std::vector<float>> seen;
  for (const auto* part : {&split.held_out, &split.reference, &split.test_like})
    for (std::size_t i = 0; i < part->rows(); ++i) seen.insert(key(*part, i));
  CHECK(seen.size() == 100);  // rows of a continuous sample are a.s. distinct
}

TEST_CASE("split is deterministic and seed-sensitive") {
  auto m = testutil::random_matrix(60, 4, 1);
  auto a = three_way_split(m, 5);
  auto b = three_way_split(m, 5);
  auto c = three_way_split(m, 6);
  CHECK(a.reference.data() == b.reference.data());
  CHECK(a.reference.data() != c.reference.data());
}

TEST_CASE("shared permutation keeps spaces row-aligned") {
  auto m1 = testutil::random_matrix(50, 2, 3);
  EmbeddingMatrix m2(50, 1);
  for (std::size_t i = 0; i < 50; ++i) m2.at(i, 0) = m1.at(i, 0) + m1.at(i, 1);
  auto perm = split_permutation(50, 9);
  auto s1 = three_way_split_with(m1, perm, 9);
  auto s2 = three_way_split_with(m2, perm, 9);
  for (std::size_t i = 0; i < s1.reference.rows(); ++i)
    CHECK(s2.reference.at(i, 0) ==
          doctest::Approx(s1.reference.at(i, 0) + s1.reference.at(i, 1)));
}

TEST_CASE("binary round trip is bit exact") {
  auto m = testutil::random_matrix(37, 5, 11);
  auto path = temp_file("roundtrip.frte");
  save_binary(m, path.string());
  auto back = load_binary(path.string());
  CHECK(back.rows() == m.rows());
  CHECK(back.cols() == m.cols());
  CHECK(back.data() == m.data());  // exact float comparison on purpose
  fs::remove(path);
}

TEST_CASE("binary loader rejects corrupt input") {
  auto path = temp_file("corrupt.frte");
  {
    auto m = testutil::random_matrix(10, 3, 2);
    save_binary(m, path.string());
  }
  // Truncate mid-payload.
  fs::resize_file(path, 40);
  CHECK_THROWS_AS(load_binary(path.string()), DataError);

  // Wrong magic.
  {
    std::FILE* f = std::fopen(path.string().c_str(), "r+b");
    REQUIRE(f);
    std::fputs("NOPE", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_binary(path.string()), DataError);
  CHECK_THROWS_AS(load_binary("/nonexistent/definitely_missing.frte"), DataError);
  fs::remove(path);
}

TEST_CASE("csv round trip and header handling") {
  auto m = EmbeddingMatrix::from_rows({{1.5, -2.25}, {0.0, 1e-3}});
  auto path = temp_file("roundtrip.csv");
  save_csv(m, path.string());
  auto back = load_csv(path.string());
  CHECK(back.rows() == 2);
  CHECK(back.cols() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(back.at(i, j) == doctest::Approx(m.at(i, j)));

  // Header row of non-numeric tokens is skipped.
  {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    REQUIRE(f);
    std::fputs("x,y\n1,2\n3,4\n", f);
    std::fclose(f);
  }
  auto withhdr = load_csv(path.string());
  CHECK(withhdr.rows() == 2);
  CHECK(withhdr.at(1, 1) == doctest::Approx(4.0));

  // Ragged rows are rejected.
  {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    REQUIRE(f);
    std::fputs("1,2\n3\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_csv(path.string()), DataError);
  fs::remove(path);
}

TEST_CASE("load_embeddings dispatches on extension") {
  auto m = testutil::random_matrix(8, 2, 4);
  auto pcsv = temp_file("dispatch.csv");
  auto pbin = temp_file("dispatch.frte");
  save_csv(m, pcsv.string());
  save_binary(m, pbin.string());
  CHECK(load_embeddings(pcsv.string()).rows() == 8);
  CHECK(load_embeddings(pbin.string()).data() == m.data());
  fs::remove(pcsv);
  fs::remove(pbin);
}

TEST_CASE("rng determinism and distribution sanity") {
  SeededRng a(123), b(123), c(124);
  for (int i = 0; i < 100; ++i) {
    auto x = a.next_u64();
    CHECK(x == b.next_u64());
  }
  CHECK(a.next_u64() != c.next_u64());

  SeededRng u(7);
  double mn = 1.0, mx = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double v = u.next_double();
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  CHECK(mx > 0.99);
  CHECK(mn < 0.01);

  SeededRng bd(8);
  for (int i = 0; i < 1000; ++i) CHECK(bd.next_below(7) < 7);

  // Box-Muller moments over a large sample.
  SeededRng g(9);
  double sum = 0.0, sumsq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double v = g.next_normal();
    sum += v;
    sumsq += v * v;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sumsq / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("derived substreams differ from parent and each other") {
  SeededRng root(55);
  auto s0 = root.derive(0);
  auto s1 = root.derive(1);
  auto s0b = root.derive(0);
  CHECK(s0.seed() == s0b.seed());
  CHECK(s0.seed() != s1.seed());
  CHECK(s0.seed() != root.seed());
  CHECK(mix_seed(1) != mix_seed(2));
}

TEST_CASE("standardizer centers and scales, constant columns survive") {
  FeatureMatrix x;
  x.n = 4;
  x.c = 2;
  x.values = {1, 5, 2, 5, 3, 5, 4, 5};  // col0 varies, col1 constant
  auto s = standardize_fit(x);
  auto y = standardize_apply(s, x);
  double mean0 = (y.at(0, 0) + y.at(1, 0) + y.at(2, 0) + y.at(3, 0)) / 4.0;
  CHECK(mean0 == doctest::Approx(0.0));
  double var0 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) var0 += y.at(i, 0) * y.at(i, 0);
  CHECK(var0 / 4.0 == doctest::Approx(1.0));  // population (1/n) convention
  for (std::size_t i = 0; i < 4; ++i) CHECK(y.at(i, 1) == doctest::Approx(0.0));

  // New data through a constant column stays bounded (scale 1, centered).
  FeatureMatrix q;
  q.n = 1;
  q.c = 2;
  q.values = {10.0, 7.0};
  auto qy = standardize_apply(s, q);
  CHECK(qy.at(0, 1) == doctest::Approx(2.0));
}
