#include "forte/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "forte/errors.hpp"
#include "forte/neighborhood.hpp"
#include "forte/rng.hpp"
#include "forte/standardizer.hpp"

namespace forte {

namespace {

double normal_two_sided_p(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size() - 1);
}

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2)
double kolmogorov_p(double lambda) {
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    double term = 2.0 * std::exp(-2.0 * double(j) * double(j) * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
  }
  return std::clamp(sum, 0.0, 1.0);
}

/// Midranks of sample a within the pooled (a, b) sample, returned as rank sum.
double pooled_rank_sum(const std::vector<double>& a, const std::vector<double>& b,
                       double& tie_correction, std::size_t& pooled_n) {
  struct Entry {
    double v;
    bool from_a;
  };
  std::vector<Entry> all;
  all.reserve(a.size() + b.size());
  for (double v : a) all.push_back({v, true});
  for (double v : b) all.push_back({v, false});
  std::sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) { return x.v < y.v; });
  pooled_n = all.size();
  tie_correction = 0.0;
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].v == all[i].v) ++j;
    double t = static_cast<double>(j - i);
    tie_correction += t * t * t - t;
    double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t x = i; x < j; ++x) {
      if (all[x].from_a) rank_sum += midrank;
    }
    i = j;
  }
  return rank_sum;
}

}  // namespace

std::vector<double> flatten(const EmbeddingMatrix& m) {
  std::vector<double> out;
  out.reserve(m.rows() * m.cols());
  for (float v : m.data()) out.push_back(static_cast<double>(v));
  return out;
}

TestResult z_score(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) throw DataError("z_score: samples need at least 2 values");
  double ma = sample_mean(a), mb = sample_mean(b);
  double va = sample_var(a, ma), vb = sample_var(b, mb);
  double se2 = va / static_cast<double>(a.size()) + vb / static_cast<double>(b.size());
  TestResult r;
  r.name = "z";
  if (se2 <= 0.0) {
    r.statistic = 0.0;  // degenerate: equal means, zero pooled variance
    r.p_value = 1.0;
    r.notes = "zero pooled variance";
    if (ma != mb) throw NumericError("z_score: zero variance with unequal means");
    return r;
  }
  r.statistic = (ma - mb) / std::sqrt(se2);
  r.p_value = normal_two_sided_p(r.statistic);
  return r;
}

TestResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw DataError("ks_two_sample: empty sample");
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < sa.size() && ib < sb.size()) {
    double x = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= x) ++ia;
    while (ib < sb.size() && sb[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  TestResult r;
  r.name = "ks";
  r.statistic = d;
  double ne = na * nb / (na + nb);
  r.p_value = d == 0.0 ? 1.0 : kolmogorov_p(std::sqrt(ne) * d);
  return r;
}

TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw DataError("mann_whitney_u: empty sample");
  double tie_correction = 0.0;
  std::size_t pooled_n = 0;
  double rank_sum = pooled_rank_sum(a, b, tie_correction, pooled_n);
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double u = rank_sum - na * (na + 1.0) / 2.0;  // #pairs(a > b) + ties/2
  double n = static_cast<double>(pooled_n);
  double mu = na * nb / 2.0;
  double var = na * nb / 12.0 * ((n + 1.0) - tie_correction / (n * (n - 1.0)));
  TestResult r;
  r.name = "mwu";
  r.statistic = u;
  if (var <= 0.0) {
    r.p_value = 1.0;
    r.notes = "all values tied";
  } else {
    double z = (u - mu) / std::sqrt(var);
    r.p_value = normal_two_sided_p(z);
  }
  return r;
}

double mahalanobis_mean_distance(const EmbeddingMatrix& refs, const EmbeddingMatrix& query) {
  if (refs.cols() != query.cols()) throw DataError("mahalanobis: dimension mismatch");
  const std::size_t n = refs.rows(), d = refs.cols();
  if (n < 2) throw DataError("mahalanobis: need at least 2 reference rows");
  std::vector<double> mu(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mu[j] += refs.at(i, j);
  for (double& v : mu) v /= static_cast<double>(n);

  std::vector<double> cov(d * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      double da = refs.at(i, a) - mu[a];
      for (std::size_t b = a; b < d; ++b) {
        cov[a * d + b] += da * (refs.at(i, b) - mu[b]);
      }
    }
  }
  double trace = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      cov[a * d + b] /= static_cast<double>(n - 1);
      cov[b * d + a] = cov[a * d + b];
    }
    trace += cov[a * d + a];
  }
  double lambda = 1e-6 * trace / static_cast<double>(d);
  if (lambda <= 0.0) lambda = 1e-12;
  for (std::size_t a = 0; a < d; ++a) cov[a * d + a] += lambda;

  // Cholesky factorization, cov = L L^T
  std::vector<double> L(d * d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double s = cov[a * d + b];
      for (std::size_t t = 0; t < b; ++t) s -= L[a * d + t] * L[b * d + t];
      if (a == b) {
        if (s <= 0.0) throw NumericError("mahalanobis: covariance not positive definite");
        L[a * d + a] = std::sqrt(s);
      } else {
        L[a * d + b] = s / L[b * d + b];
      }
    }
  }

  double total = 0.0;
  std::vector<double> y(d);
  for (std::size_t i = 0; i < query.rows(); ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      double s = static_cast<double>(query.at(i, a)) - mu[a];
      for (std::size_t t = 0; t < a; ++t) s -= L[a * d + t] * y[t];
      y[a] = s / L[a * d + a];
    }
    double q = 0.0;
    for (std::size_t a = 0; a < d; ++a) q += y[a] * y[a];
    total += std::sqrt(q);
  }
  return total / static_cast<double>(query.rows());
}

HistogramPair make_histogram_pair(const std::vector<double>& a, const std::vector<double>& b,
                                  std::size_t bins) {
  if (a.empty() || b.empty()) throw DataError("make_histogram_pair: empty sample");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : a) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : b) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) hi = lo + 1.0;  // all mass in one bin
  HistogramPair h;
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  h.p.assign(bins, 0.0);
  h.q.assign(bins, 0.0);
  auto accumulate = [&](const std::vector<double>& sample, std::vector<double>& mass) {
    for (double v : sample) {
      auto idx = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
      idx = std::min(idx, bins - 1);
      mass[idx] += 1.0;
    }
    for (double& m : mass) m /= static_cast<double>(sample.size());
  };
  accumulate(a, h.p);
  accumulate(b, h.q);
  return h;
}

Divergences histogram_divergences(const HistogramPair& h) {
  if (h.p.size() != h.q.size() || h.p.empty()) throw DataError("invalid histogram pair");
  double sp = 0.0, sq = 0.0;
  for (double v : h.p) {
    if (v < 0.0) throw DataError("negative histogram mass");
    sp += v;
  }
  for (double v : h.q) {
    if (v < 0.0) throw DataError("negative histogram mass");
    sq += v;
  }
  if (std::abs(sp - 1.0) > 1e-12 || std::abs(sq - 1.0) > 1e-12) {
    throw DataError("histogram masses must sum to 1");
  }

  Divergences out;
  double kl = 0.0;
  bool kl_defined = true;
  double overlap = 0.0;
  double js = 0.0;
  for (std::size_t i = 0; i < h.p.size(); ++i) {
    double p = h.p[i], q = h.q[i];
    if (p > 0.0) {
      if (q <= 0.0) {
        kl_defined = false;
      } else {
        kl += p * std::log(p / q);
      }
    }
    overlap += std::sqrt(p * q);
    double m = 0.5 * (p + q);
    if (p > 0.0) js += 0.5 * p * std::log(p / m);
    if (q > 0.0) js += 0.5 * q * std::log(q / m);
  }
  if (kl_defined) out.kl = kl;
  out.js = js;
  if (overlap > 0.0) out.bhattacharyya = -std::log(overlap);
  return out;
}

Divergences embedding_divergences(const EmbeddingMatrix& a, const EmbeddingMatrix& b,
                                  std::size_t bins) {
  if (a.cols() != b.cols()) throw DataError("embedding_divergences: dimension mismatch");
  Divergences acc;
  acc.kl = 0.0;
  acc.bhattacharyya = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::vector<double> ca(a.rows()), cb(b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) ca[i] = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) cb[i] = b.at(i, j);
    auto d = histogram_divergences(make_histogram_pair(ca, cb, bins));
    acc.js += d.js;
    if (acc.kl && d.kl) {
      *acc.kl += *d.kl;
    } else {
      acc.kl.reset();
    }
    if (acc.bhattacharyya && d.bhattacharyya) {
      *acc.bhattacharyya += *d.bhattacharyya;
    } else {
      acc.bhattacharyya.reset();
    }
  }
  double dd = static_cast<double>(a.cols());
  acc.js /= dd;
  if (acc.kl) *acc.kl /= dd;
  if (acc.bhattacharyya) *acc.bhattacharyya /= dd;
  return acc;
}

double wasserstein_1d_mean(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  if (a.cols() != b.cols()) throw DataError("wasserstein: dimension mismatch");
  if (a.rows() == 0 || b.rows() == 0) throw DataError("wasserstein: empty input");
  double total = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::vector<double> ca(a.rows()), cb(b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) ca[i] = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) cb[i] = b.at(i, j);
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    // integrate |F_a^-1 - F_b^-1| over the merged quantile grid
    double w = 0.0;
    std::size_t na = ca.size(), nb = cb.size();
    std::size_t ia = 0, ib = 0;
    double prev_q = 0.0;
    while (ia < na && ib < nb) {
      double qa = static_cast<double>(ia + 1) / static_cast<double>(na);
      double qb = static_cast<double>(ib + 1) / static_cast<double>(nb);
      double q = std::min(qa, qb);
      w += (q - prev_q) * std::abs(ca[ia] - cb[ib]);
      prev_q = q;
      if (qa <= q) ++ia;
      if (qb <= q) ++ib;
    }
    total += w;
  }
  return total / static_cast<double>(a.cols());
}

std::vector<double> lof_scores(const EmbeddingMatrix& refs, const EmbeddingMatrix& query,
                               std::size_t k) {
  if (k == 0 || k >= refs.rows()) throw DataError("lof_scores: need k in [1, refs.n-1]");
  const std::size_t n = refs.rows();
  auto d2_rr = squared_distances(refs, refs);

  // k-distance of each reference point (self excluded) and its neighborhood
  // (all points within the k-distance, ties included)
  std::vector<double> kdist(n);
  std::vector<std::vector<std::size_t>> neigh(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> d;
    d.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) d.push_back(d2_rr[i * n + j]);
    }
    std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
    double kd2 = d[k - 1];
    kdist[i] = std::sqrt(kd2);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && d2_rr[i * n + j] <= kd2) neigh[i].push_back(j);
    }
  }

  auto lrd_of = [&](const std::vector<std::size_t>& nbrs, auto dist_to) -> double {
    double reach_sum = 0.0;
    for (std::size_t o : nbrs) reach_sum += std::max(kdist[o], dist_to(o));
    if (reach_sum <= 0.0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(nbrs.size()) / reach_sum;
  };

  std::vector<double> lrd_ref(n);
  for (std::size_t i = 0; i < n; ++i) {
    lrd_ref[i] = lrd_of(neigh[i], [&](std::size_t o) { return std::sqrt(d2_rr[i * n + o]); });
  }

  auto d2_qr = squared_distances(query, refs);
  std::vector<double> out(query.rows());
  for (std::size_t qi = 0; qi < query.rows(); ++qi) {
    const double* dq = d2_qr.data() + qi * n;
    std::vector<double> d(dq, dq + n);
    std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
    double kd2 = d[k - 1];
    std::vector<std::size_t> nbrs;
    for (std::size_t j = 0; j < n; ++j) {
      if (dq[j] <= kd2) nbrs.push_back(j);
    }
    double lrd_q = lrd_of(nbrs, [&](std::size_t o) { return std::sqrt(dq[o]); });
    double lrd_nbr_mean = 0.0;
    for (std::size_t o : nbrs) lrd_nbr_mean += lrd_ref[o];
    lrd_nbr_mean /= static_cast<double>(nbrs.size());
    out[qi] = std::isinf(lrd_q) ? 1.0 : lrd_nbr_mean / lrd_q;
  }
  return out;
}

namespace {

struct IsoNode {
  int feature = -1;        // -1 = leaf
  float split = 0.0f;
  std::size_t size = 0;    // leaf sample count
  int left = -1, right = -1;
};

double harmonic(double m) { return std::log(m) + 0.5772156649015329; }

double avg_path_length(double n) {
  if (n <= 1.0) return 0.0;
  if (n == 2.0) return 1.0;
  return 2.0 * harmonic(n - 1.0) - 2.0 * (n - 1.0) / n;
}

struct IsoTreeBuilder {
  const EmbeddingMatrix& data;
  std::vector<IsoNode> nodes;
  SeededRng& rng;
  std::size_t max_depth;

  int build(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi, std::size_t depth) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back({});
    std::size_t count = hi - lo;
    if (count <= 1 || depth >= max_depth) {
      nodes[id].size = count;
      return id;
    }
    // pick a feature with spread; give up after d attempts
    std::size_t d = data.cols();
    int feature = -1;
    float lo_v = 0, hi_v = 0;
    for (std::size_t attempt = 0; attempt < d; ++attempt) {
      auto f = static_cast<std::size_t>(rng.next_below(d));
      float mn = data.at(idx[lo], f), mx = mn;
      for (std::size_t t = lo + 1; t < hi; ++t) {
        mn = std::min(mn, data.at(idx[t], f));
        mx = std::max(mx, data.at(idx[t], f));
      }
      if (mx > mn) {
        feature = static_cast<int>(f);
        lo_v = mn;
        hi_v = mx;
        break;
      }
    }
    if (feature < 0) {  // all candidate features constant
      nodes[id].size = count;
      return id;
    }
    float split = lo_v + static_cast<float>(rng.next_double()) * (hi_v - lo_v);
    auto mid_it = std::partition(idx.begin() + lo, idx.begin() + hi,
                                 [&](std::size_t t) { return data.at(t, feature) < split; });
    auto mid = static_cast<std::size_t>(mid_it - idx.begin());
    if (mid == lo || mid == hi) {  // degenerate split, stop here
      nodes[id].size = count;
      return id;
    }
    nodes[id].feature = feature;
    nodes[id].split = split;
    int l = build(idx, lo, mid, depth + 1);
    int r = build(idx, mid, hi, depth + 1);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  }
};

double iso_path_length(const std::vector<IsoNode>& nodes, std::span<const float> x) {
  int cur = 0;
  double depth = 0.0;
  while (nodes[cur].feature >= 0) {
    cur = x[nodes[cur].feature] < nodes[cur].split ? nodes[cur].left : nodes[cur].right;
    depth += 1.0;
  }
  return depth + avg_path_length(static_cast<double>(nodes[cur].size));
}

}  // namespace

std::vector<double> isolation_forest_scores(const EmbeddingMatrix& refs,
                                            const EmbeddingMatrix& query,
                                            std::size_t n_trees, std::size_t subsample,
                                            std::uint64_t seed) {
  if (refs.rows() < 2) throw DataError("isolation_forest: need at least 2 reference rows");
  if (refs.cols() != query.cols()) throw DataError("isolation_forest: dimension mismatch");
  std::size_t psi = std::min(subsample, refs.rows());
  auto max_depth = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(psi))));
  SeededRng root(seed);

  std::vector<double> path_sum(query.rows(), 0.0);
  for (std::size_t t = 0; t < n_trees; ++t) {
    SeededRng rng = root.derive(t);  // per-tree substream
    // sample psi distinct rows
    std::vector<std::size_t> idx(refs.rows());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < psi; ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.next_below(refs.rows() - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(psi);
    IsoTreeBuilder builder{refs, {}, rng, max_depth};
    builder.build(idx, 0, psi, 0);
    for (std::size_t q = 0; q < query.rows(); ++q) {
      path_sum[q] += iso_path_length(builder.nodes, query.row(q));
    }
  }

  double c = avg_path_length(static_cast<double>(psi));
  if (c <= 0.0) c = 1.0;
  std::vector<double> out(query.rows());
  for (std::size_t q = 0; q < query.rows(); ++q) {
    out[q] = std::pow(2.0, -path_sum[q] / static_cast<double>(n_trees) / c);
  }
  return out;
}

EvaluationReport raw_feature_baseline(const EmbeddingMatrix& refs,
                                      const EmbeddingMatrix& test_id,
                                      const EmbeddingMatrix& test_ood,
                                      const RawBaselineConfig& cfg, std::uint64_t seed) {
  auto to_features = [](const EmbeddingMatrix& m) {
    FeatureMatrix f;
    f.n = m.rows();
    f.c = m.cols();
    f.values.reserve(f.n * f.c);
    for (float v : m.data()) f.values.push_back(static_cast<double>(v));
    return f;
  };
  FeatureMatrix train = to_features(refs);
  Standardizer s = standardize_fit(train);
  FeatureMatrix train_z = standardize_apply(s, train);

  DensityModel model;
  switch (cfg.estimator) {
    case EstimatorKind::Gmm: model = gmm_fit(train_z, cfg.gmm, seed); break;
    case EstimatorKind::Kde: model = kde_fit(train_z, cfg.kde); break;
    case EstimatorKind::Ocsvm: model = ocsvm_fit(train_z, cfg.ocsvm); break;
  }
  auto id_scores = anomaly_score(model, standardize_apply(s, to_features(test_id)));
  auto ood_scores = anomaly_score(model, standardize_apply(s, to_features(test_ood)));

  SeedResult run;
  run.seed = seed;
  run.auroc = auroc(id_scores.values, ood_scores.values);
  run.fpr95 = fpr_at_tpr(id_scores.values, ood_scores.values);
  EvaluationReport report = aggregate_seeds({run});
  report.estimator = to_string(cfg.estimator) + "-raw";
  report.n_id = test_id.rows();
  report.n_ood = test_ood.rows();
  return report;
}

}  // namespace forte
