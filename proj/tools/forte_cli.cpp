// forte: out-of-distribution detection on embedding features.
//
// Subcommands: detect (full pipeline), simulate (closed-form verification),
// curse (dimensionality sweep), baseline (classical battery), convert
// (CSV <-> binary). Exit codes: 0 success, 1 usage error, 2 data error,
// 3 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "forte/baselines.hpp"
#include "forte/errors.hpp"
#include "forte/io.hpp"
#include "forte/parallel.hpp"
#include "forte/pipeline.hpp"
#include "forte/theory.hpp"

namespace {

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw forte::DataError("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw forte::DataError("write failed: " + path);
}

forte::RadiusSource radius_source_from(const std::string& s) {
  if (s == "test") return forte::RadiusSource::WithinTestSet;
  if (s == "reference") return forte::RadiusSource::FromReferenceSet;
  throw forte::DataError("--radius-source must be 'test' or 'reference'");
}

forte::DensityNormalization normalization_from(const std::string& s) {
  if (s == "k") return forte::DensityNormalization::OneOverK;
  if (s == "km") return forte::DensityNormalization::OneOverKM;
  throw forte::DataError("--normalization must be 'k' or 'km'");
}

forte::BandwidthRule bandwidth_rule_from(const std::string& s) {
  if (s == "scott") return forte::BandwidthRule::Scott;
  if (s == "silverman") return forte::BandwidthRule::Silverman;
  if (s == "fixed") return forte::BandwidthRule::Fixed;
  throw forte::DataError("--bandwidth-rule must be 'scott', 'silverman' or 'fixed'");
}

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> s(10);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

struct DetectFlags {
  std::vector<std::string> id_paths, ood_paths, labels;
  std::vector<std::size_t> k_values{5};
  std::vector<std::string> estimators{"gmm"};
  std::string out, scores_out;
  std::string radius_source = "test";
  std::string normalization = "k";
  std::vector<std::uint64_t> seeds = default_seeds();
  bool strict = false;
  std::size_t components = 4;
  double gmm_tol = 1e-6;
  double nu = 0.05;
  double gamma = 0.0;  // 0 = scale heuristic
  std::string bandwidth_rule = "scott";
  double bandwidth = 0.0;
};

int cmd_detect(const DetectFlags& f) {
  forte::PipelineConfig cfg;
  cfg.prdc.radius_source = radius_source_from(f.radius_source);
  cfg.prdc.density_normalization = normalization_from(f.normalization);
  cfg.seeds = f.seeds;
  cfg.space_labels = f.labels;
  cfg.strict = f.strict;
  cfg.estimator.gmm.n_components = f.components;
  cfg.estimator.gmm.tol = f.gmm_tol;
  cfg.estimator.ocsvm.nu = f.nu;
  if (f.gamma > 0.0) {
    cfg.estimator.ocsvm.gamma_scale = false;
    cfg.estimator.ocsvm.fixed_gamma = f.gamma;
  }
  cfg.estimator.kde.rule = bandwidth_rule_from(f.bandwidth_rule);
  cfg.estimator.kde.fixed_bandwidth = f.bandwidth;

  std::vector<forte::EstimatorKind> kinds;
  for (const auto& name : f.estimators) kinds.push_back(forte::estimator_from_string(name));

  for (const auto& p : f.id_paths) cfg.id_spaces.push_back(forte::load_embeddings(p));
  for (const auto& p : f.ood_paths) cfg.ood_spaces.push_back(forte::load_embeddings(p));

  if (f.k_values.size() == 1 && kinds.size() == 1) {
    cfg.prdc.k = f.k_values.front();
    cfg.estimator.kind = kinds.front();
    std::vector<forte::ScoreDump> dumps;
    forte::EvaluationReport report =
        forte::run_forte(cfg, f.scores_out.empty() ? nullptr : &dumps);
    write_text(f.out, forte::report_to_json(report));
    if (!f.scores_out.empty()) {
      std::ostringstream os;
      os.precision(17);
      os << "seed,set,score\n";
      for (const auto& d : dumps) {
        for (double v : d.id_scores) os << d.seed << ",id," << v << '\n';
        for (double v : d.ood_scores) os << d.seed << ",ood," << v << '\n';
      }
      write_text(f.scores_out, os.str());
    }
    std::cout << forte::summary_line(report) << '\n';
  } else {
    auto reports = forte::run_forte_sweep(cfg, f.k_values, kinds);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      arr.push_back(nlohmann::ordered_json::parse(forte::report_to_json(r)));
      std::cout << r.estimator << " k=" << r.k << ": " << forte::summary_line(r) << '\n';
    }
    write_text(f.out, arr.dump(2) + "\n");
  }
  return 0;
}

int cmd_simulate(const forte::SimulationConfig& cfg, const std::string& out) {
  forte::SimulationReport report = forte::monte_carlo_verify(cfg);
  write_text(out + ".json", forte::simulation_report_to_json(report));
  write_text(out + ".csv", forte::simulation_report_to_csv(report));
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "pass" : (c.checked ? "FAIL" : "info")) << ' ' << c.name
              << " empirical=" << c.empirical << " expected=" << c.expected << '\n';
  }
  if (!report.all_pass) {
    std::cerr << "error: tolerance checks failed (see " << out << ".json)\n";
    return 3;
  }
  return 0;
}

int cmd_curse(const forte::CurseConfig& cfg, const std::string& out) {
  write_text(out, forte::curse_to_csv(forte::curse_experiment(cfg)));
  return 0;
}

struct BaselineFlags {
  std::string id_path, ood_path, out;
  std::size_t k = 5;
  std::size_t trees = 100;
  std::size_t subsample = 256;
  std::size_t bins = 64;
  std::uint64_t seed = 0;
};

int cmd_baseline(const BaselineFlags& f) {
  forte::EmbeddingMatrix id = forte::load_embeddings(f.id_path);
  forte::EmbeddingMatrix ood = forte::load_embeddings(f.ood_path);
  id.require_finite(f.id_path);
  ood.require_finite(f.ood_path);
  if (id.cols() != ood.cols()) throw forte::DataError("baseline: dimension mismatch");

  auto flat_id = forte::flatten(id);
  auto flat_ood = forte::flatten(ood);
  std::ostringstream os;
  os.precision(17);
  os << "measure,statistic,p_value,notes\n";
  auto emit_test = [&](const forte::TestResult& t) {
    os << t.name << ',' << t.statistic << ',';
    if (t.p_value) os << *t.p_value;
    os << ',' << t.notes << '\n';
  };
  // scalar tests run on pooled coordinates
  emit_test(forte::z_score(flat_id, flat_ood));
  emit_test(forte::ks_two_sample(flat_id, flat_ood));
  emit_test(forte::mann_whitney_u(flat_id, flat_ood));

  os << "mahalanobis," << forte::mahalanobis_mean_distance(id, ood) << ",,\n";

  forte::Divergences div = forte::embedding_divergences(id, ood, f.bins);
  auto emit_div = [&](const char* name, const std::optional<double>& v) {
    os << name << ',';
    if (v) {
      os << *v << ",,\n";
    } else {
      os << ",,undefined: no support overlap\n";
    }
  };
  emit_div("kl", div.kl);
  os << "js," << div.js << ",,\n";
  emit_div("bhattacharyya", div.bhattacharyya);

  os << "wasserstein," << forte::wasserstein_1d_mean(id, ood) << ",,\n";

  auto mean = [](const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
  };
  os << "lof_mean," << mean(forte::lof_scores(id, ood, f.k)) << ",,k=" << f.k << '\n';
  os << "iforest_mean,"
     << mean(forte::isolation_forest_scores(id, ood, f.trees, f.subsample, f.seed))
     << ",,trees=" << f.trees << " subsample=" << f.subsample << " seed=" << f.seed << '\n';

  write_text(f.out, os.str());
  return 0;
}

int cmd_convert(const std::string& in, const std::string& out) {
  forte::EmbeddingMatrix m = forte::load_embeddings(in);
  m.require_finite(in);
  if (out.size() >= 4 && out.substr(out.size() - 4) == ".csv") {
    forte::save_csv(m, out);
  } else {
    forte::save_binary(m, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forte: out-of-distribution detection on embedding features"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker thread count (default: FORTE_THREADS or cores)");

  DetectFlags det;
  CLI::App* detect = app.add_subcommand("detect", "run the detection pipeline");
  detect->add_option("--id", det.id_paths, "ID embedding file, one per space")
      ->required()
      ->check(CLI::ExistingFile);
  detect->add_option("--ood", det.ood_paths, "OOD embedding file, one per space")
      ->required()
      ->check(CLI::ExistingFile);
  detect->add_option("--k", det.k_values, "neighbor count(s); several values run a sweep")
      ->check(CLI::PositiveNumber);
  detect->add_option("--estimator", det.estimators, "gmm, kde or ocsvm (several run a sweep)")
      ->check(CLI::IsMember({"gmm", "kde", "ocsvm", "svm"}));
  detect->add_option("--out", det.out, "report JSON path")->required();
  detect->add_option("--scores", det.scores_out, "optional per-point score CSV");
  detect->add_option("--radius-source", det.radius_source, "'test' or 'reference'")
      ->check(CLI::IsMember({"test", "reference"}));
  detect->add_option("--normalization", det.normalization, "density scaling, 'k' or 'km'")
      ->check(CLI::IsMember({"k", "km"}));
  detect->add_option("--seeds", det.seeds, "split/fit seeds");
  detect->add_option("--labels", det.labels, "representation space labels");
  detect->add_flag("--strict", det.strict, "treat estimator non-convergence as an error");
  detect->add_option("--components", det.components, "GMM component count")
      ->check(CLI::PositiveNumber);
  detect->add_option("--gmm-tol", det.gmm_tol, "EM convergence tolerance");
  detect->add_option("--nu", det.nu, "one-class SVM nu")->check(CLI::Range(1e-9, 1.0));
  detect->add_option("--gamma", det.gamma, "RBF gamma (default: scale heuristic)");
  detect->add_option("--bandwidth-rule", det.bandwidth_rule, "scott, silverman or fixed")
      ->check(CLI::IsMember({"scott", "silverman", "fixed"}));
  detect->add_option("--bandwidth", det.bandwidth, "KDE bandwidth when --bandwidth-rule fixed");

  forte::SimulationConfig sim;
  std::string sim_out;
  CLI::App* simulate = app.add_subcommand("simulate", "verify closed-form PRDC moments");
  simulate->add_option("--k", sim.k, "neighbor count")->check(CLI::PositiveNumber);
  simulate->add_option("--n-train", sim.n_train, "reference sample size")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--n-test", sim.n_test, "test sample size")->check(CLI::PositiveNumber);
  simulate->add_option("--dim", sim.dim, "dimensionality")->check(CLI::PositiveNumber);
  simulate->add_option("--sigma", sim.sigma, "standard deviation")->check(CLI::PositiveNumber);
  simulate->add_option("--shift", sim.shift, "per-coordinate OOD mean shift (0 = ID only)");
  simulate->add_option("--seeds", sim.seeds, "simulation seeds");
  simulate->add_option("--out", sim_out, "output stem; writes <out>.json and <out>.csv")
      ->required();

  forte::CurseConfig curse_cfg;
  std::string curse_out;
  CLI::App* curse = app.add_subcommand("curse", "dimensionality sweep of PRDC and geometry");
  curse->add_option("--d-min", curse_cfg.d_min)->check(CLI::PositiveNumber);
  curse->add_option("--d-max", curse_cfg.d_max)->check(CLI::PositiveNumber);
  curse->add_option("--d-step", curse_cfg.d_step)->check(CLI::PositiveNumber);
  curse->add_option("--n-in", curse_cfg.n_in, "inlier count")->check(CLI::PositiveNumber);
  curse->add_option("--n-out", curse_cfg.n_out, "outlier count")->check(CLI::PositiveNumber);
  curse->add_option("--shift", curse_cfg.shift, "outlier per-coordinate mean");
  curse->add_option("--k", curse_cfg.k, "neighbor count")->check(CLI::PositiveNumber);
  curse->add_option("--seed", curse_cfg.seed);
  curse->add_option("--out", curse_out, "output CSV path")->required();

  BaselineFlags base;
  CLI::App* baseline = app.add_subcommand("baseline", "classical two-sample tests and detectors");
  baseline->add_option("--id", base.id_path)->required()->check(CLI::ExistingFile);
  baseline->add_option("--ood", base.ood_path)->required()->check(CLI::ExistingFile);
  baseline->add_option("--out", base.out, "output CSV path")->required();
  baseline->add_option("--k", base.k, "LOF neighbor count")->check(CLI::PositiveNumber);
  baseline->add_option("--trees", base.trees)->check(CLI::PositiveNumber);
  baseline->add_option("--subsample", base.subsample)->check(CLI::PositiveNumber);
  baseline->add_option("--bins", base.bins, "histogram bins")->check(CLI::PositiveNumber);
  baseline->add_option("--seed", base.seed);

  std::string conv_in, conv_out;
  CLI::App* convert = app.add_subcommand("convert", "convert embeddings between CSV and binary");
  convert->add_option("--in", conv_in)->required()->check(CLI::ExistingFile);
  convert->add_option("--out", conv_out, "target path; .csv extension selects CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (threads > 0) forte::set_worker_count(threads);
    if (*detect) return cmd_detect(det);
    if (*simulate) {
      if (sim.k + 1 > sim.n_train) {
        std::cerr << "error: --k must be smaller than --n-train\n";
        return 1;
      }
      return cmd_simulate(sim, sim_out);
    }
    if (*curse) {
      if (curse_cfg.d_min > curse_cfg.d_max) {
        std::cerr << "error: --d-min must not exceed --d-max\n";
        return 1;
      }
      return cmd_curse(curse_cfg, curse_out);
    }
    if (*baseline) return cmd_baseline(base);
    if (*convert) return cmd_convert(conv_in, conv_out);
  } catch (const forte::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const forte::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
