#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "forte/baselines.hpp"
#include "forte/errors.hpp"
#include "forte/evaluation.hpp"
#include "forte/pipeline.hpp"
#include "forte/theory.hpp"

namespace py = pybind11;

namespace {

forte::EmbeddingMatrix to_matrix(const py::array& arr) {
  auto a = py::array_t<float, py::array::c_style | py::array::forcecast>::ensure(arr);
  if (!a || a.ndim() != 2) throw py::value_error("expected a 2-D array");
  auto n = static_cast<std::size_t>(a.shape(0));
  auto d = static_cast<std::size_t>(a.shape(1));
  std::vector<float> data(a.data(), a.data() + n * d);
  return {n, d, std::move(data)};
}

std::vector<forte::EmbeddingMatrix> to_matrices(const std::vector<py::array>& arrays) {
  std::vector<forte::EmbeddingMatrix> out;
  out.reserve(arrays.size());
  for (const auto& a : arrays) out.push_back(to_matrix(a));
  return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<float> matrix_to_array(const forte::EmbeddingMatrix& m) {
  py::array_t<float> out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

forte::RadiusSource parse_radius_source(const std::string& s) {
  if (s == "test") return forte::RadiusSource::WithinTestSet;
  if (s == "reference") return forte::RadiusSource::FromReferenceSet;
  throw py::value_error("radius_source must be 'test' or 'reference'");
}

forte::DensityNormalization parse_normalization(const std::string& s) {
  if (s == "k") return forte::DensityNormalization::OneOverK;
  if (s == "km") return forte::DensityNormalization::OneOverKM;
  throw py::value_error("normalization must be 'k' or 'km'");
}

}  // namespace

PYBIND11_MODULE(_forte, m) {
  m.doc() = "out-of-distribution detection on embedding features";

  py::register_exception<forte::DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<forte::NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def(
      "detect",
      [](const std::vector<py::array>& id_spaces, const std::vector<py::array>& ood_spaces,
         std::size_t k, const std::string& estimator, const std::string& radius_source,
         const std::string& normalization, const std::vector<std::uint64_t>& seeds, bool strict,
         const std::vector<std::string>& labels, std::size_t components, double bandwidth,
         double nu, double gamma) {
        forte::PipelineConfig cfg;
        cfg.id_spaces = to_matrices(id_spaces);
        cfg.ood_spaces = to_matrices(ood_spaces);
        cfg.prdc.k = k;
        cfg.prdc.radius_source = parse_radius_source(radius_source);
        cfg.prdc.density_normalization = parse_normalization(normalization);
        cfg.estimator.kind = forte::estimator_from_string(estimator);
        cfg.estimator.gmm.n_components = components;
        if (bandwidth > 0.0) {
          cfg.estimator.kde.rule = forte::BandwidthRule::Fixed;
          cfg.estimator.kde.fixed_bandwidth = bandwidth;
        }
        cfg.estimator.ocsvm.nu = nu;
        if (gamma > 0.0) {
          cfg.estimator.ocsvm.gamma_scale = false;
          cfg.estimator.ocsvm.fixed_gamma = gamma;
        }
        if (!seeds.empty()) cfg.seeds = seeds;
        cfg.strict = strict;
        cfg.space_labels = labels;
        return forte::report_to_json(forte::run_forte(cfg));
      },
      py::arg("id_spaces"), py::arg("ood_spaces"), py::arg("k") = 5,
      py::arg("estimator") = "gmm", py::arg("radius_source") = "test",
      py::arg("normalization") = "k", py::arg("seeds") = std::vector<std::uint64_t>{},
      py::arg("strict") = false, py::arg("labels") = std::vector<std::string>{},
      py::arg("components") = 4, py::arg("bandwidth") = 0.0, py::arg("nu") = 0.05,
      py::arg("gamma") = 0.0,
      "Full pipeline: PRDC features, density estimator, AUROC/FPR95. Returns report JSON.");

  m.def(
      "prdc_features",
      [](const std::vector<py::array>& test_spaces, const std::vector<py::array>& ref_spaces,
         std::size_t k, const std::string& radius_source, const std::string& normalization,
         const std::vector<std::string>& labels) {
        forte::PrdcConfig cfg;
        cfg.k = k;
        cfg.radius_source = parse_radius_source(radius_source);
        cfg.density_normalization = parse_normalization(normalization);
        forte::FeatureMatrix f = forte::assemble_features(to_matrices(test_spaces),
                                                          to_matrices(ref_spaces), cfg, labels);
        py::array_t<double> values(
            {static_cast<py::ssize_t>(f.n), static_cast<py::ssize_t>(f.c)});
        std::copy(f.values.begin(), f.values.end(), values.mutable_data());
        return py::make_tuple(values, f.labels);
      },
      py::arg("test_spaces"), py::arg("ref_spaces"), py::arg("k") = 5,
      py::arg("radius_source") = "test", py::arg("normalization") = "k",
      py::arg("labels") = std::vector<std::string>{},
      "Per-point PRDC columns per space; returns (values, column labels).");

  m.def(
      "auroc",
      [](const std::vector<double>& id_scores, const std::vector<double>& ood_scores) {
        return forte::auroc(id_scores, ood_scores);
      },
      py::arg("id_scores"), py::arg("ood_scores"));

  m.def(
      "fpr_at_tpr",
      [](const std::vector<double>& id_scores, const std::vector<double>& ood_scores,
         double target) { return forte::fpr_at_tpr(id_scores, ood_scores, target); },
      py::arg("id_scores"), py::arg("ood_scores"), py::arg("target_tpr") = 0.95);

  m.def(
      "simulate",
      [](std::size_t k, std::size_t n_train, std::size_t n_test, std::size_t dim, double sigma,
         double shift, const std::vector<std::uint64_t>& seeds) {
        forte::SimulationConfig cfg;
        cfg.k = k;
        cfg.n_train = n_train;
        cfg.n_test = n_test;
        cfg.dim = dim;
        cfg.sigma = sigma;
        cfg.shift = shift;
        if (!seeds.empty()) cfg.seeds = seeds;
        return forte::simulation_report_to_json(forte::monte_carlo_verify(cfg));
      },
      py::arg("k") = 5, py::arg("n_train") = 2000, py::arg("n_test") = 500, py::arg("dim") = 4,
      py::arg("sigma") = 1.0, py::arg("shift") = 0.0,
      py::arg("seeds") = std::vector<std::uint64_t>{},
      "Monte Carlo check of the closed-form PRDC moments. Returns report JSON.");

  m.def(
      "expected_prdc",
      [](std::size_t k, std::size_t n_train) {
        forte::TheoryPrediction t = forte::expected_prdc(k, n_train);
        return py::make_tuple(t.precision, t.recall, t.density, t.coverage);
      },
      py::arg("k"), py::arg("n_train"));

  m.def(
      "sample_gaussian",
      [](std::size_t n, std::size_t d, double mean, double sigma, std::uint64_t seed) {
        return matrix_to_array(forte::sample_gaussian({n, d, mean, sigma, seed}));
      },
      py::arg("n"), py::arg("d"), py::arg("mean") = 0.0, py::arg("sigma") = 1.0,
      py::arg("seed") = 0);

  m.def(
      "lof",
      [](const py::array& refs, const py::array& query, std::size_t k) {
        return to_array(forte::lof_scores(to_matrix(refs), to_matrix(query), k));
      },
      py::arg("refs"), py::arg("query"), py::arg("k") = 5);

  m.def(
      "isolation_forest",
      [](const py::array& refs, const py::array& query, std::size_t n_trees,
         std::size_t subsample, std::uint64_t seed) {
        return to_array(
            forte::isolation_forest_scores(to_matrix(refs), to_matrix(query), n_trees,
                                           subsample, seed));
      },
      py::arg("refs"), py::arg("query"), py::arg("n_trees") = 100, py::arg("subsample") = 256,
      py::arg("seed") = 0);
}
