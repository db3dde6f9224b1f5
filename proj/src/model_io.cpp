#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "forte/errors.hpp"
#include "forte/scoring.hpp"

namespace forte {

// "FRTM" model container, version 1, little-endian throughout:
//   magic, u32 version, u32 kind (0 gmm, 1 kde, 2 ocsvm),
//   standardizer (u64 columns, means, scales, epsilon as f64),
//   then the model payload (all counts u64, all reals f64, raw bits).

namespace {

constexpr std::array<char, 4> kMagic = {'F', 'R', 'T', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) os.put(static_cast<char>(v >> (8 * i)));
}
void put_u64(std::ostream& os, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) os.put(static_cast<char>(v >> (8 * i)));
}
void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }
void put_vec(std::ostream& os, const std::vector<double>& v) {
  put_u64(os, v.size());
  for (double x : v) put_f64(os, x);
}
void put_str(std::ostream& os, const std::string& s) {
  put_u64(os, s.size());
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<unsigned char>(is.get())) << (8 * i);
  return v;
}
std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(is.get())) << (8 * i);
  return v;
}
double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }
std::vector<double> get_vec(std::istream& is) {
  std::uint64_t n = get_u64(is);
  std::vector<double> v(n);
  for (auto& x : v) x = get_f64(is);
  return v;
}
std::string get_str(std::istream& is) {
  std::uint64_t n = get_u64(is);
  std::string s(n, '\0');
  is.read(s.data(), static_cast<std::streamsize>(n));
  return s;
}

void put_features(std::ostream& os, const FeatureMatrix& f) {
  put_u64(os, f.n);
  put_u64(os, f.c);
  for (double v : f.values) put_f64(os, v);
  put_u64(os, f.labels.size());
  for (const auto& l : f.labels) put_str(os, l);
}

FeatureMatrix get_features(std::istream& is) {
  FeatureMatrix f;
  f.n = get_u64(is);
  f.c = get_u64(is);
  f.values.resize(f.n * f.c);
  for (auto& v : f.values) v = get_f64(is);
  std::uint64_t nl = get_u64(is);
  for (std::uint64_t i = 0; i < nl; ++i) f.labels.push_back(get_str(is));
  return f;
}

}  // namespace

void save_model(const DensityModel& model, const Standardizer& standardizer,
                const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out.write(kMagic.data(), 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(model_kind(model)));
  put_vec(out, standardizer.mean);
  put_vec(out, standardizer.scale);
  put_f64(out, standardizer.epsilon);

  if (const auto* g = std::get_if<GmmModel>(&model)) {
    put_u64(out, g->n_components);
    put_u64(out, g->n_features);
    put_vec(out, g->weights);
    put_vec(out, g->means);
    put_vec(out, g->variances);
    put_f64(out, g->params.tol);
    put_u64(out, g->params.max_iter);
    put_f64(out, g->params.reg_floor);
    put_u64(out, g->seed);
  } else if (const auto* k = std::get_if<KdeModel>(&model)) {
    put_features(out, k->points);
    put_f64(out, k->bandwidth);
    put_u32(out, static_cast<std::uint32_t>(k->params.rule));
    put_f64(out, k->params.fixed_bandwidth);
  } else {
    const auto& o = std::get<OcsvmModel>(model);
    put_features(out, o.support_vectors);
    put_vec(out, o.alpha);
    put_f64(out, o.rho);
    put_f64(out, o.gamma);
    put_f64(out, o.nu);
    put_u64(out, o.n_train);
    put_f64(out, o.params.tol);
    put_u64(out, o.params.max_iter);
  }
  if (!out) throw DataError("write failed: " + path);
}

std::pair<DensityModel, Standardizer> load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::array<char, 4> magic;
  in.read(magic.data(), 4);
  if (!in || magic != kMagic) throw DataError(path + ": bad magic (expected FRTM)");
  std::uint32_t version = get_u32(in);
  if (version != kVersion) throw DataError(path + ": unsupported model version");
  auto kind = static_cast<EstimatorKind>(get_u32(in));
  Standardizer s;
  s.mean = get_vec(in);
  s.scale = get_vec(in);
  s.epsilon = get_f64(in);

  DensityModel model;
  if (kind == EstimatorKind::Gmm) {
    GmmModel g;
    g.n_components = get_u64(in);
    g.n_features = get_u64(in);
    g.weights = get_vec(in);
    g.means = get_vec(in);
    g.variances = get_vec(in);
    g.params.n_components = g.n_components;
    g.params.tol = get_f64(in);
    g.params.max_iter = get_u64(in);
    g.params.reg_floor = get_f64(in);
    g.seed = get_u64(in);
    model = std::move(g);
  } else if (kind == EstimatorKind::Kde) {
    KdeModel k;
    k.points = get_features(in);
    k.bandwidth = get_f64(in);
    k.params.rule = static_cast<BandwidthRule>(get_u32(in));
    k.params.fixed_bandwidth = get_f64(in);
    model = std::move(k);
  } else {
    OcsvmModel o;
    o.support_vectors = get_features(in);
    o.alpha = get_vec(in);
    o.rho = get_f64(in);
    o.gamma = get_f64(in);
    o.nu = get_f64(in);
    o.n_train = get_u64(in);
    o.params.nu = o.nu;
    o.params.tol = get_f64(in);
    o.params.max_iter = get_u64(in);
    model = std::move(o);
  }
  if (!in) throw DataError(path + ": truncated model file");
  return {std::move(model), std::move(s)};
}

}  // namespace forte
