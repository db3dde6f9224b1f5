#include "forte/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "forte/errors.hpp"

namespace forte {

namespace {

constexpr std::array<char, 4> kMagic = {'F', 'R', 'T', 'E'};
constexpr std::uint32_t kVersion = 1;

bool parse_cell(std::string_view token, double& out) {
  // trim ascii whitespace
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
    token.remove_suffix(1);
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size() && std::isfinite(out);
}

std::vector<std::string_view> split_commas(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

void write_le32(std::ostream& os, std::uint32_t v) {
  std::array<unsigned char, 4> b = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                    static_cast<unsigned char>(v >> 16),
                                    static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b.data()), 4);
}

void write_le64(std::ostream& os, std::uint64_t v) {
  std::array<unsigned char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b.data()), 8);
}

std::uint32_t read_le32(std::istream& is) {
  std::array<unsigned char, 4> b;
  is.read(reinterpret_cast<char*>(b.data()), 4);
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
         std::uint32_t(b[3]) << 24;
}

std::uint64_t read_le64(std::istream& is) {
  std::array<unsigned char, 8> b;
  is.read(reinterpret_cast<char*>(b.data()), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

}  // namespace

EmbeddingMatrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<float> data;
  std::size_t d = 0, n = 0, line_no = 0;
  std::string line;
  std::vector<std::string_view> cells;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    split_commas(line, cells);
    if (first_content_line) {
      // a single header row of non-numeric tokens is skipped
      double tmp;
      bool numeric = true;
      for (auto c : cells) {
        if (!parse_cell(c, tmp)) {
          numeric = false;
          break;
        }
      }
      first_content_line = false;
      if (!numeric) {
        d = cells.size();
        continue;
      }
    }
    if (d == 0) {
      d = cells.size();
    } else if (cells.size() != d) {
      throw DataError(path + ": ragged row " + std::to_string(line_no) + " (expected " +
                      std::to_string(d) + " columns, got " + std::to_string(cells.size()) + ")");
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      double v;
      if (!parse_cell(cells[j], v)) {
        throw DataError(path + ": non-numeric or non-finite cell at row " +
                        std::to_string(line_no) + ", column " + std::to_string(j + 1));
      }
      data.push_back(static_cast<float>(v));
    }
    ++n;
  }
  if (n == 0 || d == 0) throw DataError(path + ": no data rows");
  return EmbeddingMatrix(n, d, std::move(data));
}

void save_csv(const EmbeddingMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  out.precision(9);  // round-trips binary32 exactly
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m.at(i, j);
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

void save_feature_csv(const FeatureMatrix& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  out.precision(17);
  for (std::size_t j = 0; j < f.labels.size(); ++j) {
    if (j) out << ',';
    out << f.labels[j];
  }
  if (!f.labels.empty()) out << '\n';
  for (std::size_t i = 0; i < f.n; ++i) {
    for (std::size_t j = 0; j < f.c; ++j) {
      if (j) out << ',';
      out << f.at(i, j);
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

EmbeddingMatrix load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::array<char, 4> magic;
  in.read(magic.data(), 4);
  if (!in || magic != kMagic) throw DataError(path + ": bad magic (expected FRTE)");
  std::uint32_t version = read_le32(in);
  if (!in) throw DataError(path + ": truncated header");
  if (version != kVersion) {
    throw DataError(path + ": unsupported version " + std::to_string(version));
  }
  std::uint64_t n = read_le64(in);
  std::uint32_t d = read_le32(in);
  if (!in) throw DataError(path + ": truncated header");
  if (n == 0 || d == 0) throw DataError(path + ": empty matrix");
  std::vector<float> data(static_cast<std::size_t>(n) * d);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(data.size() * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(data.size() * sizeof(float))) {
    throw DataError(path + ": truncated payload");
  }
  return EmbeddingMatrix(static_cast<std::size_t>(n), d, std::move(data));
}

void save_binary(const EmbeddingMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out.write(kMagic.data(), 4);
  write_le32(out, kVersion);
  write_le64(out, m.rows());
  write_le32(out, static_cast<std::uint32_t>(m.cols()));
  out.write(reinterpret_cast<const char*>(m.data().data()),
            static_cast<std::streamsize>(m.data().size() * sizeof(float)));
  if (!out) throw DataError("write failed: " + path);
}

EmbeddingMatrix load_embeddings(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    return load_csv(path);
  }
  return load_binary(path);
}

}  // namespace forte
