#include "yalign/io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace yalign::io {

namespace {

constexpr char kMagic[4] = {'Y', 'M', 'C', '1'};

template <typename T>
void write_pod(std::ofstream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw std::runtime_error("truncated matrix file");
  return value;
}

}  // namespace

void write_matrix_file(const std::string& path,
                       const std::vector<NamedMatrix>& matrices) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.write(kMagic, 4);
  write_pod<std::uint64_t>(os, matrices.size());
  for (const auto& m : matrices) {
    write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(m.name.size()));
    os.write(m.name.data(), static_cast<std::streamsize>(m.name.size()));
    write_pod<std::uint64_t>(os, static_cast<std::uint64_t>(m.value.rows()));
    write_pod<std::uint64_t>(os, static_cast<std::uint64_t>(m.value.cols()));
    for (Eigen::Index r = 0; r < m.value.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.value.cols(); ++c) {
        write_pod<double>(os, m.value(r, c).real());
        write_pod<double>(os, m.value(r, c).imag());
      }
    }
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::vector<NamedMatrix> read_matrix_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != std::string(kMagic, 4)) {
    throw std::runtime_error("bad matrix container magic in " + path);
  }
  const auto count = read_pod<std::uint64_t>(is);
  std::vector<NamedMatrix> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto name_len = read_pod<std::uint32_t>(is);
    std::string name(name_len, '\0');
    is.read(name.data(), name_len);
    const auto rows = read_pod<std::uint64_t>(is);
    const auto cols = read_pod<std::uint64_t>(is);
    Eigen::MatrixXcd m(rows, cols);
    for (std::uint64_t r = 0; r < rows; ++r) {
      for (std::uint64_t c = 0; c < cols; ++c) {
        const double re = read_pod<double>(is);
        const double im = read_pod<double>(is);
        m(r, c) = std::complex<double>(re, im);
      }
    }
    out.push_back({std::move(name), std::move(m)});
  }
  return out;
}

}  // namespace yalign::io
