#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace yalign::io {

// Simple binary matrix container:
//   magic "YMC1", u64 count, then per matrix:
//   u32 name length, name bytes, u64 rows, u64 cols, rows*cols complex
//   entries row-major as interleaved real/imaginary 64-bit floats.
struct NamedMatrix {
  std::string name;
  Eigen::MatrixXcd value;
};

void write_matrix_file(const std::string& path,
                       const std::vector<NamedMatrix>& matrices);
std::vector<NamedMatrix> read_matrix_file(const std::string& path);

}  // namespace yalign::io
