#pragma once

#include <minbasis/minbasis.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace fixtures {

using minbasis::Index;
using minbasis::Mat;
using minbasis::PolyMat;

/// Builds a real polynomial matrix from a list of dense coefficients.
inline PolyMat<double> poly(std::initializer_list<std::initializer_list<std::initializer_list<double>>> coeffs) {
  std::vector<Mat<double>> c;
  for (const auto& ci : coeffs) {
    const Index r = static_cast<Index>(ci.size());
    const Index q = static_cast<Index>(ci.begin()->size());
    Mat<double> a(r, q);
    Index i = 0;
    for (const auto& row : ci) {
      Index j = 0;
      for (double v : row) a(i, j++) = v;
      ++i;
    }
    c.push_back(a);
  }
  return PolyMat<double>(std::move(c));
}

/// Sets entry (r, c) of coefficient `power` in a zero-initialized grade-g matrix.
class Builder {
 public:
  Builder(Index rows, Index cols, int grade) : c_(static_cast<std::size_t>(grade) + 1, Mat<double>::Zero(rows, cols)) {}
  Builder& set(Index r, Index c, int power, double v) {
    c_[static_cast<std::size_t>(power)](r, c) = v;
    return *this;
  }
  PolyMat<double> build() const { return PolyMat<double>(c_); }

 private:
  std::vector<Mat<double>> c_;
};

/// [-I lI 0 0; 0 -I lI 0; 0 0 -I lI] with 2x2 blocks.
inline PolyMat<double> example1_M() {
  Builder b(6, 8, 1);
  for (Index i = 0; i < 6; ++i) b.set(i, i, 0, -1.0).set(i, i + 2, 1, 1.0);
  return b.build();
}

/// [l^3 I, l^2 I, l I, I].
inline PolyMat<double> example1_N() {
  Builder b(2, 8, 3);
  for (Index i = 0; i < 2; ++i) b.set(i, i, 3, 1.0).set(i, 2 + i, 2, 1.0).set(i, 4 + i, 1, 1.0).set(i, 6 + i, 0, 1.0);
  return b.build();
}

inline PolyMat<double> example2_M() {
  Builder b(4, 7, 1);
  b.set(0, 0, 1, 1.0);
  b.set(1, 2, 0, -1.0).set(1, 3, 1, 1.0);
  b.set(2, 4, 0, -1.0).set(2, 5, 1, 1.0);
  b.set(3, 5, 0, -1.0).set(3, 6, 1, 1.0);
  return b.build();
}

inline PolyMat<double> example2_N() {
  Builder b(3, 7, 2);
  b.set(0, 1, 0, 1.0);
  b.set(1, 2, 1, 1.0).set(1, 3, 0, 1.0);
  b.set(2, 4, 2, 1.0).set(2, 5, 1, 1.0).set(2, 6, 0, 1.0);
  return b.build();
}

/// Example 1 with the last block row replaced by [0 0 -I l^2 I].
inline PolyMat<double> example3_M() {
  Builder b(6, 8, 2);
  for (Index i = 0; i < 4; ++i) b.set(i, i, 0, -1.0).set(i, i + 2, 1, 1.0);
  for (Index i = 4; i < 6; ++i) b.set(i, i, 0, -1.0).set(i, i + 2, 2, 1.0);
  return b.build();
}

inline PolyMat<double> example3_N() {
  Builder b(2, 8, 4);
  for (Index i = 0; i < 2; ++i) b.set(i, i, 4, 1.0).set(i, 2 + i, 3, 1.0).set(i, 4 + i, 2, 1.0).set(i, 6 + i, 0, 1.0);
  return b.build();
}

/// [1, l].
inline PolyMat<double> one_lambda() { return poly({{{1, 0}}, {{0, 1}}}); }

/// [1, l, 0, 0].
inline PolyMat<double> flat_1311() { return poly({{{1, 0, 0, 0}}, {{0, 1, 0, 0}}}); }

inline std::string data_path(const std::string& name) { return std::string(MINBASIS_DATA_DIR) + "/" + name; }

}  // namespace fixtures
