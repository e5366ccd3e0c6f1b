#ifndef DTFC_TENSOR_HPP
#define DTFC_TENSOR_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dtfc/error.hpp"

namespace dtfc {

// Dense feature tensor. Values are 32-bit floats at the file boundary
// (NPY <f4); in memory they are widened to double so that downstream
// distortion arithmetic stays exact against 64-bit codebook centers.
struct FeatureTensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;
  std::string source_tag;

  std::size_t element_count() const {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
  }

  void validate() const {
    if (shape.empty()) fail(ErrorKind::DataError, "tensor shape is empty");
    for (std::size_t d : shape) {
      if (d == 0) fail(ErrorKind::DataError, "tensor dimension of size 0");
    }
    if (element_count() != values.size()) {
      fail(ErrorKind::DataError, "shape/value count mismatch");
    }
    for (double v : values) {
      if (!std::isfinite(v)) fail(ErrorKind::DataError, "non-finite value in tensor");
    }
  }
};

inline bool same_contents(const FeatureTensor& a, const FeatureTensor& b) {
  return a.shape == b.shape && a.values == b.values;
}

// Mean squared error between two equally shaped tensors, accumulated in
// element order so it matches transform_distortion bit for bit.
inline double mse(const FeatureTensor& a, const FeatureTensor& b) {
  if (a.values.size() != b.values.size()) {
    fail(ErrorKind::ParamError, "mse: size mismatch");
  }
  if (a.values.empty()) fail(ErrorKind::ParamError, "mse: empty tensors");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.values.size());
}

}  // namespace dtfc

#endif
