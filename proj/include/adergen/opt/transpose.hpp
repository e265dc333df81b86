#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "adergen/dg/config.hpp"

namespace adergen::opt {

enum class Layout { aos, soa };

/// A set of state vectors, either point-major (aos, stride qPad) or split in
/// slices of `slice` points with one row of `slice` values per variable (soa).
struct QuantityBlock {
  std::vector<double> data;
  int npoints = 0;
  int q = 0;
  int qPad = 0;
  int slice = 1;
  Layout layout = Layout::aos;

  static QuantityBlock aos(int npoints, int q, int qPad) {
    if (qPad < q) throw std::invalid_argument("qPad < q");
    QuantityBlock b;
    b.npoints = npoints;
    b.q = q;
    b.qPad = qPad;
    b.data.assign(static_cast<std::size_t>(npoints) * qPad, 0.0);
    return b;
  }

  int slices() const { return (npoints + slice - 1) / slice; }
  double& at(int point, int v) {
    if (layout == Layout::aos) return data[point * qPad + v];
    return data[(point / slice) * q * slice + v * slice + point % slice];
  }
};

/// Transpose one slice [first, first+count) of an aos array into rows Qs[v*s + lane].
/// Lanes past `count` are zero-filled.
inline void transpose_slice_to_soa(const double* aos, int qPad, int q, int first, int count, int s, double* soa) {
  for (int v = 0; v < q; ++v)
    for (int lane = 0; lane < s; ++lane) soa[v * s + lane] = lane < count ? aos[(first + lane) * qPad + v] : 0.0;
}

inline void transpose_slice_to_aos(const double* soa, int qPad, int q, int first, int count, int s, double* aos) {
  for (int lane = 0; lane < count; ++lane)
    for (int v = 0; v < q; ++v) aos[(first + lane) * qPad + v] = soa[v * s + lane];
}

inline QuantityBlock transpose_aos_to_soa(const QuantityBlock& in, int s) {
  if (in.layout != Layout::aos) throw std::invalid_argument("expected an aos block");
  if (s < 1) throw std::invalid_argument("slice width must be positive");
  if (static_cast<int>(in.data.size()) != in.npoints * in.qPad) throw std::invalid_argument("dimension mismatch");
  QuantityBlock out = in;
  out.layout = Layout::soa;
  out.slice = s;
  out.data.assign(static_cast<std::size_t>(out.slices()) * in.q * s, 0.0);
  for (int sl = 0; sl < out.slices(); ++sl) {
    const int first = sl * s;
    const int count = std::min(s, in.npoints - first);
    transpose_slice_to_soa(in.data.data(), in.qPad, in.q, first, count, s, out.data.data() + sl * in.q * s);
  }
  return out;
}

inline QuantityBlock transpose_soa_to_aos(const QuantityBlock& in) {
  if (in.layout != Layout::soa) throw std::invalid_argument("expected an soa block");
  if (static_cast<int>(in.data.size()) != in.slices() * in.q * in.slice)
    throw std::invalid_argument("dimension mismatch");
  QuantityBlock out = QuantityBlock::aos(in.npoints, in.q, in.qPad);
  const int s = in.slice;
  for (int sl = 0; sl < in.slices(); ++sl) {
    const int first = sl * s;
    const int count = std::min(s, in.npoints - first);
    transpose_slice_to_aos(in.data.data() + sl * in.q * s, in.qPad, in.q, first, count, s, out.data.data());
  }
  return out;
}

}  // namespace adergen::opt
