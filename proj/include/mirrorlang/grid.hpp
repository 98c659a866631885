#pragma once

#include <Eigen/Core>
#include <cmath>

#include "mirrorlang/error.hpp"

namespace mirrorlang {

/// Uniform, strictly increasing grid `start + i * step`, i = 0..size-1.
///
/// Points are generated from the index rather than by accumulation so that
/// two grids with equal (start, step, size) are bitwise identical.
template <typename Scalar>
struct BasicUniformGrid {
  Scalar start = 0;
  Scalar step = 1;
  Eigen::Index size = 0;

  static BasicUniformGrid from_step(Scalar start, Scalar step, Eigen::Index size) {
    BasicUniformGrid g{start, step, size};
    g.validate();
    return g;
  }

  /// Inclusive linspace over [min, max] with n points.
  static BasicUniformGrid linspace(Scalar min, Scalar max, Eigen::Index n) {
    if (n < 2) throw Error(ErrorCode::EmptyGrid, "grid needs at least 2 points");
    if (!(max > min)) throw Error(ErrorCode::InvalidGrid, "grid max must exceed min");
    return from_step(min, (max - min) / static_cast<Scalar>(n - 1), n);
  }

  /// Grid [0, t_max] with the given step; the last point is the largest
  /// multiple of step not exceeding t_max (up to rounding slack).
  static BasicUniformGrid span(Scalar t_max, Scalar step) {
    if (!(step > 0) || !(t_max > 0)) throw Error(ErrorCode::InvalidGrid, "t_max and dt must be positive");
    const auto n = static_cast<Eigen::Index>(std::floor(t_max / step * (1 + 1e-12))) + 1;
    return from_step(Scalar(0), step, n);
  }

  void validate() const {
    if (size < 2) throw Error(ErrorCode::EmptyGrid, "grid needs at least 2 points");
    if (!(step > 0) || !std::isfinite(step) || !std::isfinite(start))
      throw Error(ErrorCode::InvalidGrid, "grid step must be finite and positive");
  }

  Scalar operator[](Eigen::Index i) const { return start + static_cast<Scalar>(i) * step; }
  Scalar back() const { return (*this)[size - 1]; }
  Scalar length() const { return static_cast<Scalar>(size - 1) * step; }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(size);
    for (Eigen::Index i = 0; i < size; ++i) v[i] = (*this)[i];
    return v;
  }

  friend bool operator==(const BasicUniformGrid&, const BasicUniformGrid&) = default;
};

using UniformGrid = BasicUniformGrid<double>;

}  // namespace mirrorlang
