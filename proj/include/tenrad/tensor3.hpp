#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "tenrad/errors.hpp"

namespace tenrad {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense order-3 complex tensor, column-major: (i,j,k) lives at
/// i + j*d0 + k*d0*d1, so vec() stacks the frontal slices column-wise.
class Tensor3 {
 public:
  Tensor3() : dims_{0, 0, 0} {}
  Tensor3(Eigen::Index d0, Eigen::Index d1, Eigen::Index d2)
      : dims_{d0, d1, d2}, data_(Vector::Zero(d0 * d1 * d2)) {
    if (d0 < 1 || d1 < 1 || d2 < 1) throw shape_error("Tensor3: dimensions must be >= 1");
  }

  Eigen::Index dim(int mode) const { return dims_[static_cast<std::size_t>(mode)]; }
  const std::array<Eigen::Index, 3>& dims() const { return dims_; }
  Eigen::Index size() const { return data_.size(); }

  cplx& operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    return data_[i + dims_[0] * (j + dims_[1] * k)];
  }
  cplx operator()(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
    return data_[i + dims_[0] * (j + dims_[1] * k)];
  }

  Vector& vec() { return data_; }
  const Vector& vec() const { return data_; }

  void set_zero() { data_.setZero(); }
  double norm() const { return data_.norm(); }

 private:
  std::array<Eigen::Index, 3> dims_;
  Vector data_;
};

/// Mode-n product: contracts `m` (rows x t.dim(mode)) against the given mode.
inline Tensor3 mode_product(const Tensor3& t, const Matrix& m, int mode) {
  if (mode < 0 || mode > 2) throw shape_error("mode_product: mode must be 0, 1 or 2");
  if (m.cols() != t.dim(mode)) throw shape_error("mode_product: factor columns must match tensor mode");
  const Eigen::Index d0 = t.dim(0), d1 = t.dim(1), d2 = t.dim(2), r = m.rows();
  using CMap = Eigen::Map<const Matrix>;
  using MMap = Eigen::Map<Matrix>;
  switch (mode) {
    case 0: {
      Tensor3 out(r, d1, d2);
      MMap(out.vec().data(), r, d1 * d2) = m * CMap(t.vec().data(), d0, d1 * d2);
      return out;
    }
    case 1: {
      Tensor3 out(d0, r, d2);
      for (Eigen::Index k = 0; k < d2; ++k) {
        CMap slice(t.vec().data() + k * d0 * d1, d0, d1);
        MMap(out.vec().data() + k * d0 * r, d0, r) = slice * m.transpose();
      }
      return out;
    }
    case 2: {
      Tensor3 out(d0, d1, r);
      MMap(out.vec().data(), d0 * d1, r) = CMap(t.vec().data(), d0 * d1, d2) * m.transpose();
      return out;
    }
    default:
      throw shape_error("mode_product: mode must be 0, 1 or 2");
  }
}

/// Multi-linear product [[X; A, B, F]]: out[i,j,k] = sum X[a,b,c] A[i,a] B[j,b] F[k,c].
inline Tensor3 multilinear_product(const Tensor3& x, const Matrix& a, const Matrix& b, const Matrix& f) {
  return mode_product(mode_product(mode_product(x, a, 0), b, 1), f, 2);
}

}  // namespace tenrad
