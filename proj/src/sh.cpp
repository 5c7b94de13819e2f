// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#include "glint/sh.hpp"

#include <cassert>

namespace glint {

namespace {

constexpr double kC0 = 0.28209479177387814;
constexpr double kC1 = 0.4886025119029199;
constexpr double kC2[5] = {1.0925484305920792, -1.0925484305920792, 0.31539156525251999,
                           -1.0925484305920792, 0.5462742152960396};
constexpr double kC3[7] = {-0.5900435899266435, 2.890611442640554, -0.4570457994644658,
                           0.3731763325901154, -0.4570457994644658, 1.445305721320277,
                           -0.5900435899266435};

}  // namespace

void sh_basis(const Eigen::Vector3d& dir, int order, double* out) {
    assert(order >= 0 && order <= kShMaxOrder);
    const double x = dir.x(), y = dir.y(), z = dir.z();
    out[0] = kC0;
    if (order < 1) return;
    out[1] = -kC1 * y;
    out[2] = kC1 * z;
    out[3] = -kC1 * x;
    if (order < 2) return;
    const double xx = x * x, yy = y * y, zz = z * z;
    out[4] = kC2[0] * x * y;
    out[5] = kC2[1] * y * z;
    out[6] = kC2[2] * (2.0 * zz - xx - yy);
    out[7] = kC2[3] * x * z;
    out[8] = kC2[4] * (xx - yy);
    if (order < 3) return;
    out[9] = kC3[0] * y * (3.0 * xx - yy);
    out[10] = kC3[1] * x * y * z;
    out[11] = kC3[2] * y * (4.0 * zz - xx - yy);
    out[12] = kC3[3] * z * (2.0 * zz - 3.0 * xx - 3.0 * yy);
    out[13] = kC3[4] * x * (4.0 * zz - xx - yy);
    out[14] = kC3[5] * z * (xx - yy);
    out[15] = kC3[6] * x * (xx - 3.0 * yy);
}

void sh_basis_dir_grad(const Eigen::Vector3d& dir, int order, Eigen::Vector3d* out) {
    assert(order >= 0 && order <= kShMaxOrder);
    const double x = dir.x(), y = dir.y(), z = dir.z();
    out[0].setZero();
    if (order < 1) return;
    out[1] = {0.0, -kC1, 0.0};
    out[2] = {0.0, 0.0, kC1};
    out[3] = {-kC1, 0.0, 0.0};
    if (order < 2) return;
    const double xx = x * x, yy = y * y, zz = z * z;
    out[4] = kC2[0] * Eigen::Vector3d(y, x, 0.0);
    out[5] = kC2[1] * Eigen::Vector3d(0.0, z, y);
    out[6] = kC2[2] * Eigen::Vector3d(-2.0 * x, -2.0 * y, 4.0 * z);
    out[7] = kC2[3] * Eigen::Vector3d(z, 0.0, x);
    out[8] = kC2[4] * Eigen::Vector3d(2.0 * x, -2.0 * y, 0.0);
    if (order < 3) return;
    out[9] = kC3[0] * Eigen::Vector3d(6.0 * x * y, 3.0 * xx - 3.0 * yy, 0.0);
    out[10] = kC3[1] * Eigen::Vector3d(y * z, x * z, x * y);
    out[11] = kC3[2] * Eigen::Vector3d(-2.0 * x * y, 4.0 * zz - xx - 3.0 * yy, 8.0 * y * z);
    out[12] = kC3[3] * Eigen::Vector3d(-6.0 * x * z, -6.0 * y * z, 6.0 * zz - 3.0 * xx - 3.0 * yy);
    out[13] = kC3[4] * Eigen::Vector3d(4.0 * zz - 3.0 * xx - yy, -2.0 * x * y, 8.0 * x * z);
    out[14] = kC3[5] * Eigen::Vector3d(2.0 * x * z, -2.0 * y * z, xx - yy);
    out[15] = kC3[6] * Eigen::Vector3d(3.0 * xx - 3.0 * yy, -6.0 * x * y, 0.0);
}

Eigen::Vector3d eval_sh(const std::vector<Eigen::Vector3d>& coeffs,
                        const Eigen::Vector3d& dir, int order) {
    const int n = (order + 1) * (order + 1);
    assert(static_cast<int>(coeffs.size()) >= n);
    double basis[16];
    sh_basis(dir, order, basis);
    Eigen::Vector3d raw = Eigen::Vector3d::Constant(0.5);
    for (int i = 0; i < n; ++i) raw += basis[i] * coeffs[i];
    return raw.cwiseMax(0.0);
}

ShBackward eval_sh_backward(const std::vector<Eigen::Vector3d>& coeffs,
                            const Eigen::Vector3d& dir, int order,
                            const Eigen::Vector3d& upstream) {
    const int n = (order + 1) * (order + 1);
    assert(static_cast<int>(coeffs.size()) >= n);
    double basis[16];
    Eigen::Vector3d basis_grad[16];
    sh_basis(dir, order, basis);
    sh_basis_dir_grad(dir, order, basis_grad);

    Eigen::Vector3d raw = Eigen::Vector3d::Constant(0.5);
    for (int i = 0; i < n; ++i) raw += basis[i] * coeffs[i];
    Eigen::Vector3d up = upstream;
    for (int c = 0; c < 3; ++c)
        if (raw[c] < 0.0) up[c] = 0.0;  // clamped channels are flat

    ShBackward back;
    back.d_coeffs.assign(coeffs.size(), Eigen::Vector3d::Zero());
    for (int i = 0; i < n; ++i) {
        back.d_coeffs[i] = basis[i] * up;
        back.d_dir += basis_grad[i] * up.dot(coeffs[i]);
    }
    return back;
}

}  // namespace glint
