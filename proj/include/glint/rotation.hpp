// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>

namespace glint {

/// Unit-quaternion rotation, stored (w, x, y, z). The quaternion is kept
/// close to unit norm by the optimizers; matrix() normalizes defensively so a
/// raw (optimizer-perturbed) quaternion still yields a proper rotation.
struct Rotation {
    Eigen::Vector4d q{1.0, 0.0, 0.0, 0.0};

    static Rotation identity() { return {}; }

    static Rotation from_wxyz(double w, double x, double y, double z) {
        Rotation r;
        r.q << w, x, y, z;
        return r;
    }

    double norm() const { return q.norm(); }

    Rotation normalized() const {
        Rotation r;
        r.q = q / q.norm();
        return r;
    }

    /// Rotation matrix of the normalized quaternion.
    Eigen::Matrix3d matrix() const {
        const Eigen::Vector4d u = q / q.norm();
        const double w = u[0], x = u[1], y = u[2], z = u[3];
        Eigen::Matrix3d r;
        r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
             2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
             2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
        return r;
    }
};

/// dR/dq of the *unit* quaternion (w,x,y,z), one 3x3 slice per component.
inline std::array<Eigen::Matrix3d, 4> rotation_matrix_jacobian_unit(const Eigen::Vector4d& u) {
    const double w = u[0], x = u[1], y = u[2], z = u[3];
    std::array<Eigen::Matrix3d, 4> d;
    d[0] << 0, -z, y,
            z, 0, -x,
            -y, x, 0;
    d[1] << 0, y, z,
            y, -2 * x, -w,
            z, w, -2 * x;
    d[2] << -2 * y, x, w,
            x, 0, z,
            -w, z, -2 * y;
    d[3] << -2 * z, -w, x,
            w, -2 * z, y,
            x, y, 0;
    for (auto& m : d) m *= 2.0;
    return d;
}

/// Pulls dL/dR back to the raw (unnormalized) quaternion, chaining through
/// the normalization q̂ = q/|q|.
inline Eigen::Vector4d rotation_backward(const Rotation& rot, const Eigen::Matrix3d& grad_r) {
    const double n = rot.q.norm();
    const Eigen::Vector4d u = rot.q / n;
    const auto jac = rotation_matrix_jacobian_unit(u);
    Eigen::Vector4d grad_unit;
    for (int k = 0; k < 4; ++k) grad_unit[k] = (jac[k].array() * grad_r.array()).sum();
    // d(q/|q|)/dq = (I - u u^T) / |q|
    return (grad_unit - u * u.dot(grad_unit)) / n;
}

}  // namespace glint
