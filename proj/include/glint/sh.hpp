// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <vector>

namespace glint {

inline constexpr int kShMaxOrder = 3;

/// Real spherical-harmonic basis in the 3DGS coefficient order and sign
/// convention, evaluated at a unit direction. Fills (order+1)^2 values.
void sh_basis(const Eigen::Vector3d& dir, int order, double* out);

/// Per-component derivatives of sh_basis w.r.t. the (unit) direction.
/// out[i] is the 3-vector d b_i / d dir.
void sh_basis_dir_grad(const Eigen::Vector3d& dir, int order, Eigen::Vector3d* out);

/// Radiance from SH coefficients at a unit view direction: the conventional
/// +0.5 offset is added and the result clamped at zero (3DGS convention).
/// order must not exceed the stored order.
Eigen::Vector3d eval_sh(const std::vector<Eigen::Vector3d>& coeffs,
                        const Eigen::Vector3d& dir, int order);

struct ShBackward {
    std::vector<Eigen::Vector3d> d_coeffs;           // one RGB slot per coefficient
    Eigen::Vector3d d_dir = Eigen::Vector3d::Zero(); // w.r.t. the unit direction
};

/// Reverse pass of eval_sh for upstream dL/dcolor. Channels clamped at zero
/// in the forward pass receive no gradient.
ShBackward eval_sh_backward(const std::vector<Eigen::Vector3d>& coeffs,
                            const Eigen::Vector3d& dir, int order,
                            const Eigen::Vector3d& upstream);

}  // namespace glint
