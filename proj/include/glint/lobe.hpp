// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include "glint/primitives.hpp"

namespace glint {

/// View-dependent opacity: alpha * ((cos(clamp(theta/T, 0, pi)) + 1) / 2)^exp(beta).
/// Exactly zero for theta >= pi * T, so a lobe has no influence outside its
/// angular support.
double lobe_opacity(double theta, const OpacityLobe& lobe, double alpha);

struct LobeOpacityGrad {
    double value = 0.0;
    double d_theta = 0.0;
    double d_t = 0.0;
    double d_beta = 0.0;
    double d_alpha = 0.0;
};

/// Analytic partials of lobe_opacity; all theta/T partials vanish in the
/// clamped region theta/T >= pi.
LobeOpacityGrad lobe_opacity_grad(double theta, const OpacityLobe& lobe, double alpha);

/// Angle in [0, pi] between the direction from the Gaussian toward the camera
/// and the lobe's central orientation. Throws DegenerateDirection when the
/// camera sits on the Gaussian center.
double view_angle(const Eigen::Vector3d& position, const Eigen::Vector3d& camera_center,
                  const Eigen::Vector3d& orientation);

struct ViewAngleGrad {
    double theta = 0.0;
    Eigen::Vector3d d_position = Eigen::Vector3d::Zero();
    Eigen::Vector3d d_orientation = Eigen::Vector3d::Zero();
};

/// view_angle plus partials w.r.t. the Gaussian position and the (free,
/// non-normalized) orientation vector. Gradients are zeroed where arccos is
/// non-differentiable (|cos| -> 1).
ViewAngleGrad view_angle_grad(const Eigen::Vector3d& position,
                              const Eigen::Vector3d& camera_center,
                              const Eigen::Vector3d& orientation);

}  // namespace glint
