// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#include "glint/lobe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "glint/errors.hpp"

namespace glint {

namespace {
constexpr double kPi = std::numbers::pi;
}

double lobe_opacity(double theta, const OpacityLobe& lobe, double alpha) {
    const double u = std::max(0.0, theta / lobe.t_span);
    if (u >= kPi) return 0.0;
    const double base = (std::cos(u) + 1.0) * 0.5;
    return alpha * std::pow(base, std::exp(lobe.beta));
}

LobeOpacityGrad lobe_opacity_grad(double theta, const OpacityLobe& lobe, double alpha) {
    LobeOpacityGrad g;
    const double u = std::max(0.0, theta / lobe.t_span);
    if (u >= kPi) return g;  // flat region, value and all partials zero

    const double p = std::exp(lobe.beta);
    const double base = (std::cos(u) + 1.0) * 0.5;
    const double pow_p = std::pow(base, p);
    g.value = alpha * pow_p;
    g.d_alpha = pow_p;
    // d/du base = -sin(u)/2; near u = pi the p-1 power can blow up for p < 1,
    // so cut off where base underflows.
    if (base > 1e-300) {
        const double d_base = alpha * p * std::pow(base, p - 1.0) * (-0.5 * std::sin(u));
        g.d_theta = d_base / lobe.t_span;
        g.d_t = d_base * (-theta / (lobe.t_span * lobe.t_span));
        g.d_beta = g.value * std::log(base) * p;
    }
    return g;
}

double view_angle(const Eigen::Vector3d& position, const Eigen::Vector3d& camera_center,
                  const Eigen::Vector3d& orientation) {
    const Eigen::Vector3d v = camera_center - position;
    const double n = v.norm();
    if (n < 1e-12) throw DegenerateDirection("view_angle: camera coincides with Gaussian center");
    const double c = std::clamp(v.dot(orientation) / n, -1.0, 1.0);
    return std::acos(c);
}

ViewAngleGrad view_angle_grad(const Eigen::Vector3d& position,
                              const Eigen::Vector3d& camera_center,
                              const Eigen::Vector3d& orientation) {
    const Eigen::Vector3d v = camera_center - position;
    const double n = v.norm();
    if (n < 1e-12) throw DegenerateDirection("view_angle_grad: camera coincides with Gaussian center");
    const Eigen::Vector3d vhat = v / n;
    const double c = std::clamp(vhat.dot(orientation), -1.0, 1.0);

    ViewAngleGrad g;
    g.theta = std::acos(c);
    const double s2 = 1.0 - c * c;
    if (s2 < 1e-12) return g;  // arccos kink at 0 / pi
    const double dacos = -1.0 / std::sqrt(s2);
    g.d_orientation = dacos * vhat;
    // dvhat/dposition = -(I - vhat vhat^T)/n
    g.d_position = dacos * (-(orientation - vhat * c) / n);
    return g;
}

}  // namespace glint
