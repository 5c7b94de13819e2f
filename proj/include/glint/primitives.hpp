// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "glint/rotation.hpp"

namespace glint {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double logit(double p) {
    p = std::clamp(p, 1e-12, 1.0 - 1e-12);
    return std::log(p / (1.0 - p));
}

/// Decoded opacity, clamped to the open interval so compositing never sees an
/// exact 0 or 1 even at saturated logits.
inline double decode_opacity(double opacity_logit) {
    return std::clamp(sigmoid(opacity_logit), 1e-12, 1.0 - 1e-12);
}

inline int sh_coeff_count(int order) { return (order + 1) * (order + 1); }

/// World-space anisotropic Gaussian. Scales live in the log domain and
/// opacity in the logit domain so positivity/range hold unconditionally.
/// sh holds (order+1)^2 RGB coefficients; index 0 is the diffuse (DC) term.
struct Gaussian3D {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Rotation rotation;
    Eigen::Vector3d log_scales = Eigen::Vector3d::Zero();
    double opacity_logit = 0.0;
    std::vector<Eigen::Vector3d> sh{Eigen::Vector3d::Zero()};

    Eigen::Vector3d scales() const { return log_scales.array().exp(); }
    double opacity() const { return decode_opacity(opacity_logit); }
    int sh_order() const {
        const int n = static_cast<int>(sh.size());
        int order = 0;
        while (sh_coeff_count(order + 1) <= n) ++order;
        return order;
    }
    void set_sh_order(int order) { sh.resize(sh_coeff_count(order), Eigen::Vector3d::Zero()); }
};

/// View-dependent opacity extension: 5 learnable parameters.
/// t_span is the angular-span fraction (opacity hits zero at theta = pi *
/// t_span); sharpness exponent is exp(beta). The optimizer renormalizes
/// orientation and clamps t_span after every step.
struct OpacityLobe {
    Eigen::Vector3d orientation = Eigen::Vector3d::UnitZ();
    double t_span = 1.0;
    double beta = 0.0;

    static constexpr double kTMin = 0.01;
    static constexpr double kTMax = 1.0;

    void project_constraints() {
        const double n = orientation.norm();
        if (n > 1e-12) orientation /= n;
        t_span = std::clamp(t_span, kTMin, kTMax);
    }
};

struct EnhancedGaussian {
    Gaussian3D base;
    std::optional<OpacityLobe> lobe;
};

/// Image-space primitive: center in pixels, log scales in pixels,
/// rotation_angle measured from the image y-axis, color raw (clamped to
/// [0,1] on decode), depth in scene units for sort order only.
struct Gaussian2D {
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    Eigen::Vector2d log_scales = Eigen::Vector2d::Zero();
    double rotation_angle = 0.0;
    double opacity_logit = 0.0;
    Eigen::Vector3d color = Eigen::Vector3d::Zero();
    double depth = 0.0;

    Eigen::Vector2d scales() const { return log_scales.array().exp(); }
    double opacity() const { return decode_opacity(opacity_logit); }
    Eigen::Vector3d decoded_color() const {
        return color.cwiseMax(0.0).cwiseMin(1.0);
    }

    /// 2x2 pixel covariance. The primary axis (scale s0) sits at
    /// rotation_angle from the image y-axis.
    Eigen::Matrix2d covariance() const {
        const Eigen::Vector2d s = scales();
        const double sr = std::sin(rotation_angle), cr = std::cos(rotation_angle);
        const Eigen::Vector2d a0(sr, cr);   // primary axis
        const Eigen::Vector2d a1(cr, -sr);  // secondary axis
        return s[0] * s[0] * a0 * a0.transpose() + s[1] * s[1] * a1 * a1.transpose();
    }
};

}  // namespace glint
