// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <vector>

#include "glint/camera.hpp"
#include "glint/image.hpp"
#include "glint/primitives.hpp"

namespace glint {

/// Forward-render products shared across the pipeline. median_depth holds the
/// view depth of the first primitive at which accumulated transmittance drops
/// below 0.5 (0 where it never does).
struct RenderOutput {
    Image rgb;                  // H x W x 3
    Image median_depth;         // H x W
    Image final_transmittance;  // H x W
};

struct Gaussian3DGradients {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector4d rotation = Eigen::Vector4d::Zero();  // w.r.t. raw quaternion
    Eigen::Vector3d log_scales = Eigen::Vector3d::Zero();
    double opacity_logit = 0.0;
    std::vector<Eigen::Vector3d> sh;  // same cardinality as the primitive's sh
    Eigen::Vector3d lobe_orientation = Eigen::Vector3d::Zero();
    double lobe_t = 0.0;
    double lobe_beta = 0.0;
};

/// Same cardinality and ordering as the rendered primitive list.
struct RenderGradients {
    std::vector<Gaussian3DGradients> primitives;
};

struct Gaussian2DGradients {
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    Eigen::Vector2d log_scales = Eigen::Vector2d::Zero();
    double rotation_angle = 0.0;
    double opacity_logit = 0.0;
    Eigen::Vector3d color = Eigen::Vector3d::Zero();
};

/// Differentiable front-to-back compositing of (optionally lobed) world-space
/// Gaussians. Primitives are globally sorted by mean view depth; footprints
/// use a 3-sigma cutoff radius with exact per-pixel evaluation, and
/// contributions below 1/255 are skipped in forward and backward alike.
/// sh_order_override < 0 renders each primitive at its stored SH order;
/// otherwise evaluation is truncated to min(stored, override).
RenderOutput render_3d(const std::vector<EnhancedGaussian>& gaussians, const Camera& camera,
                       const Image& background, int sh_order_override = -1, int workers = 1);

RenderOutput render_3d(const std::vector<EnhancedGaussian>& gaussians, const Camera& camera,
                       const Eigen::Vector3d& background_rgb, int sh_order_override = -1,
                       int workers = 1);

/// Analytic reverse pass of render_3d for an upstream dL/drgb image. Covers
/// every learnable field: position, rotation, log_scales, opacity_logit, SH
/// coefficients, and lobe orientation / T / beta where present.
RenderGradients backward_3d(const std::vector<EnhancedGaussian>& gaussians, const Camera& camera,
                            const Image& background, const Image& upstream,
                            int sh_order_override = -1, int workers = 1);

/// Composites image-space Gaussians (sorted by their depth field) over a
/// fixed background image.
Image render_2d(const std::vector<Gaussian2D>& gaussians, const Image& background);

/// Reverse pass of render_2d; depth is not differentiated (it is refreshed by
/// nearest-neighbor depth-map sampling during training).
std::vector<Gaussian2DGradients> backward_2d(const std::vector<Gaussian2D>& gaussians,
                                             const Image& background, const Image& upstream);

}  // namespace glint
