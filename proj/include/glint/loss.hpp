// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "glint/image.hpp"

namespace glint {

/// Single-scale SSIM over an 11x11 Gaussian window (sigma 1.5, K1 = 0.01,
/// K2 = 0.03, dynamic range 1). The window is renormalized at image borders.
/// Returns a per-pixel, per-channel SSIM map the same shape as the inputs.
Image ssim_map(const Image& a, const Image& b);

/// Mean of ssim_map over pixels and channels.
double ssim(const Image& a, const Image& b);

/// d(mean SSIM)/dx for inputs (x, y): the analytic adjoint of ssim_map's
/// windowed statistics, scaled by `upstream` (dL/d mean-SSIM).
Image ssim_mean_backward(const Image& x, const Image& y, double upstream);

/// The 3DGS photometric objective (1-lambda) * L1 + lambda * (1 - SSIM) with
/// its gradient w.r.t. the rendered image.
struct PhotometricLoss {
    double value = 0.0;
    double l1 = 0.0;
    double dssim = 0.0;
    Image grad;  // dL/drendered
};

PhotometricLoss photometric_loss(const Image& rendered, const Image& target,
                                 double lambda_ssim);

/// Same objective without the gradient (cheaper; used for monitoring).
double photometric_loss_value(const Image& rendered, const Image& target, double lambda_ssim);

/// Per-pixel sampling density for error-driven densification:
/// [(1-lambda) * L1(u,v) + lambda * (1 - SSIM(u,v))]^2, channel-averaged.
/// Throws DimensionMismatch on shape disagreement.
Image loss_map(const Image& rendered, const Image& target, double lambda_ssim);

/// Multinomial draws (with replacement) of pixel coordinates proportional to
/// the loss map. An all-zero map falls back to uniform sampling. Deterministic
/// for a fixed seed. Returns (x, y) integer pixel pairs.
std::vector<std::pair<int, int>> sample_new_centers(const Image& loss, int count,
                                                    std::uint64_t seed);

}  // namespace glint
