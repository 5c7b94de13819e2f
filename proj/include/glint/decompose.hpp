// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "glint/camera.hpp"
#include "glint/image.hpp"
#include "glint/primitives.hpp"

namespace glint {

struct Decomposition {
    Image diffuse;   // linear radiance
    Image specular;  // linear radiance, >= 0, diffuse + specular == augmented
};

/// Diffuse/specular split of an augmented field in linear radiance:
/// I_sh0 renders the original Gaussians at SH order 0 only, I_aug renders the
/// full augmented scene; diffuse = min(I_sh0, I_aug), specular = I_aug - diffuse.
Decomposition decompose(const std::vector<Gaussian3D>& original,
                        const std::vector<EnhancedGaussian>& added, const Camera& camera,
                        const Eigen::Vector3d& background_rgb, int workers = 1);

}  // namespace glint
