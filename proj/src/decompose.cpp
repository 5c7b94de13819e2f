// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#include "glint/decompose.hpp"

#include <algorithm>

#include "glint/color.hpp"
#include "glint/renderer.hpp"

namespace glint {

Decomposition decompose(const std::vector<Gaussian3D>& original,
                        const std::vector<EnhancedGaussian>& added, const Camera& camera,
                        const Eigen::Vector3d& background_rgb, int workers) {
    std::vector<EnhancedGaussian> plain;
    plain.reserve(original.size());
    for (const Gaussian3D& g : original) plain.push_back({g, std::nullopt});

    std::vector<EnhancedGaussian> full = plain;
    full.insert(full.end(), added.begin(), added.end());

    const Image sh0 =
        srgb_to_linear(render_3d(plain, camera, background_rgb, /*sh_order=*/0, workers).rgb);
    const Image aug =
        srgb_to_linear(render_3d(full, camera, background_rgb, /*sh_order=*/-1, workers).rgb);

    Decomposition out;
    out.diffuse = aug;
    out.specular = aug;
    for (std::size_t i = 0; i < aug.data.size(); ++i) {
        out.diffuse.data[i] = std::min(sh0.data[i], aug.data[i]);
        out.specular.data[i] = aug.data[i] - out.diffuse.data[i];
    }
    return out;
}

}  // namespace glint
