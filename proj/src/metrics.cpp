// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#include "glint/metrics.hpp"

#include <cmath>

namespace glint {

double psnr(const Image& a, const Image& b) {
    a.require_same_shape(b, "psnr: shape mismatch");
    double mse = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = clamp01(a.data[i]) - clamp01(b.data[i]);
        mse += d * d;
    }
    mse /= static_cast<double>(a.data.size());
    if (mse <= 0.0) return 100.0;
    return std::min(100.0, -10.0 * std::log10(mse));
}

double saturated_fraction(const Image& img) {
    if (img.height == 0 || img.width == 0) return 0.0;
    const double threshold = 254.5 / 255.0;
    int hit = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double mx = 0.0;
            for (int c = 0; c < img.channels; ++c) mx = std::max(mx, img.at(y, x, c));
            if (mx >= threshold) ++hit;
        }
    }
    return static_cast<double>(hit) / (static_cast<double>(img.height) * img.width);
}

}  // namespace glint
