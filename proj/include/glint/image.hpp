// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

#include "glint/errors.hpp"

namespace glint {

/// Dense row-major image, double precision. channels is usually 1 (depth,
/// transmittance, loss maps) or 3 (RGB).
struct Image {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<double> data;

    Image() = default;
    Image(int h, int w, int c, double fill = 0.0)
        : height(h), width(w), channels(c),
          data(static_cast<std::size_t>(h) * w * c, fill) {}

    static Image constant_rgb(int h, int w, const Eigen::Vector3d& rgb) {
        Image img(h, w, 3);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < 3; ++c) img.at(y, x, c) = rgb[c];
        return img;
    }

    double& at(int y, int x, int c = 0) {
        assert(y >= 0 && y < height && x >= 0 && x < width && c >= 0 && c < channels);
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double at(int y, int x, int c = 0) const {
        assert(y >= 0 && y < height && x >= 0 && x < width && c >= 0 && c < channels);
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    Eigen::Vector3d rgb_at(int y, int x) const {
        assert(channels == 3);
        return {at(y, x, 0), at(y, x, 1), at(y, x, 2)};
    }

    std::size_t size() const { return data.size(); }
    bool same_shape(const Image& other) const {
        return height == other.height && width == other.width && channels == other.channels;
    }

    void require_same_shape(const Image& other, const char* what) const {
        if (!same_shape(other)) throw DimensionMismatch(what);
    }

    bool all_finite() const {
        return std::all_of(data.begin(), data.end(),
                           [](double v) { return std::isfinite(v); });
    }
};

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

inline Image clamped01(const Image& img) {
    Image out = img;
    for (double& v : out.data) v = clamp01(v);
    return out;
}

/// Round to the nearest 8-bit code value and back to [0,1]. Matches what an
/// 8-bit PNG round trip does to an in-range image.
inline Image quantize8(const Image& img) {
    Image out = img;
    for (double& v : out.data) v = std::round(clamp01(v) * 255.0) / 255.0;
    return out;
}

inline double mean_abs_diff(const Image& a, const Image& b) {
    a.require_same_shape(b, "mean_abs_diff: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) s += std::abs(a.data[i] - b.data[i]);
    return a.data.empty() ? 0.0 : s / static_cast<double>(a.data.size());
}

}  // namespace glint
