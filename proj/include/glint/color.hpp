// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "glint/image.hpp"

namespace glint {

/// Standard sRGB electro-optical transfer function (sRGB in [0,1] -> linear
/// radiance) and its inverse; mutually inverse to well under 1e-6.
inline double srgb_to_linear_value(double s) {
    s = clamp01(s);
    return s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
}

inline double linear_to_srgb_value(double l) {
    l = clamp01(l);
    return l <= 0.0031308 ? 12.92 * l : 1.055 * std::pow(l, 1.0 / 2.4) - 0.055;
}

inline Image srgb_to_linear(const Image& img) {
    Image out = img;
    for (double& v : out.data) v = srgb_to_linear_value(v);
    return out;
}

inline Image linear_to_srgb(const Image& img) {
    Image out = img;
    for (double& v : out.data) v = linear_to_srgb_value(v);
    return out;
}

}  // namespace glint
