// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "glint/image.hpp"

namespace glint {

/// -10 log10(MSE) over [0,1]-clamped inputs, capped at 100 dB so identical
/// images compare equal. Throws DimensionMismatch on shape disagreement.
double psnr(const Image& a, const Image& b);

/// Fraction of pixels whose maximum channel reaches the top 8-bit code value
/// (reported alongside metrics; overexposure is surfaced, not corrected).
double saturated_fraction(const Image& img);

}  // namespace glint
