// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#include "glint/loss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace glint {

namespace {

constexpr int kWindow = 11;
constexpr int kHalf = kWindow / 2;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

const std::array<double, kWindow>& window_taps() {
    static const std::array<double, kWindow> taps = [] {
        std::array<double, kWindow> t{};
        double sum = 0.0;
        for (int i = 0; i < kWindow; ++i) {
            const double d = i - kHalf;
            t[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
            sum += t[static_cast<std::size_t>(i)];
        }
        for (double& v : t) v /= sum;
        return t;
    }();
    return taps;
}

/// Sum of in-bounds taps at each position along an axis of length n.
std::vector<double> axis_tap_sums(int n) {
    const auto& k = window_taps();
    std::vector<double> z(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = -kHalf; j <= kHalf; ++j)
            if (i + j >= 0 && i + j < n) s += k[static_cast<std::size_t>(j + kHalf)];
        z[static_cast<std::size_t>(i)] = s;
    }
    return z;
}

Image conv_axis(const Image& src, bool horizontal, const std::vector<double>* norm) {
    const auto& k = window_taps();
    Image dst(src.height, src.width, src.channels, 0.0);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            for (int c = 0; c < src.channels; ++c) {
                double s = 0.0;
                for (int j = -kHalf; j <= kHalf; ++j) {
                    const int yy = horizontal ? y : y + j;
                    const int xx = horizontal ? x + j : x;
                    if (xx < 0 || xx >= src.width || yy < 0 || yy >= src.height) continue;
                    s += k[static_cast<std::size_t>(j + kHalf)] * src.at(yy, xx, c);
                }
                if (norm) s /= (*norm)[static_cast<std::size_t>(horizontal ? x : y)];
                dst.at(y, x, c) = s;
            }
        }
    }
    return dst;
}

/// Border-renormalized Gaussian-window mean.
Image blur(const Image& src) {
    const std::vector<double> zx = axis_tap_sums(src.width);
    const std::vector<double> zy = axis_tap_sums(src.height);
    return conv_axis(conv_axis(src, true, &zx), false, &zy);
}

/// Adjoint of blur: divide by the per-pixel normalizer, then correlate with
/// the (symmetric) unnormalized kernel.
Image blur_adjoint(const Image& src) {
    const std::vector<double> zx = axis_tap_sums(src.width);
    const std::vector<double> zy = axis_tap_sums(src.height);
    Image scaled = src;
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x)
            for (int c = 0; c < src.channels; ++c)
                scaled.at(y, x, c) /= zx[static_cast<std::size_t>(x)] * zy[static_cast<std::size_t>(y)];
    return conv_axis(conv_axis(scaled, true, nullptr), false, nullptr);
}

Image elementwise_product(const Image& a, const Image& b) {
    Image out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] *= b.data[i];
    return out;
}

struct SsimStats {
    Image mu_x, mu_y, sx2, sy2, sxy;
};

SsimStats ssim_stats(const Image& x, const Image& y) {
    SsimStats s;
    s.mu_x = blur(x);
    s.mu_y = blur(y);
    s.sx2 = blur(elementwise_product(x, x));
    s.sy2 = blur(elementwise_product(y, y));
    s.sxy = blur(elementwise_product(x, y));
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        s.sx2.data[i] -= s.mu_x.data[i] * s.mu_x.data[i];
        s.sy2.data[i] -= s.mu_y.data[i] * s.mu_y.data[i];
        s.sxy.data[i] -= s.mu_x.data[i] * s.mu_y.data[i];
    }
    return s;
}

}  // namespace

Image ssim_map(const Image& a, const Image& b) {
    a.require_same_shape(b, "ssim_map: shape mismatch");
    const SsimStats st = ssim_stats(a, b);
    Image out(a.height, a.width, a.channels, 0.0);
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double a1 = 2.0 * st.mu_x.data[i] * st.mu_y.data[i] + kC1;
        const double a2 = 2.0 * st.sxy.data[i] + kC2;
        const double b1 = st.mu_x.data[i] * st.mu_x.data[i] +
                          st.mu_y.data[i] * st.mu_y.data[i] + kC1;
        const double b2 = st.sx2.data[i] + st.sy2.data[i] + kC2;
        out.data[i] = (a1 * a2) / (b1 * b2);
    }
    return out;
}

double ssim(const Image& a, const Image& b) {
    const Image map = ssim_map(a, b);
    double s = 0.0;
    for (double v : map.data) s += v;
    return map.data.empty() ? 1.0 : s / static_cast<double>(map.data.size());
}

Image ssim_mean_backward(const Image& x, const Image& y, double upstream) {
    x.require_same_shape(y, "ssim_mean_backward: shape mismatch");
    const SsimStats st = ssim_stats(x, y);
    const double u = upstream / static_cast<double>(x.data.size());

    Image d_mu(x.height, x.width, x.channels, 0.0);
    Image d_sx2(x.height, x.width, x.channels, 0.0);
    Image d_sxy(x.height, x.width, x.channels, 0.0);
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        const double mx = st.mu_x.data[i], my = st.mu_y.data[i];
        const double a1 = 2.0 * mx * my + kC1;
        const double a2 = 2.0 * st.sxy.data[i] + kC2;
        const double b1 = mx * mx + my * my + kC1;
        const double b2 = st.sx2.data[i] + st.sy2.data[i] + kC2;
        const double den = b1 * b2;
        const double s = (a1 * a2) / den;
        d_mu.data[i] = u * (2.0 * my * a2 - s * 2.0 * mx * b2) / den;
        d_sx2.data[i] = u * (-s * b1 / den);
        d_sxy.data[i] = u * (2.0 * a1 / den);
    }

    const Image t_mu = blur_adjoint(d_mu);
    const Image t_s = blur_adjoint(d_sx2);
    const Image t_smu = blur_adjoint(elementwise_product(d_sx2, st.mu_x));
    const Image t_xy = blur_adjoint(d_sxy);
    const Image t_xymu = blur_adjoint(elementwise_product(d_sxy, st.mu_y));

    Image grad(x.height, x.width, x.channels, 0.0);
    for (std::size_t i = 0; i < x.data.size(); ++i)
        grad.data[i] = t_mu.data[i] + 2.0 * x.data[i] * t_s.data[i] - 2.0 * t_smu.data[i] +
                       y.data[i] * t_xy.data[i] - t_xymu.data[i];
    return grad;
}

PhotometricLoss photometric_loss(const Image& rendered, const Image& target,
                                 double lambda_ssim) {
    rendered.require_same_shape(target, "photometric_loss: shape mismatch");
    PhotometricLoss out;
    const double n = static_cast<double>(rendered.data.size());

    double l1 = 0.0;
    out.grad = Image(rendered.height, rendered.width, rendered.channels, 0.0);
    for (std::size_t i = 0; i < rendered.data.size(); ++i) {
        const double diff = rendered.data[i] - target.data[i];
        l1 += std::abs(diff);
        out.grad.data[i] = (1.0 - lambda_ssim) * (diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0)) / n;
    }
    out.l1 = l1 / n;

    const double s = ssim(rendered, target);
    out.dssim = 1.0 - s;
    if (lambda_ssim != 0.0) {
        const Image sg = ssim_mean_backward(rendered, target, -lambda_ssim);
        for (std::size_t i = 0; i < rendered.data.size(); ++i) out.grad.data[i] += sg.data[i];
    }
    out.value = (1.0 - lambda_ssim) * out.l1 + lambda_ssim * out.dssim;
    return out;
}

double photometric_loss_value(const Image& rendered, const Image& target, double lambda_ssim) {
    rendered.require_same_shape(target, "photometric_loss: shape mismatch");
    return (1.0 - lambda_ssim) * mean_abs_diff(rendered, target) +
           lambda_ssim * (1.0 - ssim(rendered, target));
}

Image loss_map(const Image& rendered, const Image& target, double lambda_ssim) {
    rendered.require_same_shape(target, "loss_map: shape mismatch");
    const Image smap = ssim_map(rendered, target);
    Image out(rendered.height, rendered.width, 1, 0.0);
    const int ch = rendered.channels;
    for (int y = 0; y < rendered.height; ++y) {
        for (int x = 0; x < rendered.width; ++x) {
            double l1 = 0.0, sim = 0.0;
            for (int c = 0; c < ch; ++c) {
                l1 += std::abs(rendered.at(y, x, c) - target.at(y, x, c));
                sim += smap.at(y, x, c);
            }
            l1 /= ch;
            sim /= ch;
            const double combined = (1.0 - lambda_ssim) * l1 + lambda_ssim * (1.0 - sim);
            out.at(y, x) = combined * combined;
        }
    }
    return out;
}

std::vector<std::pair<int, int>> sample_new_centers(const Image& loss, int count,
                                                    std::uint64_t seed) {
    const std::size_t n = static_cast<std::size_t>(loss.height) * loss.width;
    std::vector<double> cdf(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += loss.data[i * static_cast<std::size_t>(loss.channels)];
        cdf[i] = total;
    }

    std::mt19937_64 rng(seed);
    auto uniform01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k) {
        std::size_t idx;
        if (total > 0.0) {
            const double r = uniform01() * total;
            idx = static_cast<std::size_t>(
                std::upper_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
            if (idx >= n) idx = n - 1;
        } else {
            idx = std::min(n - 1, static_cast<std::size_t>(uniform01() * static_cast<double>(n)));
        }
        out.emplace_back(static_cast<int>(idx % static_cast<std::size_t>(loss.width)),
                         static_cast<int>(idx / static_cast<std::size_t>(loss.width)));
    }
    return out;
}

}  // namespace glint
