// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#include "glint/renderer.hpp"

#include <algorithm>
#include <cmath>

#include "glint/lobe.hpp"
#include "glint/parallel.hpp"
#include "glint/sh.hpp"

namespace glint {

namespace {

constexpr double kMinContribution = 1.0 / 255.0;
constexpr int kReduceBlocks = 32;

struct Splat3 {
    int index = -1;  // position in the input list
    Eigen::Vector3d t = Eigen::Vector3d::Zero();
    Eigen::Vector2d mu = Eigen::Vector2d::Zero();
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d inv = Eigen::Matrix2d::Zero();
    Eigen::Vector3d color = Eigen::Vector3d::Zero();
    Eigen::Vector3d view_dir = Eigen::Vector3d::Zero();  // camera -> Gaussian, unit
    double view_dist = 0.0;
    double alpha = 0.0;      // plain decoded opacity
    double alpha_hat = 0.0;  // lobe-modulated
    double theta = 0.0;
    int sh_order = 0;
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    // cached factors for the backward chain
    Eigen::Matrix<double, 2, 3> jac = Eigen::Matrix<double, 2, 3>::Zero();
    Eigen::Matrix3d body = Eigen::Matrix3d::Zero();  // W R S
};

double max_eigenvalue_2x2(const Eigen::Matrix2d& m) {
    const double mid = 0.5 * (m(0, 0) + m(1, 1));
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::sqrt(std::max(0.0, mid * mid - det));
    return mid + disc;
}

std::vector<Splat3> prepare_splats_3d(const std::vector<EnhancedGaussian>& gaussians,
                                      const Camera& camera, int sh_order_override) {
    const Eigen::Vector3d cam_center = camera.center();
    const Eigen::Matrix3d w_rot = camera.rot();

    std::vector<Splat3> splats;
    splats.reserve(gaussians.size());
    for (int i = 0; i < static_cast<int>(gaussians.size()); ++i) {
        const EnhancedGaussian& g = gaussians[i];
        Splat3 s;
        s.index = i;
        s.t = camera.to_view(g.base.position);
        if (!(s.t.z() > camera.near && s.t.z() < camera.far)) continue;

        s.jac = projection_jacobian(camera, s.t);
        s.body = w_rot * g.base.rotation.matrix() * g.base.scales().asDiagonal();
        const Eigen::Matrix<double, 2, 3> m = s.jac * s.body;
        s.cov = m * m.transpose();
        const double off = 0.5 * (s.cov(0, 1) + s.cov(1, 0));
        s.cov(0, 1) = s.cov(1, 0) = off;
        const double det = s.cov(0, 0) * s.cov(1, 1) - off * off;
        if (!(det > 1e-300)) continue;  // numerically rank-deficient footprint
        s.inv << s.cov(1, 1), -off, -off, s.cov(0, 0);
        s.inv /= det;

        const double radius = 3.0 * std::sqrt(max_eigenvalue_2x2(s.cov));
        s.mu = camera.view_to_pixel(s.t);
        if (!frustum_cull(g.base.position, camera, radius)) continue;
        s.x0 = std::max(0, static_cast<int>(std::floor(s.mu.x() - radius)));
        s.x1 = std::min(camera.width, static_cast<int>(std::ceil(s.mu.x() + radius)));
        s.y0 = std::max(0, static_cast<int>(std::floor(s.mu.y() - radius)));
        s.y1 = std::min(camera.height, static_cast<int>(std::ceil(s.mu.y() + radius)));
        if (s.x0 >= s.x1 || s.y0 >= s.y1) continue;

        const Eigen::Vector3d w = g.base.position - cam_center;
        s.view_dist = w.norm();
        if (s.view_dist < 1e-12) continue;
        s.view_dir = w / s.view_dist;
        s.sh_order = g.base.sh_order();
        if (sh_order_override >= 0) s.sh_order = std::min(s.sh_order, sh_order_override);
        s.color = eval_sh(g.base.sh, s.view_dir, s.sh_order);

        s.alpha = g.base.opacity();
        if (g.lobe) {
            s.theta = view_angle(g.base.position, cam_center, g.lobe->orientation);
            s.alpha_hat = lobe_opacity(s.theta, *g.lobe, s.alpha);
        } else {
            s.alpha_hat = s.alpha;
        }
        if (s.alpha_hat <= 0.0) continue;
        splats.push_back(std::move(s));
    }
    std::stable_sort(splats.begin(), splats.end(), [](const Splat3& a, const Splat3& b) {
        if (a.t.z() != b.t.z()) return a.t.z() < b.t.z();
        return a.index < b.index;
    });
    return splats;
}

template <typename SplatT>
std::vector<const SplatT*> row_splats(const std::vector<SplatT>& splats, int y) {
    std::vector<const SplatT*> out;
    for (const SplatT& s : splats)
        if (y >= s.y0 && y < s.y1) out.push_back(&s);
    return out;
}

}  // namespace

RenderOutput render_3d(const std::vector<EnhancedGaussian>& gaussians, const Camera& camera,
                       const Image& background, int sh_order_override, int workers) {
    if (background.height != camera.height || background.width != camera.width ||
        background.channels != 3)
        throw DimensionMismatch("render_3d: background does not match camera image size");

    RenderOutput out;
    out.rgb = background;  // overwritten per pixel
    out.median_depth = Image(camera.height, camera.width, 1, 0.0);
    out.final_transmittance = Image(camera.height, camera.width, 1, 1.0);

    const std::vector<Splat3> splats = prepare_splats_3d(gaussians, camera, sh_order_override);

    parallel_for(0, camera.height, workers, [&](int y) {
        const auto row = row_splats(splats, y);
        for (int x = 0; x < camera.width; ++x) {
            double transmittance = 1.0;
            double median = 0.0;
            Eigen::Vector3d rgb = Eigen::Vector3d::Zero();
            const Eigen::Vector2d p(x + 0.5, y + 0.5);
            for (const Splat3* s : row) {
                if (x < s->x0 || x >= s->x1) continue;
                const Eigen::Vector2d d = p - s->mu;
                const double maha = d.dot(s->inv * d);
                const double footprint = std::exp(-0.5 * maha);
                const double a = s->alpha_hat * footprint;
                if (a < kMinContribution) continue;
                rgb += s->color * (a * transmittance);
                const double next = transmittance * (1.0 - a);
                if (median == 0.0 && next < 0.5) median = s->t.z();
                transmittance = next;
            }
            rgb += transmittance * background.rgb_at(y, x);
            for (int c = 0; c < 3; ++c) out.rgb.at(y, x, c) = rgb[c];
            out.median_depth.at(y, x) = median;
            out.final_transmittance.at(y, x) = transmittance;
        }
    });
    return out;
}

RenderOutput render_3d(const std::vector<EnhancedGaussian>& gaussians, const Camera& camera,
                       const Eigen::Vector3d& background_rgb, int sh_order_override,
                       int workers) {
    return render_3d(gaussians, camera,
                     Image::constant_rgb(camera.height, camera.width, background_rgb),
                     sh_order_override, workers);
}

namespace {

/// Per-splat gradients accumulated over pixels; the parameter chain is applied
/// once per splat afterwards.
struct SplatAcc {
    Eigen::Vector3d color = Eigen::Vector3d::Zero();
    double alpha_hat = 0.0;
    Eigen::Vector2d mu = Eigen::Vector2d::Zero();
    Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();

    void add(const SplatAcc& o) {
        color += o.color;
        alpha_hat += o.alpha_hat;
        mu += o.mu;
        sigma += o.sigma;
    }
};

struct PixelContribution {
    int splat = 0;  // index into the sorted splat vector
    double a = 0.0;
    double transmittance = 0.0;  // before this primitive
    double footprint = 0.0;
    Eigen::Vector2d d = Eigen::Vector2d::Zero();
};

template <typename SplatT>
void accumulate_pixel_gradients(const std::vector<SplatT>& splats, const Image& background,
                                const Image& upstream, int width, int height, int workers,
                                std::vector<SplatAcc>& acc_out) {
    std::vector<std::vector<SplatAcc>> block_acc(
        kReduceBlocks, std::vector<SplatAcc>(splats.size()));

    parallel_blocks(0, height, kReduceBlocks, workers, [&](int block, int ylo, int yhi) {
        auto& acc = block_acc[static_cast<std::size_t>(block)];
        std::vector<PixelContribution> contribs;
        std::vector<const SplatT*> row;
        for (int y = ylo; y < yhi; ++y) {
            row.clear();
            for (const SplatT& s : splats)
                if (y >= s.y0 && y < s.y1) row.push_back(&s);
            for (int x = 0; x < width; ++x) {
                contribs.clear();
                double transmittance = 1.0;
                const Eigen::Vector2d p(x + 0.5, y + 0.5);
                for (const SplatT* s : row) {
                    if (x < s->x0 || x >= s->x1) continue;
                    const Eigen::Vector2d d = p - s->mu;
                    const double maha = d.dot(s->inv * d);
                    const double footprint = std::exp(-0.5 * maha);
                    const double a = s->alpha_hat * footprint;
                    if (a < kMinContribution) continue;
                    contribs.push_back({static_cast<int>(s - splats.data()), a, transmittance,
                                        footprint, d});
                    transmittance *= (1.0 - a);
                }
                const Eigen::Vector3d up = upstream.rgb_at(y, x);
                // Suffix color: everything composited behind the current
                // primitive, background included.
                Eigen::Vector3d suffix = transmittance * background.rgb_at(y, x);
                for (int k = static_cast<int>(contribs.size()) - 1; k >= 0; --k) {
                    const PixelContribution& pc = contribs[static_cast<std::size_t>(k)];
                    const SplatT& s = splats[static_cast<std::size_t>(pc.splat)];
                    SplatAcc& sa = acc[static_cast<std::size_t>(pc.splat)];
                    const double weight = pc.a * pc.transmittance;
                    sa.color += up * weight;
                    const double dl_da =
                        up.dot(s.color * pc.transmittance - suffix / (1.0 - pc.a));
                    sa.alpha_hat += dl_da * pc.footprint;
                    const double dl_dg = dl_da * s.alpha_hat;
                    const Eigen::Vector2d invd = s.inv * pc.d;
                    sa.mu += dl_dg * pc.footprint * invd;
                    sa.sigma += (0.5 * dl_dg * pc.footprint) * (invd * invd.transpose());
                    suffix += s.color * weight;
                }
            }
        }
    });

    acc_out.assign(splats.size(), SplatAcc());
    for (const auto& block : block_acc)
        for (std::size_t i = 0; i < splats.size(); ++i) acc_out[i].add(block[i]);
}

}  // namespace

RenderGradients backward_3d(const std::vector<EnhancedGaussian>& gaussians, const Camera& camera,
                            const Image& background, const Image& upstream,
                            int sh_order_override, int workers) {
    if (background.height != camera.height || background.width != camera.width ||
        background.channels != 3)
        throw DimensionMismatch("backward_3d: background does not match camera image size");
    if (upstream.height != camera.height || upstream.width != camera.width ||
        upstream.channels != 3)
        throw DimensionMismatch("backward_3d: upstream does not match camera image size");

    RenderGradients grads;
    grads.primitives.resize(gaussians.size());
    for (std::size_t i = 0; i < gaussians.size(); ++i)
        grads.primitives[i].sh.assign(gaussians[i].base.sh.size(), Eigen::Vector3d::Zero());

    const std::vector<Splat3> splats = prepare_splats_3d(gaussians, camera, sh_order_override);
    if (splats.empty()) return grads;

    std::vector<SplatAcc> acc;
    accumulate_pixel_gradients(splats, background, upstream, camera.width, camera.height,
                               workers, acc);

    const Eigen::Vector3d cam_center = camera.center();
    const Eigen::Matrix3d w_rot = camera.rot();

    parallel_for(0, static_cast<int>(splats.size()), workers, [&](int si) {
        const Splat3& s = splats[static_cast<std::size_t>(si)];
        const SplatAcc& a = acc[static_cast<std::size_t>(si)];
        const EnhancedGaussian& g = gaussians[static_cast<std::size_t>(s.index)];
        Gaussian3DGradients& out = grads.primitives[static_cast<std::size_t>(s.index)];

        Eigen::Vector3d d_position = Eigen::Vector3d::Zero();

        // --- covariance chain: Sigma -> (J, W R S) -> (rotation, scales, t)
        const Eigen::Matrix<double, 2, 3> m = s.jac * s.body;
        const Eigen::Matrix<double, 2, 3> d_m = 2.0 * a.sigma * m;
        const Eigen::Matrix<double, 2, 3> d_jac = d_m * s.body.transpose();
        const Eigen::Matrix3d d_body = s.jac.transpose() * d_m;

        Eigen::Vector3d d_t = s.jac.transpose() * a.mu;  // projection of the mean
        const double iz = 1.0 / s.t.z(), iz2 = iz * iz, iz3 = iz2 * iz;
        d_t.x() += d_jac(0, 2) * (-camera.fx * iz2);
        d_t.y() += d_jac(1, 2) * (-camera.fy * iz2);
        d_t.z() += d_jac(0, 0) * (-camera.fx * iz2) + d_jac(1, 1) * (-camera.fy * iz2) +
                   d_jac(0, 2) * (2.0 * camera.fx * s.t.x() * iz3) +
                   d_jac(1, 2) * (2.0 * camera.fy * s.t.y() * iz3);
        d_position += w_rot.transpose() * d_t;

        const Eigen::Matrix3d d_rs = w_rot.transpose() * d_body;  // d/d(R S)
        const Eigen::Vector3d scales = g.base.scales();
        const Eigen::Matrix3d rot = g.base.rotation.matrix();
        const Eigen::Matrix3d d_rot = d_rs * scales.asDiagonal();
        out.rotation += rotation_backward(g.base.rotation, d_rot);
        for (int k = 0; k < 3; ++k)
            out.log_scales[k] += rot.col(k).dot(d_rs.col(k)) * scales[k];

        // --- opacity / lobe chain
        double d_alpha = 0.0;
        if (g.lobe) {
            const LobeOpacityGrad lg = lobe_opacity_grad(s.theta, *g.lobe, s.alpha);
            d_alpha = a.alpha_hat * lg.d_alpha;
            out.lobe_t += a.alpha_hat * lg.d_t;
            out.lobe_beta += a.alpha_hat * lg.d_beta;
            const double d_theta = a.alpha_hat * lg.d_theta;
            if (d_theta != 0.0) {
                const ViewAngleGrad vg =
                    view_angle_grad(g.base.position, cam_center, g.lobe->orientation);
                out.lobe_orientation += d_theta * vg.d_orientation;
                d_position += d_theta * vg.d_position;
            }
        } else {
            d_alpha = a.alpha_hat;
        }
        out.opacity_logit += d_alpha * s.alpha * (1.0 - s.alpha);

        // --- color chain: SH coefficients and the view direction
        const ShBackward sb = eval_sh_backward(g.base.sh, s.view_dir, s.sh_order, a.color);
        for (std::size_t k = 0; k < sb.d_coeffs.size(); ++k) out.sh[k] += sb.d_coeffs[k];
        d_position +=
            (sb.d_dir - s.view_dir * s.view_dir.dot(sb.d_dir)) / s.view_dist;

        out.position += d_position;
    });

    return grads;
}

namespace {

struct Splat2 {
    int index = -1;
    double depth = 0.0;
    Eigen::Vector2d mu = Eigen::Vector2d::Zero();
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d inv = Eigen::Matrix2d::Zero();
    Eigen::Vector3d color = Eigen::Vector3d::Zero();
    double alpha = 0.0;
    double alpha_hat = 0.0;  // same as alpha; shared compositing code reads it
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
};

std::vector<Splat2> prepare_splats_2d(const std::vector<Gaussian2D>& gaussians,
                                      int width, int height) {
    std::vector<Splat2> splats;
    splats.reserve(gaussians.size());
    for (int i = 0; i < static_cast<int>(gaussians.size()); ++i) {
        const Gaussian2D& g = gaussians[i];
        Splat2 s;
        s.index = i;
        s.depth = g.depth;
        s.mu = g.center;
        s.cov = g.covariance();
        const double det = s.cov(0, 0) * s.cov(1, 1) - s.cov(0, 1) * s.cov(1, 0);
        if (!(det > 1e-300)) continue;
        s.inv << s.cov(1, 1), -s.cov(0, 1), -s.cov(0, 1), s.cov(0, 0);
        s.inv /= det;
        const double radius = 3.0 * std::sqrt(max_eigenvalue_2x2(s.cov));
        s.x0 = std::max(0, static_cast<int>(std::floor(s.mu.x() - radius)));
        s.x1 = std::min(width, static_cast<int>(std::ceil(s.mu.x() + radius)));
        s.y0 = std::max(0, static_cast<int>(std::floor(s.mu.y() - radius)));
        s.y1 = std::min(height, static_cast<int>(std::ceil(s.mu.y() + radius)));
        if (s.x0 >= s.x1 || s.y0 >= s.y1) continue;
        s.color = g.decoded_color();
        s.alpha = g.opacity();
        s.alpha_hat = s.alpha;
        splats.push_back(s);
    }
    std::stable_sort(splats.begin(), splats.end(), [](const Splat2& a, const Splat2& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.index < b.index;
    });
    return splats;
}

}  // namespace

Image render_2d(const std::vector<Gaussian2D>& gaussians, const Image& background) {
    if (background.channels != 3)
        throw DimensionMismatch("render_2d: background must be an RGB image");
    Image out = background;
    const std::vector<Splat2> splats =
        prepare_splats_2d(gaussians, background.width, background.height);
    if (splats.empty()) return out;

    for (int y = 0; y < background.height; ++y) {
        const auto row = row_splats(splats, y);
        if (row.empty()) continue;
        for (int x = 0; x < background.width; ++x) {
            double transmittance = 1.0;
            Eigen::Vector3d rgb = Eigen::Vector3d::Zero();
            const Eigen::Vector2d p(x + 0.5, y + 0.5);
            bool touched = false;
            for (const Splat2* s : row) {
                if (x < s->x0 || x >= s->x1) continue;
                const Eigen::Vector2d d = p - s->mu;
                const double footprint = std::exp(-0.5 * d.dot(s->inv * d));
                const double a = s->alpha * footprint;
                if (a < kMinContribution) continue;
                rgb += s->color * (a * transmittance);
                transmittance *= (1.0 - a);
                touched = true;
            }
            if (!touched) continue;
            rgb += transmittance * background.rgb_at(y, x);
            for (int c = 0; c < 3; ++c) out.at(y, x, c) = rgb[c];
        }
    }
    return out;
}

std::vector<Gaussian2DGradients> backward_2d(const std::vector<Gaussian2D>& gaussians,
                                             const Image& background, const Image& upstream) {
    if (background.channels != 3)
        throw DimensionMismatch("backward_2d: background must be an RGB image");
    background.require_same_shape(upstream, "backward_2d: upstream/background mismatch");

    std::vector<Gaussian2DGradients> grads(gaussians.size());
    const std::vector<Splat2> splats =
        prepare_splats_2d(gaussians, background.width, background.height);
    if (splats.empty()) return grads;

    std::vector<SplatAcc> acc;
    accumulate_pixel_gradients(splats, background, upstream, background.width,
                               background.height, 1, acc);

    for (std::size_t si = 0; si < splats.size(); ++si) {
        const Splat2& s = splats[si];
        const SplatAcc& a = acc[si];
        const Gaussian2D& g = gaussians[static_cast<std::size_t>(s.index)];
        Gaussian2DGradients& out = grads[static_cast<std::size_t>(s.index)];

        out.center += a.mu;

        const Eigen::Vector2d scales = g.scales();
        const double sr = std::sin(g.rotation_angle), cr = std::cos(g.rotation_angle);
        const Eigen::Vector2d a0(sr, cr), a1(cr, -sr);
        const double s0 = scales[0], s1 = scales[1];
        out.log_scales[0] += 2.0 * s0 * s0 * a0.dot(a.sigma * a0);
        out.log_scales[1] += 2.0 * s1 * s1 * a1.dot(a.sigma * a1);
        out.rotation_angle += 2.0 * (s0 * s0 - s1 * s1) * a0.dot(a.sigma * a1);

        out.opacity_logit += a.alpha_hat * s.alpha * (1.0 - s.alpha);

        Eigen::Vector3d d_color = a.color;
        for (int c = 0; c < 3; ++c)
            if (g.color[c] < 0.0 || g.color[c] > 1.0) d_color[c] = 0.0;  // clamped on decode
        out.color += d_color;
    }
    return grads;
}

}  // namespace glint
