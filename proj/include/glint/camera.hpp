// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "glint/rotation.hpp"

namespace glint {

/// Pinhole camera: intrinsics in pixels plus a rigid world-to-view transform.
/// Pixel coordinates are continuous; the center of integer pixel (ix, iy) is
/// (ix + 0.5, iy + 0.5). Depth means view-space z throughout.
struct Camera {
    int width = 0;
    int height = 0;
    double fx = 0.0, fy = 0.0;
    double cx = 0.0, cy = 0.0;
    Eigen::Matrix4d world_to_view = Eigen::Matrix4d::Identity();
    double near = 0.01;
    double far = 100.0;
    std::string image_path;

    Eigen::Matrix3d rot() const { return world_to_view.topLeftCorner<3, 3>(); }
    Eigen::Vector3d trans() const { return world_to_view.topRightCorner<3, 1>(); }
    Eigen::Vector3d center() const { return -rot().transpose() * trans(); }

    Eigen::Vector3d to_view(const Eigen::Vector3d& p_world) const {
        return rot() * p_world + trans();
    }

    Eigen::Vector2d view_to_pixel(const Eigen::Vector3d& v) const {
        return {fx * v.x() / v.z() + cx, fy * v.y() / v.z() + cy};
    }

    Eigen::Vector2d world_to_pixel(const Eigen::Vector3d& p_world) const {
        return view_to_pixel(to_view(p_world));
    }

    /// Inverse projection: continuous pixel (u, v) at view depth > 0 back to
    /// world space. Total for depth > 0.
    Eigen::Vector3d pixel_to_world(double u, double v, double depth) const {
        const Eigen::Vector3d view((u - cx) / fx * depth, (v - cy) / fy * depth, depth);
        return rot().transpose() * (view - trans());
    }

    /// Checks the camera invariants (orthonormal rotation block, positive
    /// focal lengths, 0 < near < far); throws DataError on violation.
    void validate() const;

    /// Builds a camera at `eye` looking toward `target` with +y-ish up.
    static Camera look_at(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
                          const Eigen::Vector3d& up, int width, int height,
                          double focal_px, double near, double far);
};

/// 2x3 Jacobian of the pixel projection at view-space point t (the affine
/// approximation evaluated at the Gaussian mean).
Eigen::Matrix<double, 2, 3> projection_jacobian(const Camera& camera, const Eigen::Vector3d& t);

/// Projects a world-space Gaussian's covariance to a 2x2 pixel-space
/// covariance, J W R S (J W R S)^T. Throws BehindCamera when the view depth
/// is <= camera.near.
Eigen::Matrix2d project_covariance(const Rotation& rotation, const Eigen::Vector3d& scales,
                                   const Eigen::Vector3d& position, const Camera& camera);

/// True iff view depth lies in (near, far) and the projected center falls
/// inside the image rectangle padded by `pad_px` pixels on every side.
/// Callers that know the projected footprint pass its 3-sigma radius.
bool frustum_cull(const Eigen::Vector3d& position, const Camera& camera, double pad_px = 0.0);

/// Loads a camera set from a JSON array of
/// {width, height, fx, fy, cx, cy, world_to_view (row-major 16 floats),
///  near, far, image_path}.
std::vector<Camera> load_cameras_json(const std::string& path);
void save_cameras_json(const std::string& path, const std::vector<Camera>& cameras);

}  // namespace glint
