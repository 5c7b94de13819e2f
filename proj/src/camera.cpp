// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#include "glint/camera.hpp"

#include <Eigen/Dense>
#include <fstream>

#include <json.hpp>

#include "glint/errors.hpp"

namespace glint {

void Camera::validate() const {
    if (width <= 0 || height <= 0) throw DataError("camera: non-positive image size");
    if (!(fx > 0.0) || !(fy > 0.0)) throw DataError("camera: focal lengths must be positive");
    if (!(near > 0.0) || !(near < far)) throw DataError("camera: requires 0 < near < far");
    const Eigen::Matrix3d r = rot();
    const double err = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    if (err > 1e-9) throw DataError("camera: world_to_view rotation block not orthonormal");
}

Camera Camera::look_at(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
                       const Eigen::Vector3d& up, int width, int height,
                       double focal_px, double near, double far) {
    // View axes: +z forward (toward target), +x right, +y down, matching the
    // pixel convention (v grows downward).
    Eigen::Vector3d fwd = (target - eye).normalized();
    Eigen::Vector3d right = fwd.cross(-up).normalized();
    if (!right.allFinite() || right.norm() < 0.5) {
        // up parallel to view direction; pick any perpendicular.
        right = fwd.unitOrthogonal();
    }
    const Eigen::Vector3d down = fwd.cross(right).normalized();

    Camera cam;
    cam.width = width;
    cam.height = height;
    cam.fx = cam.fy = focal_px;
    cam.cx = width / 2.0;
    cam.cy = height / 2.0;
    cam.near = near;
    cam.far = far;
    Eigen::Matrix3d r;
    r.row(0) = right.transpose();
    r.row(1) = down.transpose();
    r.row(2) = fwd.transpose();
    cam.world_to_view.setIdentity();
    cam.world_to_view.topLeftCorner<3, 3>() = r;
    cam.world_to_view.topRightCorner<3, 1>() = -r * eye;
    return cam;
}

Eigen::Matrix<double, 2, 3> projection_jacobian(const Camera& camera, const Eigen::Vector3d& t) {
    const double iz = 1.0 / t.z();
    const double iz2 = iz * iz;
    Eigen::Matrix<double, 2, 3> j;
    j << camera.fx * iz, 0.0, -camera.fx * t.x() * iz2,
         0.0, camera.fy * iz, -camera.fy * t.y() * iz2;
    return j;
}

Eigen::Matrix2d project_covariance(const Rotation& rotation, const Eigen::Vector3d& scales,
                                   const Eigen::Vector3d& position, const Camera& camera) {
    const Eigen::Vector3d t = camera.to_view(position);
    if (t.z() <= camera.near)
        throw BehindCamera("project_covariance: view depth <= near plane");
    const Eigen::Matrix<double, 2, 3> j = projection_jacobian(camera, t);
    const Eigen::Matrix<double, 2, 3> m =
        j * camera.rot() * rotation.matrix() * scales.asDiagonal();
    Eigen::Matrix2d cov = m * m.transpose();
    // Enforce exact symmetry against round-off.
    const double off = 0.5 * (cov(0, 1) + cov(1, 0));
    cov(0, 1) = cov(1, 0) = off;
    return cov;
}

bool frustum_cull(const Eigen::Vector3d& position, const Camera& camera, double pad_px) {
    const Eigen::Vector3d t = camera.to_view(position);
    if (!(t.z() > camera.near && t.z() < camera.far)) return false;
    const Eigen::Vector2d px = camera.view_to_pixel(t);
    return px.x() >= -pad_px && px.x() <= camera.width + pad_px &&
           px.y() >= -pad_px && px.y() <= camera.height + pad_px;
}

std::vector<Camera> load_cameras_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open camera file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("camera JSON parse failure in " + path + ": " + e.what());
    }
    if (!doc.is_array()) throw DataError("camera JSON must be an array: " + path);

    std::vector<Camera> cams;
    cams.reserve(doc.size());
    for (const auto& entry : doc) {
        try {
            Camera cam;
            cam.width = entry.at("width").get<int>();
            cam.height = entry.at("height").get<int>();
            cam.fx = entry.at("fx").get<double>();
            cam.fy = entry.at("fy").get<double>();
            cam.cx = entry.at("cx").get<double>();
            cam.cy = entry.at("cy").get<double>();
            cam.near = entry.at("near").get<double>();
            cam.far = entry.at("far").get<double>();
            const auto m = entry.at("world_to_view").get<std::vector<double>>();
            if (m.size() != 16) throw DataError("world_to_view must hold 16 floats");
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) cam.world_to_view(r, c) = m[r * 4 + c];
            if (entry.contains("image_path")) cam.image_path = entry.at("image_path").get<std::string>();
            cam.validate();
            cams.push_back(std::move(cam));
        } catch (const nlohmann::json::exception& e) {
            throw DataError("camera entry malformed in " + path + ": " + e.what());
        }
    }
    return cams;
}

void save_cameras_json(const std::string& path, const std::vector<Camera>& cameras) {
    nlohmann::json doc = nlohmann::json::array();
    for (const Camera& cam : cameras) {
        std::vector<double> m(16);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m[r * 4 + c] = cam.world_to_view(r, c);
        doc.push_back({{"width", cam.width},
                       {"height", cam.height},
                       {"fx", cam.fx},
                       {"fy", cam.fy},
                       {"cx", cam.cx},
                       {"cy", cam.cy},
                       {"world_to_view", m},
                       {"near", cam.near},
                       {"far", cam.far},
                       {"image_path", cam.image_path}});
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot write camera file: " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace glint
