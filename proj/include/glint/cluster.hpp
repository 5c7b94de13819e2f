// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <vector>

namespace glint {

/// Single-linkage grouping: clusters are the connected components of the
/// graph joining point pairs closer than the threshold (equivalent to
/// agglomerative single-linkage merging stopped at that threshold, and
/// independent of input ordering).
std::vector<std::vector<int>> single_linkage_clusters(
    const std::vector<Eigen::Vector3d>& points, double threshold);

struct ClusterResult {
    std::vector<std::vector<int>> groups;  // partition of sample indices
    int selected = -1;                     // index into groups
    bool includes_center = false;          // selected group covers the center pixel
    double threshold = 0.0;                // threshold that produced the partition
    int retries = 0;
};

/// Picks the cluster for back-projection: among groups with >= 3 members,
/// prefer the one containing `center_index` (pass -1 when the center pixel is
/// not in the sample set), else the largest. When no group qualifies the
/// threshold grows by 1.5x and clustering repeats, up to `max_retries`;
/// throws ClusteringFailed beyond that.
ClusterResult cluster_points(const std::vector<Eigen::Vector3d>& points, int center_index,
                             double initial_threshold, int max_retries = 10);

}  // namespace glint
