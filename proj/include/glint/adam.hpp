// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace glint {

/// Bias-corrected Adam over a flat parameter vector. Per-element step counts
/// support the lazy ("sparse") variant where moments advance only on steps
/// when an element is active.
struct AdamState {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-15;  // 3DGS convention
    std::vector<double> m;
    std::vector<double> v;
    std::vector<std::int64_t> step;

    explicit AdamState(std::size_t n = 0) { resize(n); }

    void resize(std::size_t n) {
        m.assign(n, 0.0);
        v.assign(n, 0.0);
        step.assign(n, 0);
    }

    std::size_t size() const { return m.size(); }
};

/// One dense Adam step over params[0..n). Returns false (and leaves the whole
/// group untouched) when any gradient is non-finite.
bool adam_step(double* params, const double* grads, AdamState& state, double lr,
               std::size_t n);

/// Lazy Adam step restricted to `active` indices: only their moments and step
/// counters advance; bias correction uses the per-element counters.
bool sparse_adam_step(double* params, const double* grads, AdamState& state, double lr,
                      const std::vector<std::size_t>& active);

inline bool adam_step(std::vector<double>& params, const std::vector<double>& grads,
                      AdamState& state, double lr) {
    return adam_step(params.data(), grads.data(), state, lr, params.size());
}

}  // namespace glint
