// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#include "glint/adam.hpp"

namespace glint {

namespace {

inline void update_element(double* params, const double* grads, AdamState& s, double lr,
                           std::size_t i) {
    const double g = grads[i];
    s.step[i] += 1;
    s.m[i] = s.beta1 * s.m[i] + (1.0 - s.beta1) * g;
    s.v[i] = s.beta2 * s.v[i] + (1.0 - s.beta2) * g * g;
    const double t = static_cast<double>(s.step[i]);
    const double m_hat = s.m[i] / (1.0 - std::pow(s.beta1, t));
    const double v_hat = s.v[i] / (1.0 - std::pow(s.beta2, t));
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + s.epsilon);
}

}  // namespace

bool adam_step(double* params, const double* grads, AdamState& state, double lr,
               std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(grads[i])) return false;
    for (std::size_t i = 0; i < n; ++i) update_element(params, grads, state, lr, i);
    return true;
}

bool sparse_adam_step(double* params, const double* grads, AdamState& state, double lr,
                      const std::vector<std::size_t>& active) {
    for (std::size_t i : active)
        if (!std::isfinite(grads[i])) return false;
    for (std::size_t i : active) update_element(params, grads, state, lr, i);
    return true;
}

}  // namespace glint
