// Copyright 2026 The Skillcast Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skillcast/nn/adam.hpp"

#include <cmath>

#include "skillcast/error.hpp"
#include "skillcast/kernels.hpp"

namespace skillcast::nn {

AdamState make_adam_state(std::span<const ParamRef> params, const AdamConfig& config) {
  AdamState state;
  state.config = config;
  for (const auto& p : params) {
    state.first_moment.push_back(p.tensor->zeros_like());
    state.second_moment.push_back(p.tensor->zeros_like());
  }
  return state;
}

void adam_step(std::span<const ParamRef> params, std::span<const Tensor> grads, AdamState& state) {
  require(params.size() == grads.size() && params.size() == state.first_moment.size() &&
              params.size() == state.second_moment.size(),
          ErrorKind::kShape, "adam: parameter, gradient and moment counts differ");
  for (std::size_t i = 0; i < params.size(); ++i) {
    require(grads[i].size() == params[i].tensor->size() && state.first_moment[i].size() == grads[i].size(),
            ErrorKind::kShape, "adam: gradient shape mismatch for '" + params[i].name + "'");
    for (double g : grads[i].values()) {
      if (!std::isfinite(g)) fail(ErrorKind::kNumeric, "non-finite gradient for parameter '" + params[i].name + "'");
    }
  }

  ++state.step;
  const auto& cfg = state.config;
  const double t = static_cast<double>(state.step);
  const kernels::AdamCoefficients coeffs{cfg.lr,
                                         cfg.beta1,
                                         cfg.beta2,
                                         1.0 - cfg.beta1,
                                         1.0 - cfg.beta2,
                                         1.0 - std::pow(cfg.beta1, t),
                                         1.0 - std::pow(cfg.beta2, t),
                                         cfg.eps};
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < params.size(); ++i) {
    k.adam_update(params[i].tensor->data(), grads[i].data(), state.first_moment[i].data(),
                  state.second_moment[i].data(), grads[i].size(), coeffs);
  }
}

double clip_global_norm(std::span<Tensor> grads, double max_norm) {
  double sq = 0.0;
  for (const auto& g : grads) sq += kernels::active().dot(g.data(), g.data(), g.size());
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    for (auto& g : grads) {
      for (auto& v : g.values()) v *= scale;
    }
  }
  return norm;
}

}  // namespace skillcast::nn
