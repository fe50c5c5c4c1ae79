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

#pragma once

// Finite-difference checks of every layer's backward pass. Each check draws
// random parameters, inputs and an output weighting R from `seed`, takes the
// scalar loss sum(output * R), and returns the worst relative error between
// the analytic gradient and the central difference over all parameters and
// inputs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "oracles.hpp"
#include "skillcast/nn/layers.hpp"

namespace gradcheck {

inline constexpr double kEps = 1e-5;

inline double weighted_sum(std::span<const double> out, std::span<const double> weights) {
  double s = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) s += out[i] * weights[i];
  return s;
}

inline double compare(std::span<double> values, std::span<const double> analytic, const std::function<double()>& loss) {
  const auto numeric = oracle::central_difference(values, loss, kEps);
  return oracle::max_relative_error(analytic, numeric);
}

inline double dense(std::uint64_t seed) {
  using namespace skillcast;
  std::mt19937_64 rng(seed);
  auto p = nn::DenseParams::zeros(4, 3);
  oracle::fill_uniform(p.weight.values(), rng);
  oracle::fill_uniform(p.bias.values(), rng);
  Matrix x(2, 4);
  oracle::fill_uniform(x.data(), rng);
  Matrix r(2, 3);
  oracle::fill_uniform(r.data(), rng);
  auto loss = [&] { return weighted_sum(nn::dense_forward(p, x).data(), r.data()); };
  const auto g = nn::dense_backward(p, x, r);
  double worst = compare(p.weight.values(), g.params.weight.values(), loss);
  worst = std::max(worst, compare(p.bias.values(), g.params.bias.values(), loss));
  worst = std::max(worst, compare(x.data(), g.input.data(), loss));
  return worst;
}

inline skillcast::nn::Sequence random_sequence(std::size_t steps, std::size_t batch, std::size_t features,
                                               std::mt19937_64& rng) {
  skillcast::nn::Sequence s(steps, batch, features);
  oracle::fill_uniform(s.data, rng);
  return s;
}

inline double lstm(std::uint64_t seed) {
  using namespace skillcast;
  std::mt19937_64 rng(seed);
  auto p = nn::LstmParams::zeros(3, 4);
  oracle::fill_uniform(p.w_input.values(), rng);
  oracle::fill_uniform(p.w_recurrent.values(), rng);
  oracle::fill_uniform(p.bias.values(), rng);
  auto x = random_sequence(5, 2, 3, rng);
  const auto r = random_sequence(5, 2, 4, rng);
  auto loss = [&] { return weighted_sum(nn::lstm_forward(p, x).hidden.data, r.data); };
  const auto g = nn::lstm_backward(p, nn::lstm_forward(p, x), r);
  double worst = compare(p.w_input.values(), g.params.w_input.values(), loss);
  worst = std::max(worst, compare(p.w_recurrent.values(), g.params.w_recurrent.values(), loss));
  worst = std::max(worst, compare(p.bias.values(), g.params.bias.values(), loss));
  worst = std::max(worst, compare(x.data, g.input.data, loss));
  return worst;
}

inline double gru(std::uint64_t seed) {
  using namespace skillcast;
  std::mt19937_64 rng(seed);
  auto p = nn::GruParams::zeros(3, 4);
  oracle::fill_uniform(p.w_input.values(), rng);
  oracle::fill_uniform(p.w_recurrent.values(), rng);
  oracle::fill_uniform(p.bias.values(), rng);
  auto x = random_sequence(5, 2, 3, rng);
  const auto r = random_sequence(5, 2, 4, rng);
  auto loss = [&] { return weighted_sum(nn::gru_forward(p, x).hidden.data, r.data); };
  const auto g = nn::gru_backward(p, nn::gru_forward(p, x), r);
  double worst = compare(p.w_input.values(), g.params.w_input.values(), loss);
  worst = std::max(worst, compare(p.w_recurrent.values(), g.params.w_recurrent.values(), loss));
  worst = std::max(worst, compare(p.bias.values(), g.params.bias.values(), loss));
  worst = std::max(worst, compare(x.data, g.input.data, loss));
  return worst;
}

// Kernel size cycles through 2..5 so both even and odd padding are covered.
inline double conv1d(std::uint64_t seed) {
  using namespace skillcast;
  std::mt19937_64 rng(seed);
  const std::size_t kernel = 2 + seed % 4;
  auto p = nn::Conv1dParams::zeros(3, 4, kernel);
  oracle::fill_uniform(p.weight.values(), rng);
  oracle::fill_uniform(p.bias.values(), rng);
  auto x = random_sequence(6, 2, 3, rng);
  const auto r = random_sequence(6, 2, 4, rng);
  auto loss = [&] { return weighted_sum(nn::conv1d_forward(p, x).output.data, r.data); };
  const auto g = nn::conv1d_backward(p, nn::conv1d_forward(p, x), r);
  double worst = compare(p.weight.values(), g.params.weight.values(), loss);
  worst = std::max(worst, compare(p.bias.values(), g.params.bias.values(), loss));
  worst = std::max(worst, compare(x.data, g.input.data, loss));
  return worst;
}

}  // namespace gradcheck
