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

// Forward/backward passes for the four layer types. Every backward returns
// exact gradients for its parameters and its input given the gradient of a
// scalar loss with respect to the layer output.
//
// Parameter shapes:
//   Dense   weight out x in, bias out
//   LSTM    w_input 4H x in, w_recurrent 4H x H, bias 4H; gate rows i, f, g, o
//   GRU     w_input 3H x in, w_recurrent 3H x H, bias 3H; gate rows z, r, n
//   Conv1D  weight filters x channels x kernel, bias filters
//
// Recurrent layers start from zero hidden (and cell) state.

#include <cstddef>
#include <random>

#include "skillcast/matrix.hpp"
#include "skillcast/nn/tensor.hpp"

namespace skillcast::nn {

// --- dense ---------------------------------------------------------------------

struct DenseParams {
  Tensor weight;
  Tensor bias;

  static DenseParams zeros(std::size_t in, std::size_t out);
  std::size_t in_size() const { return weight.dim(1); }
  std::size_t out_size() const { return weight.dim(0); }
};

// Linear map y = W x + b applied to each row of a batch x in matrix.
Matrix dense_forward(const DenseParams& params, const Matrix& input);

struct DenseGradients {
  DenseParams params;
  Matrix input;
};

DenseGradients dense_backward(const DenseParams& params, const Matrix& input, const Matrix& grad_output);

// --- LSTM ----------------------------------------------------------------------
//
//   i = sigmoid(W_i x + U_i h + b_i)     f = sigmoid(W_f x + U_f h + b_f)
//   g = tanh(W_g x + U_g h + b_g)        o = sigmoid(W_o x + U_o h + b_o)
//   c' = f * c + i * g                   h' = o * tanh(c')
//
// No peephole connections.

struct LstmParams {
  Tensor w_input;
  Tensor w_recurrent;
  Tensor bias;

  static LstmParams zeros(std::size_t in, std::size_t hidden);
  std::size_t input_size() const { return w_input.dim(1); }
  std::size_t hidden_size() const { return w_recurrent.dim(1); }
};

struct LstmCache {
  Sequence input;
  Sequence gates;   // activated i, f, g, o per step
  Sequence cells;
  Sequence hidden;  // layer output

  std::span<const double> final_hidden(std::size_t b) const { return hidden.at(hidden.steps - 1, b); }
  std::span<const double> final_cell(std::size_t b) const { return cells.at(cells.steps - 1, b); }
};

LstmCache lstm_forward(const LstmParams& params, const Sequence& input);

struct LstmGradients {
  LstmParams params;
  Sequence input;
};

// grad_hidden has the shape of cache.hidden.
LstmGradients lstm_backward(const LstmParams& params, const LstmCache& cache, const Sequence& grad_hidden);

// --- GRU -----------------------------------------------------------------------
//
//   z = sigmoid(W_z x + U_z h + b_z)     r = sigmoid(W_r x + U_r h + b_r)
//   n = tanh(W_n x + U_n (r * h) + b_n)
//   h' = z * h + (1 - z) * n
//
// The reset gate is applied before the recurrent product (original
// formulation); z -> 1 carries the previous state through unchanged.

struct GruParams {
  Tensor w_input;
  Tensor w_recurrent;
  Tensor bias;

  static GruParams zeros(std::size_t in, std::size_t hidden);
  std::size_t input_size() const { return w_input.dim(1); }
  std::size_t hidden_size() const { return w_recurrent.dim(1); }
};

struct GruCache {
  Sequence input;
  Sequence gates;  // activated z, r, n per step
  Sequence hidden;

  std::span<const double> final_hidden(std::size_t b) const { return hidden.at(hidden.steps - 1, b); }
};

GruCache gru_forward(const GruParams& params, const Sequence& input);

struct GruGradients {
  GruParams params;
  Sequence input;
};

GruGradients gru_backward(const GruParams& params, const GruCache& cache, const Sequence& grad_hidden);

// --- Conv1D --------------------------------------------------------------------
//
// Stride 1, "same" zero padding (left = (kernel - 1) / 2, right = the rest),
// ReLU activation; the output has as many steps as the input.

inline constexpr std::size_t kMinKernel = 2;
inline constexpr std::size_t kMaxKernel = 64;

struct Conv1dParams {
  Tensor weight;
  Tensor bias;

  // kConfig when kernel is outside [kMinKernel, kMaxKernel].
  static Conv1dParams zeros(std::size_t channels, std::size_t filters, std::size_t kernel);
  std::size_t filters() const { return weight.dim(0); }
  std::size_t channels() const { return weight.dim(1); }
  std::size_t kernel() const { return weight.dim(2); }
  std::size_t pad_left() const { return (kernel() - 1) / 2; }
};

struct Conv1dCache {
  Sequence input;
  Sequence pre_activation;
  Sequence output;
};

Conv1dCache conv1d_forward(const Conv1dParams& params, const Sequence& input);

struct Conv1dGradients {
  Conv1dParams params;
  Sequence input;
};

Conv1dGradients conv1d_backward(const Conv1dParams& params, const Conv1dCache& cache, const Sequence& grad_output);

// --- loss ----------------------------------------------------------------------

struct LossResult {
  double value = 0.0;
  Matrix gradient;  // d loss / d prediction
};

// Mean of squared element differences; gradient 2 (pred - target) / N.
LossResult mse_loss(const Matrix& prediction, const Matrix& target);

// --- init ----------------------------------------------------------------------

// Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
void init_uniform(Tensor& tensor, std::size_t fan_in, std::mt19937_64& rng);

}  // namespace skillcast::nn
