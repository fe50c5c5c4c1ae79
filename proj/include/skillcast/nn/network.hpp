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

// Recurrent forecasting network: optional Conv1D front end, a stack of LSTM
// or GRU layers, and a linear dense head reading the last hidden state of
// the top recurrent layer. The head emits horizon * n_series values per
// sample in the time-major-then-series order used by the window builder.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "skillcast/matrix.hpp"
#include "skillcast/nn/adam.hpp"
#include "skillcast/nn/layers.hpp"

namespace skillcast::nn {

enum class ModelKind { kLstm, kGru, kCnnLstm };

std::string to_string(ModelKind kind);
// Accepts LSTM, GRU, CNN_LSTM, CNN+LSTM (any case).
ModelKind parse_model_kind(const std::string& text);

struct ArchitectureSpec {
  ModelKind kind = ModelKind::kLstm;
  int layers = 1;
  int neurons = 2;
  int kernel = 0;   // CNN_LSTM only
  int filters = 0;  // CNN_LSTM only; 0 ties the filter count to `neurons`

  int effective_filters() const { return filters > 0 ? filters : neurons; }
  // kConfig unless neurons in [1,10], layers >= 1 and, for CNN_LSTM,
  // kernel in [2,64] and filters in [1,10].
  void validate() const;

  auto operator<=>(const ArchitectureSpec&) const = default;
};

void to_json(nlohmann::json& j, const ArchitectureSpec& spec);
void from_json(const nlohmann::json& j, ArchitectureSpec& spec);

struct NetworkOptions {
  // Initial bias of the LSTM forget gate rows.
  double forget_bias = 1.0;
};

class Network {
 public:
  using RecurrentLayer = std::variant<LstmParams, GruParams>;

  Network(const ArchitectureSpec& spec, std::size_t n_series, int lag, int horizon, std::uint64_t seed,
          const NetworkOptions& options = {});

  const ArchitectureSpec& spec() const noexcept { return spec_; }
  std::size_t n_series() const noexcept { return n_series_; }
  int lag() const noexcept { return lag_; }
  int horizon() const noexcept { return horizon_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t input_width() const noexcept { return static_cast<std::size_t>(lag_) * n_series_; }
  std::size_t output_width() const noexcept { return static_cast<std::size_t>(horizon_) * n_series_; }

  // inputs: batch x (lag * n_series), flattened time-major.
  Matrix predict(const Matrix& inputs) const;

  struct Evaluation {
    double loss = 0.0;
    Matrix prediction;
    std::vector<Tensor> gradients;  // aligned with parameters()
  };
  // MSE loss and exact gradients for every parameter.
  Evaluation evaluate(const Matrix& inputs, const Matrix& targets) const;

  std::vector<ParamRef> parameters();
  std::vector<ConstParamRef> parameters() const;
  std::size_t parameter_count() const;

  const std::optional<Conv1dParams>& conv() const noexcept { return conv_; }
  const std::vector<RecurrentLayer>& recurrent() const noexcept { return recurrent_; }
  const DenseParams& head() const noexcept { return head_; }

 private:
  struct Trace;
  Sequence to_sequence(const Matrix& inputs) const;
  Matrix forward(const Matrix& inputs, Trace* trace) const;

  ArchitectureSpec spec_;
  std::size_t n_series_;
  int lag_;
  int horizon_;
  std::uint64_t seed_;
  std::optional<Conv1dParams> conv_;
  std::vector<RecurrentLayer> recurrent_;
  DenseParams head_;
};

// Checkpoint document: architecture, dimensions, seed, every parameter as a
// flat array, and (optionally) the Adam state. Doubles are written with
// round-trip precision so a save/load cycle is bit-exact.
nlohmann::json to_checkpoint(const Network& network, const AdamState* adam = nullptr);
Network network_from_checkpoint(const nlohmann::json& doc);
// kConfig when the checkpoint carries no optimizer state.
AdamState adam_from_checkpoint(const nlohmann::json& doc);

}  // namespace skillcast::nn
