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

#include "skillcast/nn/network.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "skillcast/error.hpp"
#include "skillcast/seed.hpp"

namespace skillcast::nn {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLstm: return "LSTM";
    case ModelKind::kGru: return "GRU";
    case ModelKind::kCnnLstm: return "CNN_LSTM";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& text) {
  std::string up;
  for (char c : text) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "LSTM") return ModelKind::kLstm;
  if (up == "GRU") return ModelKind::kGru;
  if (up == "CNN_LSTM" || up == "CNN+LSTM" || up == "CNN-LSTM") return ModelKind::kCnnLstm;
  fail(ErrorKind::kConfig, "unknown model kind '" + text + "'");
}

void ArchitectureSpec::validate() const {
  require(layers >= 1, ErrorKind::kConfig, "architecture needs at least one recurrent layer");
  require(neurons >= 1 && neurons <= 10, ErrorKind::kConfig,
          "neurons per layer must be in [1, 10], got " + std::to_string(neurons));
  if (kind == ModelKind::kCnnLstm) {
    require(kernel >= 2 && kernel <= 64, ErrorKind::kConfig,
            "kernel size must be in [2, 64], got " + std::to_string(kernel));
    require(effective_filters() >= 1 && effective_filters() <= 10, ErrorKind::kConfig,
            "filter count must be in [1, 10], got " + std::to_string(effective_filters()));
  }
}

void to_json(nlohmann::json& j, const ArchitectureSpec& spec) {
  j = nlohmann::json{{"kind", to_string(spec.kind)},
                     {"layers", spec.layers},
                     {"neurons", spec.neurons},
                     {"kernel", spec.kernel},
                     {"filters", spec.filters}};
}

void from_json(const nlohmann::json& j, ArchitectureSpec& spec) {
  spec.kind = parse_model_kind(j.at("kind").get<std::string>());
  spec.layers = j.at("layers").get<int>();
  spec.neurons = j.at("neurons").get<int>();
  spec.kernel = j.value("kernel", 0);
  spec.filters = j.value("filters", 0);
}

// --- network -------------------------------------------------------------------

struct Network::Trace {
  std::optional<Conv1dCache> conv;
  std::vector<std::variant<LstmCache, GruCache>> layers;
  Matrix last_hidden;
};

Network::Network(const ArchitectureSpec& spec, std::size_t n_series, int lag, int horizon, std::uint64_t seed,
                 const NetworkOptions& options)
    : spec_(spec), n_series_(n_series), lag_(lag), horizon_(horizon), seed_(seed) {
  spec_.validate();
  require(n_series >= 1, ErrorKind::kConfig, "network needs at least one series");
  require(lag >= 1 && horizon >= 1, ErrorKind::kConfig, "lag and horizon must be >= 1");

  std::mt19937_64 rng(derive_seed(seed, "nn-init"));
  const auto H = static_cast<std::size_t>(spec_.neurons);
  std::size_t features = n_series;
  if (spec_.kind == ModelKind::kCnnLstm) {
    const auto F = static_cast<std::size_t>(spec_.effective_filters());
    const auto K = static_cast<std::size_t>(spec_.kernel);
    conv_ = Conv1dParams::zeros(features, F, K);
    init_uniform(conv_->weight, features * K, rng);
    features = F;
  }
  for (int l = 0; l < spec_.layers; ++l) {
    if (spec_.kind == ModelKind::kGru) {
      auto p = GruParams::zeros(features, H);
      init_uniform(p.w_input, features, rng);
      init_uniform(p.w_recurrent, H, rng);
      recurrent_.emplace_back(std::move(p));
    } else {
      auto p = LstmParams::zeros(features, H);
      init_uniform(p.w_input, features, rng);
      init_uniform(p.w_recurrent, H, rng);
      for (std::size_t j = 0; j < H; ++j) p.bias[H + j] = options.forget_bias;
      recurrent_.emplace_back(std::move(p));
    }
    features = H;
  }
  head_ = DenseParams::zeros(H, output_width());
  init_uniform(head_.weight, H, rng);
}

Sequence Network::to_sequence(const Matrix& inputs) const {
  require(inputs.cols() == input_width(), ErrorKind::kShape,
          "network expects input width " + std::to_string(input_width()) + ", got " +
              std::to_string(inputs.cols()));
  const auto T = static_cast<std::size_t>(lag_);
  Sequence seq(T, inputs.rows(), n_series_);
  for (std::size_t b = 0; b < inputs.rows(); ++b) {
    for (std::size_t t = 0; t < T; ++t) {
      auto dst = seq.at(t, b);
      for (std::size_t s = 0; s < n_series_; ++s) dst[s] = inputs(b, t * n_series_ + s);
    }
  }
  return seq;
}

Matrix Network::forward(const Matrix& inputs, Trace* trace) const {
  Sequence x = to_sequence(inputs);
  if (conv_) {
    auto cache = conv1d_forward(*conv_, x);
    x = cache.output;
    if (trace) trace->conv = std::move(cache);
  }
  for (const auto& layer : recurrent_) {
    if (const auto* lstm = std::get_if<LstmParams>(&layer)) {
      auto cache = lstm_forward(*lstm, x);
      x = cache.hidden;
      if (trace) trace->layers.emplace_back(std::move(cache));
    } else {
      auto cache = gru_forward(std::get<GruParams>(layer), x);
      x = cache.hidden;
      if (trace) trace->layers.emplace_back(std::move(cache));
    }
  }
  Matrix last(x.batch, x.features);
  for (std::size_t b = 0; b < x.batch; ++b) {
    const auto h = x.at(x.steps - 1, b);
    std::copy(h.begin(), h.end(), last.row(b).begin());
  }
  Matrix out = dense_forward(head_, last);
  if (trace) trace->last_hidden = std::move(last);
  return out;
}

Matrix Network::predict(const Matrix& inputs) const { return forward(inputs, nullptr); }

Network::Evaluation Network::evaluate(const Matrix& inputs, const Matrix& targets) const {
  Trace trace;
  Evaluation out;
  out.prediction = forward(inputs, &trace);
  auto loss = mse_loss(out.prediction, targets);
  out.loss = loss.value;

  auto head_grads = dense_backward(head_, trace.last_hidden, loss.gradient);

  const auto T = static_cast<std::size_t>(lag_);
  const std::size_t B = inputs.rows();
  const auto H = static_cast<std::size_t>(spec_.neurons);
  Sequence grad(T, B, H);
  for (std::size_t b = 0; b < B; ++b) {
    const auto src = head_grads.input.row(b);
    std::copy(src.begin(), src.end(), grad.at(T - 1, b).begin());
  }

  std::vector<std::vector<Tensor>> layer_grads(recurrent_.size());
  for (std::size_t l = recurrent_.size(); l-- > 0;) {
    if (const auto* lstm = std::get_if<LstmParams>(&recurrent_[l])) {
      auto g = lstm_backward(*lstm, std::get<LstmCache>(trace.layers[l]), grad);
      layer_grads[l] = {std::move(g.params.w_input), std::move(g.params.w_recurrent), std::move(g.params.bias)};
      grad = std::move(g.input);
    } else {
      auto g = gru_backward(std::get<GruParams>(recurrent_[l]), std::get<GruCache>(trace.layers[l]), grad);
      layer_grads[l] = {std::move(g.params.w_input), std::move(g.params.w_recurrent), std::move(g.params.bias)};
      grad = std::move(g.input);
    }
  }
  if (conv_) {
    auto g = conv1d_backward(*conv_, *trace.conv, grad);
    out.gradients.push_back(std::move(g.params.weight));
    out.gradients.push_back(std::move(g.params.bias));
  }
  for (auto& lg : layer_grads) {
    for (auto& t : lg) out.gradients.push_back(std::move(t));
  }
  out.gradients.push_back(std::move(head_grads.params.weight));
  out.gradients.push_back(std::move(head_grads.params.bias));
  return out;
}

std::vector<ParamRef> Network::parameters() {
  std::vector<ParamRef> out;
  if (conv_) {
    out.push_back({"conv.weight", &conv_->weight});
    out.push_back({"conv.bias", &conv_->bias});
  }
  for (std::size_t l = 0; l < recurrent_.size(); ++l) {
    const std::string prefix = (std::holds_alternative<LstmParams>(recurrent_[l]) ? "lstm" : "gru") +
                               std::to_string(l) + ".";
    std::visit(
        [&](auto& p) {
          out.push_back({prefix + "w_input", &p.w_input});
          out.push_back({prefix + "w_recurrent", &p.w_recurrent});
          out.push_back({prefix + "bias", &p.bias});
        },
        recurrent_[l]);
  }
  out.push_back({"head.weight", &head_.weight});
  out.push_back({"head.bias", &head_.bias});
  return out;
}

std::vector<ConstParamRef> Network::parameters() const {
  std::vector<ConstParamRef> out;
  for (const auto& p : const_cast<Network*>(this)->parameters()) out.push_back({p.name, p.tensor});
  return out;
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const auto& p : parameters()) n += p.tensor->size();
  return n;
}

// --- checkpoints ---------------------------------------------------------------

nlohmann::json to_checkpoint(const Network& network, const AdamState* adam) {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : network.parameters()) {
    params.push_back({{"name", p.name},
                      {"shape", p.tensor->shape()},
                      {"values", std::vector<double>(p.tensor->values().begin(), p.tensor->values().end())}});
  }
  nlohmann::json doc{{"format", "skillcast-checkpoint/1"},
                     {"architecture", network.spec()},
                     {"n_series", network.n_series()},
                     {"lag", network.lag()},
                     {"horizon", network.horizon()},
                     {"seed", network.seed()},
                     {"parameters", params}};
  if (adam) {
    nlohmann::json m = nlohmann::json::array();
    nlohmann::json v = nlohmann::json::array();
    for (const auto& t : adam->first_moment) m.push_back(std::vector<double>(t.values().begin(), t.values().end()));
    for (const auto& t : adam->second_moment) v.push_back(std::vector<double>(t.values().begin(), t.values().end()));
    doc["adam"] = {{"lr", adam->config.lr},       {"beta1", adam->config.beta1}, {"beta2", adam->config.beta2},
                   {"eps", adam->config.eps},     {"step", adam->step},          {"first_moment", m},
                   {"second_moment", v}};
  }
  return doc;
}

Network network_from_checkpoint(const nlohmann::json& doc) {
  Network net(doc.at("architecture").get<ArchitectureSpec>(), doc.at("n_series").get<std::size_t>(),
              doc.at("lag").get<int>(), doc.at("horizon").get<int>(), doc.at("seed").get<std::uint64_t>());
  auto params = net.parameters();
  const auto& stored = doc.at("parameters");
  require(stored.size() == params.size(), ErrorKind::kShape, "checkpoint parameter count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    require(stored[i].at("name").get<std::string>() == params[i].name, ErrorKind::kShape,
            "checkpoint parameter order mismatch at '" + params[i].name + "'");
    auto values = stored[i].at("values").get<std::vector<double>>();
    require(values.size() == params[i].tensor->size(), ErrorKind::kShape,
            "checkpoint size mismatch for '" + params[i].name + "'");
    std::copy(values.begin(), values.end(), params[i].tensor->values().begin());
  }
  return net;
}

AdamState adam_from_checkpoint(const nlohmann::json& doc) {
  require(doc.contains("adam"), ErrorKind::kConfig, "checkpoint carries no optimizer state");
  const auto& a = doc.at("adam");
  Network shapes = network_from_checkpoint(doc);
  AdamState state = make_adam_state(shapes.parameters(),
                                    {a.at("lr").get<double>(), a.at("beta1").get<double>(),
                                     a.at("beta2").get<double>(), a.at("eps").get<double>()});
  state.step = a.at("step").get<std::int64_t>();
  const auto& m = a.at("first_moment");
  const auto& v = a.at("second_moment");
  require(m.size() == state.first_moment.size() && v.size() == state.second_moment.size(), ErrorKind::kShape,
          "checkpoint optimizer state size mismatch");
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto mv = m[i].get<std::vector<double>>();
    auto vv = v[i].get<std::vector<double>>();
    require(mv.size() == state.first_moment[i].size() && vv.size() == state.second_moment[i].size(),
            ErrorKind::kShape, "checkpoint optimizer moment size mismatch");
    std::copy(mv.begin(), mv.end(), state.first_moment[i].values().begin());
    std::copy(vv.begin(), vv.end(), state.second_moment[i].values().begin());
  }
  return state;
}

}  // namespace skillcast::nn
