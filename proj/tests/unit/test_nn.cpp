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

#include <doctest.h>

#include <cmath>
#include <random>

#include "expect.hpp"
#include "gradcheck.hpp"
#include "oracles.hpp"
#include "skillcast/nn/adam.hpp"
#include "skillcast/nn/layers.hpp"
#include "skillcast/nn/network.hpp"

using namespace skillcast;
using namespace skillcast::nn;

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Sequence column_sequence(const std::vector<double>& xs) {
  Sequence s(xs.size(), 1, 1);
  for (std::size_t t = 0; t < xs.size(); ++t) s.at(t, 0)[0] = xs[t];
  return s;
}

}  // namespace

TEST_CASE("layer gradients match central differences over 20 seeds") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    CHECK(gradcheck::dense(seed) < 1e-6);
    CHECK(gradcheck::lstm(seed) < 1e-4);
    CHECK(gradcheck::gru(seed) < 1e-4);
    CHECK(gradcheck::conv1d(seed) < 1e-4);
  }
}

TEST_CASE("dense identity and zero input") {
  auto p = DenseParams::zeros(3, 3);
  for (std::size_t i = 0; i < 3; ++i) p.weight[i * 3 + i] = 1.0;
  Matrix x(2, 3, std::vector<double>{1, 2, 3, -4, 5, 6});
  CHECK(dense_forward(p, x) == x);
  p.bias[1] = 7.0;
  const auto y = dense_forward(p, Matrix(1, 3));
  CHECK(y(0, 0) == 0.0);
  CHECK(y(0, 1) == 7.0);
  CHECK_ERROR_KIND(dense_forward(p, Matrix(1, 2)), ErrorKind::kShape);
}

TEST_CASE("zero-parameter recurrent layers output zero") {
  const auto x = column_sequence({0.3, -1.2, 2.0});
  const auto lstm = lstm_forward(LstmParams::zeros(1, 2), x);
  for (double h : lstm.hidden.data) CHECK(h == 0.0);
  for (double c : lstm.cells.data) CHECK(c == 0.0);
  const auto gru = gru_forward(GruParams::zeros(1, 2), x);
  for (double h : gru.hidden.data) CHECK(h == 0.0);
}

TEST_CASE("one-unit LSTM step by hand") {
  auto p = LstmParams::zeros(1, 1);
  p.w_input.fill(0.5);
  p.w_recurrent.fill(0.5);
  const auto cache = lstm_forward(p, column_sequence({1.0}));
  const double i = sigmoid(0.5), f = sigmoid(0.5), g = std::tanh(0.5), o = sigmoid(0.5);
  const double c = f * 0.0 + i * g;
  const double h = o * std::tanh(c);
  CHECK(cache.final_cell(0)[0] == doctest::Approx(c).epsilon(1e-15));
  CHECK(cache.final_hidden(0)[0] == doctest::Approx(h).epsilon(1e-15));
  CHECK(cache.gates.at(0, 0)[2] == doctest::Approx(g).epsilon(1e-15));
}

TEST_CASE("saturated GRU update gate carries the state through") {
  auto p = GruParams::zeros(1, 1);
  // Update gate driven by the input: strongly open at step 0, shut at step 1.
  p.w_input[0] = 5.0;
  p.w_input[2] = 0.1;
  p.bias[2] = 0.3;
  const auto cache = gru_forward(p, column_sequence({-10.0, 10.0}));
  const double h0 = cache.hidden.at(0, 0)[0];
  const double h1 = cache.hidden.at(1, 0)[0];
  CHECK(h0 == doctest::Approx(std::tanh(-1.0 + 0.3)).epsilon(1e-12));
  CHECK(std::abs(h1 - h0) < 1e-6);
}

TEST_CASE("conv with kernel [1, 0] and [0, 1] on [1, 2, 3]") {
  auto p = Conv1dParams::zeros(1, 1, 2);
  p.weight[0] = 1.0;
  auto out = conv1d_forward(p, column_sequence({1, 2, 3})).output;
  CHECK(out.data == std::vector<double>{1, 2, 3});
  p.weight[0] = 0.0;
  p.weight[1] = 1.0;
  out = conv1d_forward(p, column_sequence({1, 2, 3})).output;
  CHECK(out.data == std::vector<double>{2, 3, 0});
  p.weight[1] = -1.0;
  out = conv1d_forward(p, column_sequence({1, 2, 3})).output;
  CHECK(out.data == std::vector<double>{0, 0, 0});
  CHECK_ERROR_KIND(Conv1dParams::zeros(1, 1, 1), ErrorKind::kConfig);
  CHECK_ERROR_KIND(Conv1dParams::zeros(1, 1, 65), ErrorKind::kConfig);
}

TEST_CASE("kernel 64 over 12 steps matches a hand-padded reference") {
  std::mt19937_64 rng(64);
  auto p = Conv1dParams::zeros(2, 3, 64);
  oracle::fill_uniform(p.weight.values(), rng);
  oracle::fill_uniform(p.bias.values(), rng);
  Sequence x(12, 1, 2);
  oracle::fill_uniform(x.data, rng);
  const auto out = conv1d_forward(p, x);
  REQUIRE(out.output.steps == 12);
  // Pad 31 zeros on the left and 32 on the right.
  std::vector<std::vector<double>> padded(2, std::vector<double>(12 + 63, 0.0));
  for (std::size_t t = 0; t < 12; ++t) {
    for (std::size_t c = 0; c < 2; ++c) padded[c][31 + t] = x.at(t, 0)[c];
  }
  for (std::size_t t = 0; t < 12; ++t) {
    for (std::size_t f = 0; f < 3; ++f) {
      double s = p.bias[f];
      for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t j = 0; j < 64; ++j) s += p.weight[(f * 2 + c) * 64 + j] * padded[c][t + j];
      }
      CHECK(out.pre_activation.at(t, 0)[f] == doctest::Approx(s).epsilon(1e-13));
      CHECK(out.output.at(t, 0)[f] == doctest::Approx(std::max(s, 0.0)).epsilon(1e-13));
    }
  }
}

TEST_CASE("mse loss values and gradient") {
  const Matrix zeros(1, 2), ones(1, 2, 1.0);
  CHECK(mse_loss(ones, ones).value == 0.0);
  const auto l = mse_loss(zeros, ones);
  CHECK(l.value == 1.0);
  CHECK(l.gradient(0, 0) == -1.0);
  CHECK_ERROR_KIND(mse_loss(zeros, Matrix(2, 1)), ErrorKind::kShape);

  std::mt19937_64 rng(8);
  Matrix pred(3, 4), target(3, 4);
  oracle::fill_uniform(pred.data(), rng);
  oracle::fill_uniform(target.data(), rng);
  const auto g = mse_loss(pred, target).gradient;
  const auto numeric = oracle::central_difference(pred.data(), [&] { return mse_loss(pred, target).value; });
  for (std::size_t i = 0; i < numeric.size(); ++i) CHECK(std::abs(numeric[i] - g.data()[i]) < 1e-8);
}

TEST_CASE("adam first step follows the bias-corrected formula") {
  Tensor x({2}, std::vector<double>{0.3, -2.0});
  std::vector<ParamRef> params{{"x", &x}};
  AdamConfig cfg;
  cfg.lr = 0.01;
  auto state = make_adam_state(params, cfg);
  std::vector<Tensor> grads{Tensor({2}, std::vector<double>{0.7, -1e-3})};
  adam_step(params, grads, state);
  CHECK(state.step == 1);
  for (std::size_t i = 0; i < 2; ++i) {
    const double g = grads[0][i];
    const double m = (1 - 0.9) * g, v = (1 - 0.999) * g * g;
    const double m_hat = m / (1 - 0.9), v_hat = v / (1 - 0.999);
    const double expected = (i == 0 ? 0.3 : -2.0) - 0.01 * m_hat / (std::sqrt(v_hat) + 1e-8);
    CHECK(std::abs(x[i] - expected) <= 1e-12);
    CHECK(std::abs(x[i] - ((i == 0 ? 0.3 : -2.0) - 0.01 * g / (std::abs(g) + 1e-8))) <= 1e-12);
  }
}

TEST_CASE("adam with zero gradients leaves parameters fixed and decays moments") {
  Tensor x({3}, std::vector<double>{1.0, -2.0, 0.5});
  const Tensor before = x;
  std::vector<ParamRef> params{{"x", &x}};
  auto state = make_adam_state(params);
  state.first_moment[0].fill(0.4);
  state.second_moment[0].fill(0.2);
  std::vector<Tensor> grads{Tensor({3})};
  adam_step(params, grads, state);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(x[i] - before[i]) < 1e-3);
  CHECK(state.first_moment[0][0] == doctest::Approx(0.36));
  CHECK(state.second_moment[0][0] == doctest::Approx(0.2 * 0.999));

  Tensor y({2}, std::vector<double>{1.0, 2.0});
  std::vector<ParamRef> yp{{"y", &y}};
  auto fresh = make_adam_state(yp);
  for (int i = 0; i < 10; ++i) adam_step(yp, std::vector<Tensor>{Tensor({2})}, fresh);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == 2.0);
}

TEST_CASE("adam minimizes x squared") {
  Tensor x({1}, std::vector<double>{1.0});
  std::vector<ParamRef> params{{"x", &x}};
  AdamConfig cfg;
  cfg.lr = 0.05;
  auto state = make_adam_state(params, cfg);
  for (int i = 0; i < 500; ++i) {
    std::vector<Tensor> grads{Tensor({1}, std::vector<double>{2.0 * x[0]})};
    adam_step(params, grads, state);
  }
  CHECK(std::abs(x[0]) < 1e-3);
}

TEST_CASE("adam rejects non-finite gradients and names the parameter") {
  Tensor x({1}, std::vector<double>{1.0});
  std::vector<ParamRef> params{{"head.bias", &x}};
  auto state = make_adam_state(params);
  std::vector<Tensor> grads{Tensor({1}, std::vector<double>{std::nan("")})};
  try {
    adam_step(params, grads, state);
    FAIL("expected a numeric error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNumeric);
    CHECK(std::string(e.what()).find("head.bias") != std::string::npos);
  }
  CHECK(x[0] == 1.0);
}

TEST_CASE("global norm clipping") {
  std::vector<Tensor> g{Tensor({2}, std::vector<double>{3.0, 4.0})};
  CHECK(clip_global_norm(g, 1.0) == doctest::Approx(5.0));
  CHECK(g[0][0] == doctest::Approx(0.6));
  CHECK(g[0][1] == doctest::Approx(0.8));
  CHECK(clip_global_norm(g, 10.0) == doctest::Approx(1.0));
  CHECK(g[0][0] == doctest::Approx(0.6));
}

TEST_CASE("head width is horizon times series") {
  ArchitectureSpec gru{ModelKind::kGru, 1, 2};
  const Network net(gru, 3, 12, 12, 1);
  CHECK(net.output_width() == 36);
  CHECK(net.predict(Matrix(1, 36)).cols() == 36);
  const Network uni(gru, 1, 12, 6, 1);
  CHECK(uni.predict(Matrix(2, 12)).cols() == 6);
  for (auto kind : {ModelKind::kLstm, ModelKind::kGru, ModelKind::kCnnLstm}) {
    for (int layers : {1, 5, 10}) {
      ArchitectureSpec spec{kind, layers, 3, kind == ModelKind::kCnnLstm ? 4 : 0};
      const Network n(spec, 2, 12, 24, 5);
      CHECK(n.predict(Matrix(3, 24)).cols() == 48);
      CHECK(n.recurrent().size() == static_cast<std::size_t>(layers));
    }
  }
}

TEST_CASE("architecture validation") {
  CHECK_ERROR_KIND((ArchitectureSpec{ModelKind::kLstm, 1, 0}.validate()), ErrorKind::kConfig);
  CHECK_ERROR_KIND((ArchitectureSpec{ModelKind::kLstm, 1, 11}.validate()), ErrorKind::kConfig);
  CHECK_ERROR_KIND((ArchitectureSpec{ModelKind::kLstm, 0, 2}.validate()), ErrorKind::kConfig);
  CHECK_ERROR_KIND((ArchitectureSpec{ModelKind::kCnnLstm, 1, 2, 1}.validate()), ErrorKind::kConfig);
  CHECK_NOTHROW((ArchitectureSpec{ModelKind::kCnnLstm, 1, 2, 64}.validate()));
  CHECK(parse_model_kind("cnn+lstm") == ModelKind::kCnnLstm);
  CHECK(parse_model_kind("gru") == ModelKind::kGru);
  CHECK_ERROR_KIND(parse_model_kind("transformer"), ErrorKind::kConfig);
}

TEST_CASE("network gradients match central differences") {
  for (auto kind : {ModelKind::kLstm, ModelKind::kGru, ModelKind::kCnnLstm}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      CAPTURE(to_string(kind));
      CAPTURE(seed);
      ArchitectureSpec spec{kind, 2, 3, kind == ModelKind::kCnnLstm ? 3 : 0};
      Network net(spec, 2, 4, 2, seed);
      std::mt19937_64 rng(seed + 100);
      Matrix x(3, 8), y(3, 4);
      oracle::fill_uniform(x.data(), rng);
      oracle::fill_uniform(y.data(), rng);
      const auto eval = net.evaluate(x, y);
      auto params = net.parameters();
      REQUIRE(params.size() == eval.gradients.size());
      double worst = 0.0;
      for (std::size_t i = 0; i < params.size(); ++i) {
        const auto numeric = oracle::central_difference(params[i].tensor->values(),
                                                        [&] { return net.evaluate(x, y).loss; });
        worst = std::max(worst, oracle::max_relative_error(eval.gradients[i].values(), numeric));
      }
      CHECK(worst < 1e-4);
    }
  }
}

TEST_CASE("forward passes are deterministic and seed-dependent") {
  ArchitectureSpec spec{ModelKind::kCnnLstm, 2, 4, 3};
  const Network a(spec, 3, 12, 6, 9), b(spec, 3, 12, 6, 9), c(spec, 3, 12, 6, 10);
  Matrix x(2, 36);
  std::mt19937_64 rng(1);
  oracle::fill_uniform(x.data(), rng);
  CHECK(a.predict(x) == a.predict(x));
  CHECK(a.predict(x) == b.predict(x));
  CHECK_FALSE(a.predict(x) == c.predict(x));
}

TEST_CASE("initialization stays within the fan-in bound") {
  ArchitectureSpec spec{ModelKind::kLstm, 1, 5};
  const Network net(spec, 2, 12, 6, 3);
  const auto& lstm = std::get<LstmParams>(net.recurrent()[0]);
  for (double w : lstm.w_input.values()) CHECK(std::abs(w) <= 1.0 / std::sqrt(2.0));
  for (double w : lstm.w_recurrent.values()) CHECK(std::abs(w) <= 1.0 / std::sqrt(5.0));
  for (std::size_t r = 5; r < 10; ++r) CHECK(lstm.bias[r] == 1.0);
}

TEST_CASE("checkpoint round-trip is bit-exact") {
  ArchitectureSpec spec{ModelKind::kCnnLstm, 2, 3, 5, 4};
  Network net(spec, 3, 12, 6, 42);
  auto params = net.parameters();
  auto state = make_adam_state(params);
  Matrix x(2, 36), y(2, 18);
  std::mt19937_64 rng(2);
  oracle::fill_uniform(x.data(), rng);
  oracle::fill_uniform(y.data(), rng);
  adam_step(params, net.evaluate(x, y).gradients, state);

  const auto doc = nlohmann::json::parse(to_checkpoint(net, &state).dump());
  const auto back = network_from_checkpoint(doc);
  CHECK(back.spec() == net.spec());
  CHECK(back.seed() == 42);
  CHECK(back.predict(x) == net.predict(x));
  const Network& cnet = net;
  const auto a = cnet.parameters();
  const auto b = back.parameters();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(*a[i].tensor == *b[i].tensor);
  }
  const auto adam = adam_from_checkpoint(doc);
  CHECK(adam.step == 1);
  CHECK(adam.first_moment == state.first_moment);
  CHECK(adam.second_moment == state.second_moment);
  CHECK_ERROR_KIND(adam_from_checkpoint(to_checkpoint(net)), ErrorKind::kConfig);
}
