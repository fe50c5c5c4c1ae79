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

#include "skillcast/nn/layers.hpp"

#include <cmath>
#include <vector>

#include "skillcast/error.hpp"
#include "skillcast/kernels.hpp"

namespace skillcast::nn {
namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_features(const Sequence& input, std::size_t expected, const char* layer) {
  require(input.features == expected, ErrorKind::kShape,
          std::string(layer) + " expects " + std::to_string(expected) + " input features, got " +
              std::to_string(input.features));
  require(input.steps > 0 && input.batch > 0, ErrorKind::kShape, std::string(layer) + " got an empty sequence");
}

void check_same_shape(const Sequence& a, const Sequence& b, const char* what) {
  require(a.steps == b.steps && a.batch == b.batch && a.features == b.features, ErrorKind::kShape,
          std::string(what) + " gradient shape does not match the layer output");
}

}  // namespace

void init_uniform(Tensor& tensor, std::size_t fan_in, std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (auto& v : tensor.values()) v = dist(rng);
}

// --- dense ---------------------------------------------------------------------

DenseParams DenseParams::zeros(std::size_t in, std::size_t out) {
  return {Tensor({out, in}), Tensor({out})};
}

Matrix dense_forward(const DenseParams& params, const Matrix& input) {
  const auto& k = kernels::active();
  const std::size_t in = params.in_size();
  const std::size_t out_size = params.out_size();
  require(input.cols() == in, ErrorKind::kShape,
          "dense layer expects width " + std::to_string(in) + ", got " + std::to_string(input.cols()));
  Matrix out(input.rows(), out_size);
  for (std::size_t b = 0; b < input.rows(); ++b) {
    const double* x = input.row(b).data();
    for (std::size_t o = 0; o < out_size; ++o) {
      out(b, o) = k.dot(params.weight.row(o).data(), x, in) + params.bias[o];
    }
  }
  return out;
}

DenseGradients dense_backward(const DenseParams& params, const Matrix& input, const Matrix& grad_output) {
  const auto& k = kernels::active();
  const std::size_t in = params.in_size();
  const std::size_t out_size = params.out_size();
  require(input.cols() == in, ErrorKind::kShape, "dense backward: input width mismatch");
  require(grad_output.rows() == input.rows() && grad_output.cols() == out_size, ErrorKind::kShape,
          "dense backward: gradient shape mismatch");
  DenseGradients g{DenseParams::zeros(in, out_size), Matrix(input.rows(), in)};
  for (std::size_t b = 0; b < input.rows(); ++b) {
    const double* x = input.row(b).data();
    double* dx = g.input.row(b).data();
    for (std::size_t o = 0; o < out_size; ++o) {
      const double go = grad_output(b, o);
      k.axpy(go, x, g.params.weight.row(o).data(), in);
      g.params.bias[o] += go;
      k.axpy(go, params.weight.row(o).data(), dx, in);
    }
  }
  return g;
}

// --- LSTM ----------------------------------------------------------------------

LstmParams LstmParams::zeros(std::size_t in, std::size_t hidden) {
  return {Tensor({4 * hidden, in}), Tensor({4 * hidden, hidden}), Tensor({4 * hidden})};
}

LstmCache lstm_forward(const LstmParams& params, const Sequence& input) {
  const auto& k = kernels::active();
  const std::size_t in = params.input_size();
  const std::size_t H = params.hidden_size();
  check_features(input, in, "LSTM");
  const std::size_t T = input.steps;
  const std::size_t B = input.batch;

  LstmCache cache{input, Sequence(T, B, 4 * H), Sequence(T, B, H), Sequence(T, B, H)};
  const std::vector<double> zero(H, 0.0);
  std::vector<double> z(4 * H);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t b = 0; b < B; ++b) {
      const double* x = input.at(t, b).data();
      const double* hp = t ? cache.hidden.at(t - 1, b).data() : zero.data();
      const double* cp = t ? cache.cells.at(t - 1, b).data() : zero.data();
      for (std::size_t r = 0; r < 4 * H; ++r) {
        z[r] = params.bias[r] + k.dot(params.w_input.row(r).data(), x, in) +
               k.dot(params.w_recurrent.row(r).data(), hp, H);
      }
      auto gates = cache.gates.at(t, b);
      auto c = cache.cells.at(t, b);
      auto h = cache.hidden.at(t, b);
      for (std::size_t j = 0; j < H; ++j) {
        const double ig = sigmoid(z[j]);
        const double fg = sigmoid(z[H + j]);
        const double gg = std::tanh(z[2 * H + j]);
        const double og = sigmoid(z[3 * H + j]);
        gates[j] = ig;
        gates[H + j] = fg;
        gates[2 * H + j] = gg;
        gates[3 * H + j] = og;
        c[j] = fg * cp[j] + ig * gg;
        h[j] = og * std::tanh(c[j]);
      }
    }
  }
  return cache;
}

LstmGradients lstm_backward(const LstmParams& params, const LstmCache& cache, const Sequence& grad_hidden) {
  const auto& k = kernels::active();
  const std::size_t in = params.input_size();
  const std::size_t H = params.hidden_size();
  check_same_shape(grad_hidden, cache.hidden, "LSTM");
  const std::size_t T = cache.input.steps;
  const std::size_t B = cache.input.batch;

  LstmGradients g{LstmParams::zeros(in, H), Sequence(T, B, in)};
  const std::vector<double> zero(H, 0.0);
  std::vector<double> dz(4 * H), dh_next(H), dc_next(H), dh(H);
  for (std::size_t b = 0; b < B; ++b) {
    std::fill(dh_next.begin(), dh_next.end(), 0.0);
    std::fill(dc_next.begin(), dc_next.end(), 0.0);
    for (std::size_t t = T; t-- > 0;) {
      const auto gates = cache.gates.at(t, b);
      const auto c = cache.cells.at(t, b);
      const double* x = cache.input.at(t, b).data();
      const double* hp = t ? cache.hidden.at(t - 1, b).data() : zero.data();
      const double* cp = t ? cache.cells.at(t - 1, b).data() : zero.data();
      const auto gh = grad_hidden.at(t, b);
      for (std::size_t j = 0; j < H; ++j) {
        const double ig = gates[j];
        const double fg = gates[H + j];
        const double gg = gates[2 * H + j];
        const double og = gates[3 * H + j];
        const double tc = std::tanh(c[j]);
        const double dhj = gh[j] + dh_next[j];
        const double d_o = dhj * tc;
        const double dc = dhj * og * (1.0 - tc * tc) + dc_next[j];
        dz[j] = dc * gg * ig * (1.0 - ig);
        dz[H + j] = dc * cp[j] * fg * (1.0 - fg);
        dz[2 * H + j] = dc * ig * (1.0 - gg * gg);
        dz[3 * H + j] = d_o * og * (1.0 - og);
        dc_next[j] = dc * fg;
      }
      std::fill(dh_next.begin(), dh_next.end(), 0.0);
      double* dx = g.input.at(t, b).data();
      for (std::size_t r = 0; r < 4 * H; ++r) {
        const double d = dz[r];
        k.axpy(d, x, g.params.w_input.row(r).data(), in);
        k.axpy(d, hp, g.params.w_recurrent.row(r).data(), H);
        g.params.bias[r] += d;
        k.axpy(d, params.w_input.row(r).data(), dx, in);
        k.axpy(d, params.w_recurrent.row(r).data(), dh_next.data(), H);
      }
    }
  }
  return g;
}

// --- GRU -----------------------------------------------------------------------

GruParams GruParams::zeros(std::size_t in, std::size_t hidden) {
  return {Tensor({3 * hidden, in}), Tensor({3 * hidden, hidden}), Tensor({3 * hidden})};
}

GruCache gru_forward(const GruParams& params, const Sequence& input) {
  const auto& k = kernels::active();
  const std::size_t in = params.input_size();
  const std::size_t H = params.hidden_size();
  check_features(input, in, "GRU");
  const std::size_t T = input.steps;
  const std::size_t B = input.batch;

  GruCache cache{input, Sequence(T, B, 3 * H), Sequence(T, B, H)};
  const std::vector<double> zero(H, 0.0);
  std::vector<double> rh(H);
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t b = 0; b < B; ++b) {
      const double* x = input.at(t, b).data();
      const double* hp = t ? cache.hidden.at(t - 1, b).data() : zero.data();
      auto gates = cache.gates.at(t, b);
      for (std::size_t r = 0; r < 2 * H; ++r) {
        gates[r] = sigmoid(params.bias[r] + k.dot(params.w_input.row(r).data(), x, in) +
                           k.dot(params.w_recurrent.row(r).data(), hp, H));
      }
      for (std::size_t j = 0; j < H; ++j) rh[j] = gates[H + j] * hp[j];
      auto h = cache.hidden.at(t, b);
      for (std::size_t j = 0; j < H; ++j) {
        const std::size_t r = 2 * H + j;
        const double n = std::tanh(params.bias[r] + k.dot(params.w_input.row(r).data(), x, in) +
                                   k.dot(params.w_recurrent.row(r).data(), rh.data(), H));
        gates[r] = n;
        const double zg = gates[j];
        h[j] = zg * hp[j] + (1.0 - zg) * n;
      }
    }
  }
  return cache;
}

GruGradients gru_backward(const GruParams& params, const GruCache& cache, const Sequence& grad_hidden) {
  const auto& k = kernels::active();
  const std::size_t in = params.input_size();
  const std::size_t H = params.hidden_size();
  check_same_shape(grad_hidden, cache.hidden, "GRU");
  const std::size_t T = cache.input.steps;
  const std::size_t B = cache.input.batch;

  GruGradients g{GruParams::zeros(in, H), Sequence(T, B, in)};
  const std::vector<double> zero(H, 0.0);
  std::vector<double> dh_next(H), dh(H), da(3 * H), d_rh(H), rh(H);
  for (std::size_t b = 0; b < B; ++b) {
    std::fill(dh_next.begin(), dh_next.end(), 0.0);
    for (std::size_t t = T; t-- > 0;) {
      const auto gates = cache.gates.at(t, b);
      const double* x = cache.input.at(t, b).data();
      const double* hp = t ? cache.hidden.at(t - 1, b).data() : zero.data();
      const auto gh = grad_hidden.at(t, b);
      double* dx = g.input.at(t, b).data();

      for (std::size_t j = 0; j < H; ++j) {
        const double zg = gates[j];
        const double n = gates[2 * H + j];
        dh[j] = gh[j] + dh_next[j];
        da[j] = dh[j] * (hp[j] - n) * zg * (1.0 - zg);  // update gate pre-activation
        da[2 * H + j] = dh[j] * (1.0 - zg) * (1.0 - n * n);
        dh_next[j] = dh[j] * zg;
        rh[j] = gates[H + j] * hp[j];
      }

      std::fill(d_rh.begin(), d_rh.end(), 0.0);
      for (std::size_t j = 0; j < H; ++j) {
        const std::size_t r = 2 * H + j;
        const double d = da[r];
        k.axpy(d, x, g.params.w_input.row(r).data(), in);
        k.axpy(d, rh.data(), g.params.w_recurrent.row(r).data(), H);
        g.params.bias[r] += d;
        k.axpy(d, params.w_input.row(r).data(), dx, in);
        k.axpy(d, params.w_recurrent.row(r).data(), d_rh.data(), H);
      }
      for (std::size_t j = 0; j < H; ++j) {
        const double rg = gates[H + j];
        da[H + j] = d_rh[j] * hp[j] * rg * (1.0 - rg);
        dh_next[j] += d_rh[j] * rg;
      }
      for (std::size_t r = 0; r < 2 * H; ++r) {
        const double d = da[r];
        k.axpy(d, x, g.params.w_input.row(r).data(), in);
        k.axpy(d, hp, g.params.w_recurrent.row(r).data(), H);
        g.params.bias[r] += d;
        k.axpy(d, params.w_input.row(r).data(), dx, in);
        k.axpy(d, params.w_recurrent.row(r).data(), dh_next.data(), H);
      }
    }
  }
  return g;
}

// --- Conv1D --------------------------------------------------------------------

Conv1dParams Conv1dParams::zeros(std::size_t channels, std::size_t filters, std::size_t kernel) {
  require(kernel >= kMinKernel && kernel <= kMaxKernel, ErrorKind::kConfig,
          "conv kernel " + std::to_string(kernel) + " outside [2, 64]");
  require(channels >= 1 && filters >= 1, ErrorKind::kConfig, "conv needs at least one channel and filter");
  return {Tensor({filters, channels, kernel}), Tensor({filters})};
}

namespace {

// Channel-major zero-padded copy of one sample: buf[c * padded + p].
void pad_sample(const Sequence& input, std::size_t b, std::size_t pad_left, std::size_t padded,
                std::vector<double>& buf) {
  const std::size_t C = input.features;
  buf.assign(C * padded, 0.0);
  for (std::size_t t = 0; t < input.steps; ++t) {
    const auto x = input.at(t, b);
    for (std::size_t c = 0; c < C; ++c) buf[c * padded + t + pad_left] = x[c];
  }
}

}  // namespace

Conv1dCache conv1d_forward(const Conv1dParams& params, const Sequence& input) {
  const auto& k = kernels::active();
  const std::size_t K = params.kernel();
  require(K >= kMinKernel && K <= kMaxKernel, ErrorKind::kConfig,
          "conv kernel " + std::to_string(K) + " outside [2, 64]");
  check_features(input, params.channels(), "Conv1D");
  const std::size_t T = input.steps;
  const std::size_t B = input.batch;
  const std::size_t C = params.channels();
  const std::size_t F = params.filters();
  const std::size_t pl = params.pad_left();
  const std::size_t padded = T + K - 1;

  Conv1dCache cache{input, Sequence(T, B, F), Sequence(T, B, F)};
  std::vector<double> buf;
  for (std::size_t b = 0; b < B; ++b) {
    pad_sample(input, b, pl, padded, buf);
    for (std::size_t t = 0; t < T; ++t) {
      auto pre = cache.pre_activation.at(t, b);
      auto out = cache.output.at(t, b);
      for (std::size_t f = 0; f < F; ++f) {
        double s = params.bias[f];
        for (std::size_t c = 0; c < C; ++c) {
          s += k.dot(params.weight.data() + (f * C + c) * K, buf.data() + c * padded + t, K);
        }
        pre[f] = s;
        out[f] = s > 0.0 ? s : 0.0;
      }
    }
  }
  return cache;
}

Conv1dGradients conv1d_backward(const Conv1dParams& params, const Conv1dCache& cache, const Sequence& grad_output) {
  const auto& k = kernels::active();
  check_same_shape(grad_output, cache.output, "Conv1D");
  const std::size_t T = cache.input.steps;
  const std::size_t B = cache.input.batch;
  const std::size_t C = params.channels();
  const std::size_t F = params.filters();
  const std::size_t K = params.kernel();
  const std::size_t pl = params.pad_left();
  const std::size_t padded = T + K - 1;

  Conv1dGradients g{Conv1dParams::zeros(C, F, K), Sequence(T, B, C)};
  std::vector<double> buf, dbuf;
  for (std::size_t b = 0; b < B; ++b) {
    pad_sample(cache.input, b, pl, padded, buf);
    dbuf.assign(C * padded, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
      const auto pre = cache.pre_activation.at(t, b);
      const auto go = grad_output.at(t, b);
      for (std::size_t f = 0; f < F; ++f) {
        if (pre[f] <= 0.0) continue;
        const double d = go[f];
        g.params.bias[f] += d;
        for (std::size_t c = 0; c < C; ++c) {
          k.axpy(d, buf.data() + c * padded + t, g.params.weight.data() + (f * C + c) * K, K);
          k.axpy(d, params.weight.data() + (f * C + c) * K, dbuf.data() + c * padded + t, K);
        }
      }
    }
    for (std::size_t t = 0; t < T; ++t) {
      auto dx = g.input.at(t, b);
      for (std::size_t c = 0; c < C; ++c) dx[c] = dbuf[c * padded + t + pl];
    }
  }
  return g;
}

// --- loss ----------------------------------------------------------------------

LossResult mse_loss(const Matrix& prediction, const Matrix& target) {
  require(prediction.rows() == target.rows() && prediction.cols() == target.cols(), ErrorKind::kShape,
          "mse: prediction and target shapes differ");
  require(!prediction.empty(), ErrorKind::kShape, "mse: empty input");
  const auto n = static_cast<double>(prediction.size());
  LossResult out{0.0, Matrix(prediction.rows(), prediction.cols())};
  out.value = kernels::sum_sq_diff(prediction.data(), target.data()) / n;
  for (std::size_t i = 0; i < prediction.size(); ++i) {
    out.gradient.data()[i] = 2.0 * (prediction.data()[i] - target.data()[i]) / n;
  }
  return out;
}

}  // namespace skillcast::nn
