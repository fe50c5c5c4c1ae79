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

#include "skillcast/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "skillcast/csv.hpp"
#include "skillcast/error.hpp"
#include "skillcast/kernels.hpp"
#include "skillcast/seed.hpp"

namespace skillcast::cluster {

std::vector<Posting> postings_from_ads(std::span<const market::JobAdRecord> ads) {
  std::vector<Posting> out;
  out.reserve(ads.size());
  for (const auto& ad : ads) out.push_back(ad.skills);
  return out;
}

// --- vocabulary ----------------------------------------------------------------

SkillVocabulary SkillVocabulary::from_postings(std::span<const Posting> postings) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& p : postings) {
    Posting unique = p;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto& s : unique) ++counts[s];
  }
  SkillVocabulary v;
  for (const auto& [skill, n] : counts) {
    v.index_[skill] = v.skills_.size();
    v.skills_.push_back(skill);
    v.frequency_.push_back(n);
  }
  return v;
}

SkillVocabulary SkillVocabulary::from_skills(std::vector<std::string> skills) {
  std::sort(skills.begin(), skills.end());
  skills.erase(std::unique(skills.begin(), skills.end()), skills.end());
  SkillVocabulary v;
  for (auto& s : skills) {
    v.index_[s] = v.skills_.size();
    v.skills_.push_back(std::move(s));
    v.frequency_.push_back(1);
  }
  return v;
}

std::size_t SkillVocabulary::index(const std::string& skill) const {
  const auto it = index_.find(skill);
  require(it != index_.end(), ErrorKind::kVocabulary, "unknown skill '" + skill + "'");
  return it->second;
}

// --- skipgram ------------------------------------------------------------------

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(sigmoid(x)) without overflow for large |x|.
double log_sigmoid(double x) { return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

}  // namespace

SkillEmbedding train_skipgram(std::span<const Posting> postings, const SkipgramConfig& config) {
  require(config.dim >= 1, ErrorKind::kConfig, "embedding dim must be >= 1");
  require(config.epochs >= 1, ErrorKind::kConfig, "skipgram epochs must be >= 1");
  require(config.negatives >= 0, ErrorKind::kConfig, "negative count must be >= 0");
  require(config.lr_start > 0.0 && config.lr_end >= 0.0, ErrorKind::kConfig, "learning rates must be positive");

  SkillEmbedding out;
  out.vocab = SkillVocabulary::from_postings(postings);
  out.config = config;
  const std::size_t V = out.vocab.size();
  require(V >= 2, ErrorKind::kCorpus, "corpus needs at least two distinct skills");

  // Postings as index lists (duplicates removed).
  std::vector<std::vector<std::size_t>> docs;
  std::size_t pairs = 0;
  for (const auto& p : postings) {
    std::vector<std::size_t> ids;
    for (const auto& s : p) ids.push_back(out.vocab.index(s));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() < 2) continue;
    pairs += ids.size() * (ids.size() - 1);
    docs.push_back(std::move(ids));
  }
  require(pairs > 0, ErrorKind::kCorpus, "corpus has no co-occurring skill pairs");

  std::vector<double> cumulative(V);
  double acc = 0.0;
  for (std::size_t i = 0; i < V; ++i) {
    acc += std::pow(static_cast<double>(out.vocab.frequency(i)), config.sampling_power);
    cumulative[i] = acc;
  }

  std::mt19937_64 rng(derive_seed(config.seed, "skipgram"));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    const double u = unit(rng) * acc;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), V - 1);
  };

  const std::size_t D = config.dim;
  Matrix input(V, D);
  Matrix output(V, D);
  const double half = 0.5 / static_cast<double>(D);
  for (std::size_t i = 0; i < V; ++i) {
    for (auto& w : input.row(i)) w = (unit(rng) * 2.0 - 1.0) * half;
  }

  const double total = static_cast<double>(pairs) * config.epochs;
  double done = 0.0;
  std::vector<double> grad_center(D);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double loss = 0.0;
    for (const auto& doc : docs) {
      for (std::size_t center : doc) {
        for (std::size_t context : doc) {
          if (context == center) continue;
          const double lr = config.lr_start - (config.lr_start - config.lr_end) * (done / total);
          done += 1.0;
          auto in = input.row(center);
          std::fill(grad_center.begin(), grad_center.end(), 0.0);
          for (int k = 0; k <= config.negatives; ++k) {
            std::size_t target = context;
            double label = 1.0;
            if (k > 0) {
              target = draw();
              if (target == context) continue;
              label = 0.0;
            }
            auto out_vec = output.row(target);
            const double score = kernels::dot(in, out_vec);
            loss -= label > 0.0 ? log_sigmoid(score) : log_sigmoid(-score);
            const double g = (label - sigmoid(score)) * lr;
            kernels::axpy(g, out_vec, grad_center);
            kernels::axpy(g, in, out_vec);
          }
          kernels::axpy(1.0, grad_center, in);
        }
      }
    }
    out.loss_history.push_back(loss / static_cast<double>(pairs));
  }
  for (double v : input.data()) require(std::isfinite(v), ErrorKind::kNumeric, "skipgram produced a non-finite weight");
  out.vectors = std::move(input);
  return out;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  require(u.size() == v.size(), ErrorKind::kShape, "cosine similarity needs vectors of equal length");
  const double uu = kernels::dot(u, u);
  const double vv = kernels::dot(v, v);
  require(uu > 0.0 && vv > 0.0, ErrorKind::kUndefinedSimilarity, "cosine similarity of a zero vector");
  return std::clamp(kernels::dot(u, v) / std::sqrt(uu * vv), -1.0, 1.0);
}

ClusterDataset build_cluster_dataset(const SkillEmbedding& embedding, const std::string& key, std::size_t size) {
  const std::size_t V = embedding.vocab.size();
  const std::size_t k = embedding.vocab.index(key);
  require(size >= 1 && size <= V, ErrorKind::kConfig,
          "cluster size " + std::to_string(size) + " must be in [1, " + std::to_string(V) + "]");
  const auto kv = embedding.vectors.row(k);
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < V; ++i) {
    if (i != k) scored.emplace_back(cosine_similarity(kv, embedding.vectors.row(i)), i);
  }
  const auto better = [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); };
  const std::size_t take = size - 1;
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(), better);
  ClusterDataset out;
  out.key = key;
  out.members.push_back({key, 1.0});
  for (std::size_t i = 0; i < take; ++i) out.members.push_back({embedding.vocab.skill(scored[i].second), scored[i].first});
  return out;
}

// --- k-means -------------------------------------------------------------------

KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed, int max_iter) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  require(k >= 1 && k <= n, ErrorKind::kConfig,
          "k = " + std::to_string(k) + " must be in [1, " + std::to_string(n) + "]");
  require(max_iter >= 1, ErrorKind::kConfig, "max_iter must be >= 1");

  // k distinct indices by a partial Fisher-Yates shuffle.
  std::mt19937_64 rng(derive_seed(seed, "kmeans-init"));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  KMeansResult out;
  out.centroids = Matrix(k, d);
  for (std::size_t c = 0; c < k; ++c) {
    const auto src = points.row(order[c]);
    std::copy(src.begin(), src.end(), out.centroids.row(c).begin());
  }

  std::vector<std::size_t> previous;
  out.assignments.assign(n, 0);
  for (int iter = 0; iter < max_iter; ++iter) {
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = kernels::sum_sq_diff(points.row(i), out.centroids.row(0));
      for (std::size_t c = 1; c < k; ++c) {
        const double dist = kernels::sum_sq_diff(points.row(i), out.centroids.row(c));
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      out.assignments[i] = best;
      objective += best_d;
    }
    out.objective_history.push_back(objective);
    out.iterations = iter + 1;
    if (out.assignments == previous) {
      out.converged = true;
      break;
    }
    previous = out.assignments;

    Matrix sums(k, d);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      kernels::axpy(1.0, points.row(i), sums.row(out.assignments[i]));
      ++counts[out.assignments[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      auto dst = out.centroids.row(c);
      const auto src = sums.row(c);
      for (std::size_t j = 0; j < d; ++j) dst[j] = src[j] / static_cast<double>(counts[c]);
    }
  }
  return out;
}

// --- files ---------------------------------------------------------------------

std::string embedding_to_text(const SkillEmbedding& embedding) {
  std::ostringstream os;
  os << embedding.vocab.size() << ' ' << embedding.vectors.cols() << '\n';
  for (std::size_t i = 0; i < embedding.vocab.size(); ++i) {
    os << embedding.vocab.skill(i);
    for (double v : embedding.vectors.row(i)) os << ' ' << csv::format_number(v, 17);
    os << '\n';
  }
  return os.str();
}

void write_embedding(const std::filesystem::path& path, const SkillEmbedding& embedding) {
  csv::write_text(path, embedding_to_text(embedding));
}

SkillEmbedding read_embedding(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot read embedding file '" + path.string() + "'");
  std::size_t vocab = 0, dim = 0;
  std::string header;
  std::getline(in, header);
  {
    std::istringstream hs(header);
    require(static_cast<bool>(hs >> vocab >> dim) && dim >= 1, ErrorKind::kInvalidInput,
            "embedding file '" + path.string() + "' has a malformed header");
  }
  std::vector<std::string> skills;
  Matrix vectors(vocab, dim);
  std::string line;
  for (std::size_t i = 0; i < vocab; ++i) {
    require(static_cast<bool>(std::getline(in, line)), ErrorKind::kInvalidInput,
            "embedding file '" + path.string() + "' ends after " + std::to_string(i) + " rows");
    auto fields = csv::split(line, ' ');
    require(fields.size() >= dim + 1, ErrorKind::kInvalidInput,
            "embedding row " + std::to_string(i + 1) + " has too few fields");
    const std::size_t id_fields = fields.size() - dim;
    std::string id = fields[0];
    for (std::size_t f = 1; f < id_fields; ++f) id += ' ' + fields[f];
    for (std::size_t j = 0; j < dim; ++j) vectors(i, j) = csv::parse_double(fields[id_fields + j], "embedding value");
    skills.push_back(std::move(id));
  }
  SkillEmbedding out;
  out.vocab = SkillVocabulary::from_skills(skills);
  require(out.vocab.size() == vocab, ErrorKind::kInvalidInput, "embedding file has duplicate skill ids");
  out.vectors = Matrix(vocab, dim);
  for (std::size_t i = 0; i < vocab; ++i) {
    const auto src = vectors.row(i);
    std::copy(src.begin(), src.end(), out.vectors.row(out.vocab.index(skills[i])).begin());
  }
  out.config.dim = dim;
  return out;
}

std::string cluster_to_csv(std::span<const ClusterDataset> clusters) {
  std::ostringstream os;
  os << "key_skill,member_skill,similarity\n";
  for (const auto& c : clusters) {
    for (const auto& m : c.members) {
      os << csv::escape(c.key) << ',' << csv::escape(m.skill) << ',' << csv::format_number(m.similarity, 17) << '\n';
    }
  }
  return os.str();
}

}  // namespace skillcast::cluster
