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

// Skill embeddings from per-posting co-occurrence, similarity ranking, cluster
// datasets around key skills, and K-means over embedding rows.
//
// Skipgram with negative sampling: every ordered pair of distinct skills in
// a posting is a (center, context) example; each positive update is paired
// with `negatives` draws from the unigram distribution raised to 0.75. The
// learning rate decays linearly from lr_start to lr_end over all updates.
// Examples are visited in corpus order, so training is reproducible.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "skillcast/market_data.hpp"
#include "skillcast/matrix.hpp"

namespace skillcast::cluster {

using Posting = std::vector<std::string>;

std::vector<Posting> postings_from_ads(std::span<const market::JobAdRecord> ads);

class SkillVocabulary {
 public:
  SkillVocabulary() = default;
  // Skills sorted by id; frequency counts the postings that mention a skill.
  static SkillVocabulary from_postings(std::span<const Posting> postings);
  static SkillVocabulary from_skills(std::vector<std::string> skills);

  std::size_t size() const noexcept { return skills_.size(); }
  bool has(const std::string& skill) const { return index_.count(skill) != 0; }
  std::size_t index(const std::string& skill) const;  // kVocabulary if absent
  const std::string& skill(std::size_t i) const { return skills_.at(i); }
  const std::vector<std::string>& skills() const noexcept { return skills_; }
  std::int64_t frequency(std::size_t i) const { return frequency_.at(i); }

 private:
  std::vector<std::string> skills_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::int64_t> frequency_;
};

struct SkipgramConfig {
  std::size_t dim = 30;
  int epochs = 5;
  int negatives = 5;
  double lr_start = 0.025;
  double lr_end = 1e-4;
  double sampling_power = 0.75;
  std::uint64_t seed = 0;
};

struct SkillEmbedding {
  SkillVocabulary vocab;
  Matrix vectors;  // vocab x dim
  SkipgramConfig config;
  // Mean negative-sampling loss per example, one entry per epoch.
  std::vector<double> loss_history;

  std::span<const double> vector(const std::string& skill) const { return vectors.row(vocab.index(skill)); }
};

// kCorpus when no posting has two distinct skills.
SkillEmbedding train_skipgram(std::span<const Posting> postings, const SkipgramConfig& config);

// kShape on unequal lengths; kUndefinedSimilarity when either vector is zero.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

struct ClusterMember {
  std::string skill;
  double similarity = 0.0;
};

struct ClusterDataset {
  std::string key;
  std::vector<ClusterMember> members;  // key first, then by descending similarity
};

inline constexpr std::size_t kDefaultClusterSize = 52;

// Key plus the size - 1 most similar skills; ties go to the smaller skill id.
// kVocabulary for an unknown key; kConfig when size is 0 or exceeds the vocabulary.
ClusterDataset build_cluster_dataset(const SkillEmbedding& embedding, const std::string& key,
                                     std::size_t size = kDefaultClusterSize);

struct KMeansResult {
  std::vector<std::size_t> assignments;
  Matrix centroids;  // k x dim
  // Within-cluster sum of squares after every assignment step.
  std::vector<double> objective_history;
  int iterations = 0;
  bool converged = false;  // stopped at an assignment fixpoint
};

// Lloyd iterations from k distinct points picked uniformly at random.
// Assignment ties go to the lowest centroid index; an empty cluster keeps its
// previous centroid. kConfig unless 1 <= k <= rows.
KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed, int max_iter = 100);

// Header "vocab dim", then "id v_1 ... v_dim" per skill. Ids may contain
// spaces; the last dim fields of each line are the vector.
std::string embedding_to_text(const SkillEmbedding& embedding);
void write_embedding(const std::filesystem::path& path, const SkillEmbedding& embedding);
SkillEmbedding read_embedding(const std::filesystem::path& path);

// key_skill,member_skill,similarity
std::string cluster_to_csv(std::span<const ClusterDataset> clusters);

}  // namespace skillcast::cluster
