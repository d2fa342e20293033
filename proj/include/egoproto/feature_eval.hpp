/*
 * Copyright (c) 2026, The egoproto Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <vector>

#include "egoproto/features.hpp"
#include "egoproto/matrix.hpp"

namespace egoproto {

struct SubsetScore {
  FeatureSubset subset;
  double entropy = 0.0;
  double representation_entropy = 0.0;
};

/// Similarity entropy of a point set, averaged over point pairs.
///
/// s = exp(-alpha * d) with alpha = ln 2 / mean(d), so a pair at the mean
/// distance has s = 0.5. Returns the nonnegative (negated) form
/// -mean[s ln s + (1 - s) ln(1 - s)], which lies in [0, ln 2]. All points
/// identical gives 0.
double dataset_entropy(const Matrix& points);
double dataset_entropy(const FeatureMatrix& m);

/// Entropy of the normalized eigenvalue spectrum of the column covariance
/// matrix; ln(cols) for isotropic data, 0 for rank one or zero variance.
double representation_entropy(const Matrix& points);
double representation_entropy(const FeatureMatrix& m);

/// Normalized covariance eigenvalues, descending; they sum to 1 (empty
/// when total variance is zero).
std::vector<double> normalized_covariance_spectrum(const Matrix& points);

SubsetScore score_subset(const FeatureMatrix& normalized, const FeatureSubset& subset);

enum class FeatureSimilarity {
  AbsCorrelation,  // dissimilarity 1 - |pearson|
  Mici,            // maximal information compression index
};

struct FsfsOptions {
  int k_init = 2;
  FeatureSimilarity similarity = FeatureSimilarity::AbsCorrelation;
};

/// Pairwise feature dissimilarity under `similarity`, cols x cols.
Matrix feature_dissimilarity(const Matrix& points, FeatureSimilarity similarity);

/// Unsupervised feature selection by feature similarity: repeatedly keep
/// the feature with the tightest k-neighborhood and drop its k nearest
/// features, shrinking k as neighborhoods loosen. Returns the retained
/// features (id "fsfs"), at least two when the input has two or more.
FeatureSubset fsfs_select(const FeatureMatrix& m, const FsfsOptions& opts = {});

}  // namespace egoproto
