// Copyright 2026 The cpmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "cpmap/metrics.hpp"
#include "cpmap/score_io.hpp"

namespace cpmap {

/// Class-conditional Gaussian score model: positives ~ N(mu_pos,
/// sigma_pos^2), negatives ~ N(mu_neg, sigma_neg^2).
struct GaussianScoreModel {
  double mu_pos = 0.0;
  double sigma_pos = 1.0;
  double mu_neg = 0.0;
  double sigma_neg = 1.0;
};

struct SampleSpec {
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;
  std::uint64_t seed = 0;
};

/// Standard normal CDF, Phi(x) = erfc(-x / sqrt(2)) / 2. The erfc form
/// keeps the lower tail accurate where 1 + erf would cancel.
double normal_cdf(double x);

/// Closed-form counterpart of the empirical EER: solves
///   Phi((t - mu_pos)/sigma_pos) = 1 - Phi((t - mu_neg)/sigma_neg)
/// for the unique threshold t (the left side rises, the right side falls)
/// by bisection over [mu_neg - 10*sigma_neg, mu_pos + 10*sigma_pos] to a
/// 1e-12 interval, which also covers unequal variances. Requires
/// mu_pos > mu_neg and positive sigmas; throws InputError otherwise.
EerResult analytic_eer(const GaussianScoreModel& model);

/// Draws n_pos positive and n_neg negative scores i.i.d. from the model.
/// The stream is fully determined by the seed: a mt19937_64 engine drives
/// Marsaglia's polar method (53-bit uniforms in (-1,1), rejected until
/// inside the unit disc; both antithetic outputs consumed in order), with
/// all positives drawn before all negatives. Trial keys are self-pairs
/// pos_<i> / neg_<i>.
ScoredTrials sample_scores(const GaussianScoreModel& model,
                           const SampleSpec& spec);

}  // namespace cpmap
