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

#include "cpmap/synth.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cpmap/errors.hpp"

namespace cpmap {

namespace {

void validate_model(const GaussianScoreModel& model) {
  if (!(model.sigma_pos > 0.0) || !(model.sigma_neg > 0.0)) {
    throw InputError("sigmas must be positive");
  }
  if (!std::isfinite(model.mu_pos) || !std::isfinite(model.mu_neg)) {
    throw InputError("means must be finite");
  }
}

// Standard normal deviates via Marsaglia's polar method. No trig calls;
// the uniform stream is the portable mt19937_64 sequence. sqrt is exactly
// rounded everywhere, log is within an ulp or two of it, so the sampled
// stream is reproducible to the last bit on a given platform and libm.
class PolarNormalSampler {
 public:
  explicit PolarNormalSampler(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u;
    double v;
    double s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    have_spare_ = true;
    return u * factor;
  }

 private:
  double uniform() {
    // 53-bit mantissa in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

EerResult analytic_eer(const GaussianScoreModel& model) {
  validate_model(model);
  if (!(model.mu_pos > model.mu_neg)) {
    throw InputError("model needs mu_pos > mu_neg for a well-posed verifier");
  }
  // FRR(t) - FAR(t); strictly increasing in t, negative at lo, positive
  // at hi.
  const auto balance = [&](double t) {
    const double frr = normal_cdf((t - model.mu_pos) / model.sigma_pos);
    const double far = 1.0 - normal_cdf((t - model.mu_neg) / model.sigma_neg);
    return frr - far;
  };
  double lo = model.mu_neg - 10.0 * model.sigma_neg;
  double hi = model.mu_pos + 10.0 * model.sigma_pos;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval below ulp spacing
    if (balance(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double theta = 0.5 * (lo + hi);
  const double frr = normal_cdf((theta - model.mu_pos) / model.sigma_pos);
  const double far = 1.0 - normal_cdf((theta - model.mu_neg) / model.sigma_neg);
  return EerResult{0.5 * (frr + far), theta};
}

ScoredTrials sample_scores(const GaussianScoreModel& model,
                           const SampleSpec& spec) {
  validate_model(model);
  if (spec.n_pos < 1 || spec.n_neg < 1) {
    throw InputError("sample counts must be >= 1");
  }
  PolarNormalSampler sampler(spec.seed);
  ScoredTrials out;
  out.positives.reserve(static_cast<std::size_t>(spec.n_pos));
  out.negatives.reserve(static_cast<std::size_t>(spec.n_neg));
  for (std::int64_t i = 0; i < spec.n_pos; ++i) {
    const std::string id = "pos_" + std::to_string(i);
    out.positives.push_back(ScoredTrial{
        make_trial_key(id, id), model.mu_pos + model.sigma_pos * sampler.next()});
  }
  for (std::int64_t i = 0; i < spec.n_neg; ++i) {
    const std::string id = "neg_" + std::to_string(i);
    out.negatives.push_back(ScoredTrial{
        make_trial_key(id, id), model.mu_neg + model.sigma_neg * sampler.next()});
  }
  return out;
}

}  // namespace cpmap
