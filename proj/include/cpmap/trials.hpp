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

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cpmap {

/// One utterance in a test set. utt_id must be unique within a set,
/// speaker_id groups utterances of the same speaker.
struct Utterance {
  std::string speaker_id;
  std::string utt_id;
};

enum class TrialLabel { target, nontarget };

/// A single verification test case: enrollment identity vs. test utterance.
struct Trial {
  std::string enroll_id;
  std::string test_id;
  TrialLabel label = TrialLabel::nontarget;

  bool operator==(const Trial&) const = default;
};

/// An ordered sequence of trials with class counts kept consistent.
struct TrialSet {
  std::vector<Trial> trials;
  std::size_t num_target = 0;
  std::size_t num_nontarget = 0;
};

/// A trial's identity as it appears in score files: "<enroll_id> <test_id>".
/// Ids never contain whitespace, so the single space is an unambiguous
/// separator and lexicographic order on the key matches order on the pair.
using TrialKey = std::string;

TrialKey make_trial_key(const std::string& enroll_id,
                        const std::string& test_id);
std::pair<std::string, std::string> split_trial_key(const TrialKey& key);

/// Builds a TrialSet from trials, computing the class counts.
TrialSet make_trial_set(std::vector<Trial> trials);

/// Pairs every ordered pair of distinct utterances; the pair is a target
/// trial iff both utterances share a speaker. For N speakers with K
/// utterances each this yields NK(K-1) target and N(N-1)K^2 non-target
/// trials. Output is ordered lexicographically by (enroll_id, test_id).
/// Throws InputError on duplicate utt_ids or fewer than 2 utterances.
TrialSet generate_full_cross_pairing(std::span<const Utterance> utts);

/// Pairs every enrollment with every test utterance (one enrollment per
/// speaker). For N speakers and K test utterances per speaker this yields
/// NK target and N(N-1)K non-target trials. Output is ordered
/// lexicographically by (enroll_id, test_id).
/// Throws InputError if two enrollments share a speaker or an utt_id
/// appears in both sets.
TrialSet generate_enrollment_fixed(std::span<const Utterance> enrollments,
                                   std::span<const Utterance> tests);

}  // namespace cpmap
