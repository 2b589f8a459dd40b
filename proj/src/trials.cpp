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

#include "cpmap/trials.hpp"

#include <algorithm>
#include <unordered_set>

#include "cpmap/errors.hpp"

namespace cpmap {

namespace {

void check_nonempty_fields(std::span<const Utterance> utts) {
  for (const auto& u : utts) {
    if (u.speaker_id.empty() || u.utt_id.empty()) {
      throw InputError("utterance with empty speaker_id or utt_id");
    }
  }
}

void check_unique_utt_ids(std::span<const Utterance> utts) {
  std::unordered_set<std::string> seen;
  seen.reserve(utts.size());
  for (const auto& u : utts) {
    if (!seen.insert(u.utt_id).second) {
      throw InputError("duplicate utt_id: " + u.utt_id);
    }
  }
}

std::vector<const Utterance*> sorted_by_utt_id(std::span<const Utterance> utts) {
  std::vector<const Utterance*> out;
  out.reserve(utts.size());
  for (const auto& u : utts) out.push_back(&u);
  std::sort(out.begin(), out.end(), [](const Utterance* a, const Utterance* b) {
    return a->utt_id < b->utt_id;
  });
  return out;
}

}  // namespace

TrialKey make_trial_key(const std::string& enroll_id,
                        const std::string& test_id) {
  TrialKey key;
  key.reserve(enroll_id.size() + 1 + test_id.size());
  key.append(enroll_id);
  key.push_back(' ');
  key.append(test_id);
  return key;
}

std::pair<std::string, std::string> split_trial_key(const TrialKey& key) {
  const auto sep = key.find(' ');
  if (sep == std::string::npos) {
    throw InputError("malformed trial key: " + key);
  }
  return {key.substr(0, sep), key.substr(sep + 1)};
}

TrialSet make_trial_set(std::vector<Trial> trials) {
  TrialSet set;
  set.trials = std::move(trials);
  for (const auto& t : set.trials) {
    if (t.label == TrialLabel::target) {
      ++set.num_target;
    } else {
      ++set.num_nontarget;
    }
  }
  return set;
}

TrialSet generate_full_cross_pairing(std::span<const Utterance> utts) {
  if (utts.size() < 2) {
    throw InputError("full cross-pairing needs at least 2 utterances, got " +
                     std::to_string(utts.size()));
  }
  check_nonempty_fields(utts);
  check_unique_utt_ids(utts);

  // Sorting the inputs by utt_id up front makes the double loop emit
  // trials already in lexicographic (enroll_id, test_id) order.
  const auto order = sorted_by_utt_id(utts);

  std::vector<Trial> trials;
  trials.reserve(utts.size() * (utts.size() - 1));
  for (const Utterance* enroll : order) {
    for (const Utterance* test : order) {
      if (enroll == test) continue;
      trials.push_back(Trial{enroll->utt_id, test->utt_id,
                             enroll->speaker_id == test->speaker_id
                                 ? TrialLabel::target
                                 : TrialLabel::nontarget});
    }
  }
  return make_trial_set(std::move(trials));
}

TrialSet generate_enrollment_fixed(std::span<const Utterance> enrollments,
                                   std::span<const Utterance> tests) {
  check_nonempty_fields(enrollments);
  check_nonempty_fields(tests);

  std::unordered_set<std::string> speakers;
  speakers.reserve(enrollments.size());
  for (const auto& e : enrollments) {
    if (!speakers.insert(e.speaker_id).second) {
      throw InputError("two enrollments share speaker_id: " + e.speaker_id);
    }
  }

  std::unordered_set<std::string> enroll_ids;
  enroll_ids.reserve(enrollments.size());
  for (const auto& e : enrollments) {
    if (!enroll_ids.insert(e.utt_id).second) {
      throw InputError("duplicate utt_id: " + e.utt_id);
    }
  }
  {
    std::unordered_set<std::string> test_ids;
    test_ids.reserve(tests.size());
    for (const auto& t : tests) {
      if (!test_ids.insert(t.utt_id).second) {
        throw InputError("duplicate utt_id: " + t.utt_id);
      }
      if (enroll_ids.count(t.utt_id)) {
        throw InputError("utt_id appears in both enrollment and test sets: " +
                         t.utt_id);
      }
    }
  }

  const auto enroll_order = sorted_by_utt_id(enrollments);
  const auto test_order = sorted_by_utt_id(tests);

  std::vector<Trial> trials;
  trials.reserve(enrollments.size() * tests.size());
  for (const Utterance* enroll : enroll_order) {
    for (const Utterance* test : test_order) {
      trials.push_back(Trial{enroll->utt_id, test->utt_id,
                             enroll->speaker_id == test->speaker_id
                                 ? TrialLabel::target
                                 : TrialLabel::nontarget});
    }
  }
  return make_trial_set(std::move(trials));
}

}  // namespace cpmap
