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
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpmap/trials.hpp"

namespace cpmap {

/// Lookup table from trial key to a finite real score.
class ScoreTable {
 public:
  struct Entry {
    TrialKey key;
    double score;
    std::size_t line;  // 1-based line in the source file
  };

  /// Takes ownership of parsed entries and indexes them. Throws InputError
  /// on a duplicate key, reporting the later line.
  explicit ScoreTable(std::vector<Entry> entries);

  std::optional<double> lookup(const TrialKey& key) const;
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  static constexpr std::uint32_t kEmptySlot = 0xffffffffu;

  void build_index();
  static std::uint64_t hash_pair_key(std::string_view key);

  std::vector<Entry> entries_;  // input order; never mutated after indexing
  std::vector<std::uint32_t> slots_;  // open-addressing probe table
  std::uint64_t mask_ = 0;
};

/// Trials joined with one system's scores, split by class. The empirical
/// stand-in for the positive and negative score distributions.
struct ScoredTrial {
  TrialKey key;
  double score;
};

struct ScoredTrials {
  std::vector<ScoredTrial> positives;
  std::vector<ScoredTrial> negatives;
};

/// Parses a trials file: one `<enroll> <test> target|nontarget` per line,
/// whitespace-separated, labels case-insensitive. Blank lines and lines
/// starting with '#' are ignored. Throws InputError with a 1-based line
/// number on malformed lines, unknown labels, or duplicate trial pairs.
TrialSet parse_trials(std::istream& in);

/// Parses a scores file: one `<enroll> <test> <score>` per line, the score
/// a finite decimal real (scientific notation accepted). Same framing rules
/// as parse_trials. Throws InputError with line numbers on malformed lines,
/// non-finite scores, or duplicate keys.
ScoreTable parse_scores(std::istream& in);

/// Canonical text forms: lowercase labels, single-space separation, LF line
/// endings. Scores are written with enough digits to round-trip exactly;
/// score entries are emitted sorted by key.
std::string write_trials(const TrialSet& trials);
std::string write_scores(const ScoreTable& scores);

/// Attaches scores to trials and partitions by label, preserving input
/// order within each class. Throws InputError if any trial key is missing
/// from the table (the message lists up to 10 missing keys and the total).
ScoredTrials join(const TrialSet& trials, const ScoreTable& scores);

}  // namespace cpmap
