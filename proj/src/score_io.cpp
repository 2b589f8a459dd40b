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

#include "cpmap/score_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>

#include "cpmap/errors.hpp"
#include "text_lines.hpp"

namespace cpmap {

using text::fail_line;
using text::for_each_line;
using text::split_fields;

namespace {

std::uint64_t hash_pair(std::string_view enroll, std::string_view test) {
  const std::hash<std::string_view> h;
  std::uint64_t combined = h(enroll);
  combined ^= h(test) + 0x9e3779b97f4a7c15ULL + (combined << 6) +
              (combined >> 2);
  return combined;
}

// Case-insensitive match without allocating.
bool token_is(std::string_view token, std::string_view lowercase) {
  if (token.size() != lowercase.size()) return false;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(token[i])) != lowercase[i]) {
      return false;
    }
  }
  return true;
}

double parse_score_token(std::string_view token, std::size_t line_no) {
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const char* end = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(body.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    fail_line(line_no, "cannot parse score '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    fail_line(line_no, "non-finite score '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

// Open-addressing index over the entries: a power-of-two probe table of
// entry indices. Node-based maps cost a pointer chase per lookup, which
// adds up over million-line score files.
void ScoreTable::build_index() {
  std::size_t capacity = 1;
  while (capacity < 2 * entries_.size() + 1) capacity <<= 1;
  slots_.assign(capacity, kEmptySlot);
  mask_ = capacity - 1;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    std::size_t slot = hash_pair_key(entries_[i].key) & mask_;
    while (slots_[slot] != kEmptySlot) {
      if (entries_[slots_[slot]].key == entries_[i].key) {
        fail_line(entries_[i].line,
                  "duplicate key '" + entries_[i].key +
                      "' (first seen at line " +
                      std::to_string(entries_[slots_[slot]].line) + ")");
      }
      slot = (slot + 1) & mask_;
    }
    slots_[slot] = static_cast<std::uint32_t>(i);
  }
}

std::uint64_t ScoreTable::hash_pair_key(std::string_view key) {
  return std::hash<std::string_view>{}(key);
}

ScoreTable::ScoreTable(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  if (entries_.size() >= kEmptySlot) {
    throw InputError("score table too large");
  }
  build_index();
}

std::optional<double> ScoreTable::lookup(const TrialKey& key) const {
  std::size_t slot = hash_pair_key(key) & mask_;
  while (slots_[slot] != kEmptySlot) {
    const Entry& entry = entries_[slots_[slot]];
    if (entry.key == key) return entry.score;
    slot = (slot + 1) & mask_;
  }
  return std::nullopt;
}

TrialSet parse_trials(std::istream& in) {
  std::vector<Trial> trials;
  std::vector<std::size_t> lines;
  for_each_line(in, [&](std::size_t line_no, std::string_view line) {
    std::array<std::string_view, 3> f;
    const std::size_t n = split_fields(line, f);
    if (n != 3) {
      fail_line(line_no, "expected 3 fields <enroll> <test> <label>, got " +
                             std::to_string(n));
    }
    TrialLabel lbl;
    if (token_is(f[2], "target")) {
      lbl = TrialLabel::target;
    } else if (token_is(f[2], "nontarget")) {
      lbl = TrialLabel::nontarget;
    } else {
      fail_line(line_no, "unknown label '" + std::string(f[2]) +
                             "' (expected target or nontarget)");
    }
    trials.push_back(Trial{std::string(f[0]), std::string(f[1]), lbl});
    lines.push_back(line_no);
  });

  // Duplicate-pair detection: sort by hash, then verify the rare equal-hash
  // runs against the actual ids. Avoids materializing a set of keys.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> hashed;
  hashed.reserve(trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) {
    hashed.emplace_back(hash_pair(trials[i].enroll_id, trials[i].test_id),
                        static_cast<std::uint32_t>(i));
  }
  std::sort(hashed.begin(), hashed.end());
  for (std::size_t i = 0; i + 1 < hashed.size(); ++i) {
    for (std::size_t j = i + 1;
         j < hashed.size() && hashed[j].first == hashed[i].first; ++j) {
      const Trial& a = trials[hashed[i].second];
      const Trial& b = trials[hashed[j].second];
      if (a.enroll_id == b.enroll_id && a.test_id == b.test_id) {
        const std::size_t later =
            std::max(lines[hashed[i].second], lines[hashed[j].second]);
        fail_line(later, "duplicate trial pair '" + a.enroll_id + " " +
                             a.test_id + "'");
      }
    }
  }
  return make_trial_set(std::move(trials));
}

ScoreTable parse_scores(std::istream& in) {
  std::vector<ScoreTable::Entry> entries;
  for_each_line(in, [&](std::size_t line_no, std::string_view line) {
    std::array<std::string_view, 3> f;
    const std::size_t n = split_fields(line, f);
    if (n != 3) {
      fail_line(line_no, "expected 3 fields <enroll> <test> <score>, got " +
                             std::to_string(n));
    }
    const double score = parse_score_token(f[2], line_no);
    entries.push_back(ScoreTable::Entry{
        make_trial_key(std::string(f[0]), std::string(f[1])), score, line_no});
  });
  return ScoreTable(std::move(entries));
}

std::string write_trials(const TrialSet& trials) {
  std::string out;
  for (const auto& t : trials.trials) {
    out.append(t.enroll_id);
    out.push_back(' ');
    out.append(t.test_id);
    out.append(t.label == TrialLabel::target ? " target\n" : " nontarget\n");
  }
  return out;
}

std::string write_scores(const ScoreTable& scores) {
  std::vector<const ScoreTable::Entry*> order;
  order.reserve(scores.size());
  for (const auto& e : scores.entries()) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const ScoreTable::Entry* a, const ScoreTable::Entry* b) {
              return a->key < b->key;
            });
  std::string out;
  char buf[64];
  for (const ScoreTable::Entry* e : order) {
    out.append(e->key);
    out.push_back(' ');
    std::snprintf(buf, sizeof(buf), "%.17g", e->score);
    out.append(buf);
    out.push_back('\n');
  }
  return out;
}

ScoredTrials join(const TrialSet& trials, const ScoreTable& scores) {
  ScoredTrials out;
  out.positives.reserve(trials.num_target);
  out.negatives.reserve(trials.num_nontarget);
  std::vector<TrialKey> missing;
  std::size_t missing_total = 0;
  for (const auto& t : trials.trials) {
    TrialKey key = make_trial_key(t.enroll_id, t.test_id);
    const auto score = scores.lookup(key);
    if (!score) {
      ++missing_total;
      if (missing.size() < 10) missing.push_back(std::move(key));
      continue;
    }
    auto& side =
        t.label == TrialLabel::target ? out.positives : out.negatives;
    side.push_back(ScoredTrial{std::move(key), *score});
  }
  if (missing_total > 0) {
    std::string msg = std::to_string(missing_total) +
                      " trial key(s) missing from score table:";
    for (const auto& k : missing) {
      msg.append(" '");
      msg.append(k);
      msg.push_back('\'');
    }
    if (missing_total > missing.size()) msg.append(" ...");
    throw InputError(msg);
  }
  return out;
}

}  // namespace cpmap
