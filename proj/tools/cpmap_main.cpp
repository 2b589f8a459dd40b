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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpmap/cp_map.hpp"
#include "cpmap/delta.hpp"
#include "cpmap/errors.hpp"
#include "cpmap/hardness.hpp"
#include "cpmap/metrics.hpp"
#include "cpmap/render.hpp"
#include "cpmap/score_io.hpp"
#include "cpmap/synth.hpp"
#include "cpmap/trials.hpp"

namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw cpmap::InputError("cannot open " + path);
  }
  return in;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw cpmap::InputError("cannot write " + path);
  }
  out << content;
  if (!out) {
    throw cpmap::InputError("error writing " + path);
  }
}

// Re-raises parse errors with the file path prepended, so "line 7: ..."
// becomes "scores.txt: line 7: ...".
template <typename Fn>
auto with_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const cpmap::InputError& e) {
    throw cpmap::InputError(path + ": " + e.what());
  }
}

cpmap::TrialSet load_trials(const std::string& path) {
  return with_path(path, [&] {
    auto in = open_input(path);
    return cpmap::parse_trials(in);
  });
}

cpmap::ScoreTable load_scores(const std::string& path) {
  return with_path(path, [&] {
    auto in = open_input(path);
    return cpmap::parse_scores(in);
  });
}

cpmap::ScoredTrials load_scored(const std::string& trials_path,
                                const std::string& scores_path) {
  const auto trials = load_trials(trials_path);
  const auto scores = load_scores(scores_path);
  return with_path(scores_path, [&] { return cpmap::join(trials, scores); });
}

cpmap::HardnessOrder load_order(const std::string& dir) {
  cpmap::HardnessOrder order;
  const auto pos_path = (fs::path(dir) / "positive_order.txt").string();
  const auto neg_path = (fs::path(dir) / "negative_order.txt").string();
  order.positive_order = with_path(pos_path, [&] {
    auto in = open_input(pos_path);
    return cpmap::parse_order(in);
  });
  order.negative_order = with_path(neg_path, [&] {
    auto in = open_input(neg_path);
    return cpmap::parse_order(in);
  });
  return order;
}

cpmap::CPMap load_csv_map(const std::string& path) {
  return with_path(path, [&] {
    auto in = open_input(path);
    return cpmap::parse_cp_map_csv(in);
  });
}

struct EvalArgs {
  std::string trials;
  std::string scores;
  cpmap::DcfParams dcf;
};

int run_eval(const EvalArgs& args) {
  const auto scored = load_scored(args.trials, args.scores);
  const auto eer = cpmap::compute_eer(scored);
  const auto dcf = cpmap::compute_min_dcf(scored, args.dcf);
  std::printf("eer=%.6f min_dcf=%.6f threshold_eer=%.6f threshold_dcf=%.6f\n",
              eer.eer, dcf.min_dcf, eer.threshold, dcf.threshold);
  return 0;
}

struct OrderArgs {
  std::string trials;
  std::vector<std::string> scores;
  std::string fusion = "rank_mean";
  std::string out_dir;
};

int run_order(const OrderArgs& args) {
  const auto trials = load_trials(args.trials);
  std::vector<cpmap::ScoredTrials> systems;
  systems.reserve(args.scores.size());
  for (const auto& path : args.scores) {
    const auto scores = load_scores(path);
    systems.push_back(
        with_path(path, [&] { return cpmap::join(trials, scores); }));
  }
  const auto method = args.fusion == "raw_mean"
                          ? cpmap::FusionMethod::raw_mean
                          : cpmap::FusionMethod::rank_mean;
  const auto order = cpmap::fuse_orderings(systems, method);
  fs::create_directories(args.out_dir);
  write_file((fs::path(args.out_dir) / "positive_order.txt").string(),
             cpmap::write_order(order.positive_order));
  write_file((fs::path(args.out_dir) / "negative_order.txt").string(),
             cpmap::write_order(order.negative_order));
  return 0;
}

struct CpMapArgs {
  std::string trials;
  std::string scores;
  std::string order = "self";
  std::string metric = "eer";
  int grid = 20;
  int min_trials = 50;
  std::string out_csv;
  std::string out_pgm;
};

int run_cpmap(const CpMapArgs& args) {
  const auto scored = load_scored(args.trials, args.scores);
  cpmap::HardnessOrder order;
  std::string ordering_desc;
  if (args.order == "self") {
    order = cpmap::self_order(scored);
    ordering_desc = "self";
  } else {
    order = load_order(args.order);
    ordering_desc = "dir:" + args.order;
  }
  const auto kind = args.metric == "min_dcf" ? cpmap::MetricKind::min_dcf
                                             : cpmap::MetricKind::eer;
  const cpmap::GridSpec spec{args.grid, args.min_trials};
  std::optional<cpmap::DcfParams> dcf;
  if (kind == cpmap::MetricKind::min_dcf) dcf = cpmap::DcfParams{};
  const auto map = cpmap::compute_cp_map(
      scored, order, spec, kind, dcf,
      cpmap::Provenance{args.scores, ordering_desc});
  write_file(args.out_csv, cpmap::export_cp_map(map));
  if (!args.out_pgm.empty()) {
    write_file(args.out_pgm,
               cpmap::render_sequential(map, cpmap::default_sequential_scale(map)));
  }
  return 0;
}

struct DeltaArgs {
  std::string ref_csv;
  std::string test_csv;
  double epsilon = 1e-5;
  std::string out_csv;
  std::string out_ppm;
};

int run_delta(const DeltaArgs& args) {
  auto ref = load_csv_map(args.ref_csv);
  auto test = load_csv_map(args.test_csv);
  // CSV files carry grid values only; name the maps after their files.
  ref.provenance.system_name = args.ref_csv;
  test.provenance.system_name = args.test_csv;
  const auto delta = cpmap::compute_delta_map(ref, test, args.epsilon);
  write_file(args.out_csv, cpmap::export_delta_map(delta));
  if (!args.out_ppm.empty()) {
    write_file(args.out_ppm,
               cpmap::render_diverging(delta, cpmap::default_diverging_scale(delta)));
  }
  std::printf("%s\n", cpmap::format_wtl(cpmap::summarize_wtl(delta)).c_str());
  return 0;
}

struct SynthArgs {
  double mu_pos = 0.0;
  double mu_neg = 0.0;
  double sigma_pos = 1.0;
  double sigma_neg = 1.0;
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool analytic = false;
};

int run_synth(const SynthArgs& args) {
  const cpmap::GaussianScoreModel model{args.mu_pos, args.sigma_pos,
                                        args.mu_neg, args.sigma_neg};
  const auto scored = cpmap::sample_scores(
      model, cpmap::SampleSpec{args.n_pos, args.n_neg, args.seed});

  // Standard trials + scores files, so synthetic data flows through the
  // normal pipeline.
  std::string trials_text;
  std::string scores_text;
  char buf[64];
  const auto emit = [&](const cpmap::ScoredTrial& st, const char* label) {
    trials_text.append(st.key);
    trials_text.push_back(' ');
    trials_text.append(label);
    trials_text.push_back('\n');
    scores_text.append(st.key);
    std::snprintf(buf, sizeof(buf), " %.17g\n", st.score);
    scores_text.append(buf);
  };
  for (const auto& st : scored.positives) emit(st, "target");
  for (const auto& st : scored.negatives) emit(st, "nontarget");

  fs::create_directories(args.out_dir);
  write_file((fs::path(args.out_dir) / "trials.txt").string(), trials_text);
  write_file((fs::path(args.out_dir) / "scores.txt").string(), scores_text);

  if (args.analytic) {
    const auto result = cpmap::analytic_eer(model);
    std::printf("analytic_eer=%.6f analytic_threshold=%.6f\n", result.eer,
                result.threshold);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification-score evaluation toolkit: EER/minDCF, "
               "hardness-ordered C-P maps, and delta-map comparison"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand(
      "eval", "Compute EER and minDCF from trials and scores files");
  eval->add_option("--trials", eval_args.trials, "Trials file")->required();
  eval->add_option("--scores", eval_args.scores, "Scores file")->required();
  eval->add_option("--p-target", eval_args.dcf.p_target, "Target prior");
  eval->add_option("--c-miss", eval_args.dcf.c_miss, "Miss cost");
  eval->add_option("--c-fa", eval_args.dcf.c_fa, "False-alarm cost");

  OrderArgs order_args;
  auto* order = app.add_subcommand(
      "order", "Fuse one or more score files into a hardness ordering");
  order->add_option("--trials", order_args.trials, "Trials file")->required();
  order
      ->add_option("--scores", order_args.scores,
                   "Score file(s); all must cover the trials")
      ->required()
      ->expected(1, -1);
  order->add_option("--fusion", order_args.fusion, "rank_mean or raw_mean")
      ->check(CLI::IsMember({"rank_mean", "raw_mean"}));
  order->add_option("--out", order_args.out_dir, "Output directory")
      ->required();

  CpMapArgs cpmap_args;
  auto* cpmap_cmd = app.add_subcommand(
      "cpmap", "Build a Config-Performance map over hardness-ordered trials");
  cpmap_cmd->add_option("--trials", cpmap_args.trials, "Trials file")
      ->required();
  cpmap_cmd->add_option("--scores", cpmap_args.scores, "Scores file")
      ->required();
  cpmap_cmd->add_option("--order", cpmap_args.order,
                        "Ordering directory, or 'self'");
  cpmap_cmd->add_option("--metric", cpmap_args.metric, "eer or min_dcf")
      ->check(CLI::IsMember({"eer", "min_dcf"}));
  cpmap_cmd->add_option("--grid", cpmap_args.grid, "Cells per axis");
  cpmap_cmd->add_option("--min-trials", cpmap_args.min_trials,
                        "Minimum trials per class for a defined cell");
  cpmap_cmd->add_option("--out-csv", cpmap_args.out_csv, "CSV output path")
      ->required();
  cpmap_cmd->add_option("--out-pgm", cpmap_args.out_pgm,
                        "Optional grayscale heatmap path");

  DeltaArgs delta_args;
  auto* delta = app.add_subcommand(
      "delta", "Compare two exported C-P maps cell by cell");
  delta->add_option("--ref-csv", delta_args.ref_csv, "Reference map CSV")
      ->required();
  delta->add_option("--test-csv", delta_args.test_csv, "Test map CSV")
      ->required();
  delta->add_option("--epsilon", delta_args.epsilon, "Tie tolerance");
  delta->add_option("--out-csv", delta_args.out_csv, "Delta CSV output path")
      ->required();
  delta->add_option("--out-ppm", delta_args.out_ppm,
                    "Optional diverging heatmap path");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand(
      "synth", "Sample Gaussian scores into standard trials/scores files");
  synth->add_option("--mu-pos", synth_args.mu_pos, "Positive mean")
      ->required();
  synth->add_option("--mu-neg", synth_args.mu_neg, "Negative mean")
      ->required();
  synth->add_option("--sigma-pos", synth_args.sigma_pos, "Positive stddev")
      ->required();
  synth->add_option("--sigma-neg", synth_args.sigma_neg, "Negative stddev")
      ->required();
  synth->add_option("--n-pos", synth_args.n_pos, "Positive trial count")
      ->required();
  synth->add_option("--n-neg", synth_args.n_neg, "Negative trial count")
      ->required();
  synth->add_option("--seed", synth_args.seed, "Sampler seed")->required();
  synth->add_option("--out", synth_args.out_dir, "Output directory")
      ->required();
  synth->add_flag("--analytic", synth_args.analytic,
                  "Also print the closed-form EER and threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (eval->parsed()) return run_eval(eval_args);
    if (order->parsed()) return run_order(order_args);
    if (cpmap_cmd->parsed()) return run_cpmap(cpmap_args);
    if (delta->parsed()) return run_delta(delta_args);
    if (synth->parsed()) return run_synth(synth_args);
  } catch (const cpmap::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cpmap::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
