// motkit - multi-object tracking engine and evaluation toolkit.
//
// Subcommands: track, eval, augment, simulate, overlay. All stochastic
// subcommands take a mandatory --seed and are byte-deterministic given it.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "motkit/augment.hpp"
#include "motkit/config.hpp"
#include "motkit/metrics.hpp"
#include "motkit/mot_io.hpp"
#include "motkit/overlay.hpp"
#include "motkit/sim.hpp"
#include "motkit/tracker.hpp"

namespace fs = std::filesystem;
using namespace motkit;

namespace {

// write-temp-then-rename so readers never observe partial files
void atomic_write(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) {
      throw IoError("cannot write " + tmp.string());
    }
    out << content;
  }
  fs::rename(tmp, path);
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

struct GlobalOptions {
  std::string config_path;
  int jobs = 1;
  KeyValueConfig file;
};

void load_config(GlobalOptions& global, const CLI::Option* jobs_opt) {
  if (!global.config_path.empty()) {
    global.file = KeyValueConfig::parse_file(global.config_path);
  }
  // sections are validated by their subcommand; section names and the few
  // global keys are validated here
  for (const auto& [key, value] : global.file.entries()) {
    const std::size_t dot = key.find('.');
    if (dot == std::string::npos) {
      if (key != "jobs") {
        throw ConfigError("unknown config key '" + key + "'");
      }
      continue;
    }
    const std::string section = key.substr(0, dot);
    if (section != "track" && section != "eval" && section != "augment" &&
        section != "simulate" && section != "overlay") {
      throw ConfigError("unknown config section '" + section + "'");
    }
  }
  if (!jobs_opt->count()) {
    global.jobs = static_cast<int>(global.file.get_int("jobs", global.jobs));
  }
  if (global.jobs < 1) {
    throw ConfigError("--jobs must be >= 1");
  }
}

// ---------------------------------------------------------------- track ----

struct TrackOptions {
  std::vector<std::string> seq_dirs;
  std::string out;
  double min_conf = 0.4;
  int rebirth = 30;
  double iou_thresh = 0.5;
  int capacity = 500;
};

constexpr std::string_view kTrackKeys[] = {"min_conf", "rebirth", "iou_thresh",
                                           "capacity"};

int run_track(const GlobalOptions& global, TrackOptions opt,
              const std::map<std::string, bool>& given) {
  global.file.require_known_keys("track", kTrackKeys);
  if (!given.at("min_conf")) opt.min_conf = global.file.get_double("track.min_conf", opt.min_conf);
  if (!given.at("rebirth")) opt.rebirth = static_cast<int>(global.file.get_int("track.rebirth", opt.rebirth));
  if (!given.at("iou_thresh")) opt.iou_thresh = global.file.get_double("track.iou_thresh", opt.iou_thresh);
  if (!given.at("capacity")) opt.capacity = static_cast<int>(global.file.get_int("track.capacity", opt.capacity));

  TrackerConfig config;
  config.min_confidence = opt.min_conf;
  config.rebirth_window = opt.rebirth;
  config.match_iou_threshold = opt.iou_thresh;
  config.detection_capacity = opt.capacity;
  config.validate();

  const bool multi = opt.seq_dirs.size() > 1;
  const fs::path out_path(opt.out);
  if (multi) {
    fs::create_directories(out_path);
  }

  std::vector<std::string> summaries(opt.seq_dirs.size());
  parallel_for(opt.seq_dirs.size(), global.jobs, [&](std::size_t idx) {
    const Sequence seq = load_sequence(opt.seq_dirs[idx]);
    std::map<std::int64_t, std::vector<Detection>> by_frame;
    for (const Detection& d : seq.detections) {
      by_frame[d.frame].push_back(d);
    }
    const auto frame_dets = [&](std::int64_t f) {
      const auto it = by_frame.find(f);
      return it == by_frame.end() ? std::vector<Detection>{} : it->second;
    };

    AssociationRefiner refiner(config.match_iou_threshold);
    TrackerState state = init_first_frame(frame_dets(1), config);
    std::vector<TrackEntry> results;
    const auto emit = [&](std::int64_t f, const std::vector<Track>& active) {
      for (const Track& t : active) {
        TrackEntry e;
        e.frame = f;
        e.id = t.id;
        e.box = t.box;
        results.push_back(e);
      }
    };
    emit(1, state.active_tracks());
    for (std::int64_t f = 2; f <= seq.info.frame_count; ++f) {
      emit(f, step(state, f, frame_dets(f), refiner, config));
    }

    const fs::path target =
        multi ? out_path / (seq.info.name + ".txt") : out_path;
    atomic_write(target, results_to_string(results));

    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "sequence %s: frames=%lld tracks_born=%lld rebirths=%lld -> %s",
                  seq.info.name.c_str(), static_cast<long long>(state.stats.frames),
                  static_cast<long long>(state.stats.tracks_born),
                  static_cast<long long>(state.stats.rebirths),
                  target.string().c_str());
    summaries[idx] = buf;
  });
  for (const std::string& s : summaries) {
    std::cout << s << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- eval ----

struct EvalOptions {
  std::vector<std::string> gt_paths;
  std::vector<std::string> res_paths;
  double iou_thresh = 0.5;
  bool kv = false;
};

constexpr std::string_view kEvalKeys[] = {"iou_thresh"};

int run_eval(const GlobalOptions& global, EvalOptions opt,
             const std::map<std::string, bool>& given) {
  global.file.require_known_keys("eval", kEvalKeys);
  if (!given.at("iou_thresh")) opt.iou_thresh = global.file.get_double("eval.iou_thresh", opt.iou_thresh);
  if (opt.gt_paths.size() != opt.res_paths.size()) {
    throw ConfigError("--gt and --res must be given the same number of times");
  }

  std::vector<std::vector<TrackEntry>> gts(opt.gt_paths.size());
  std::vector<std::vector<TrackEntry>> results(opt.res_paths.size());
  parallel_for(opt.gt_paths.size(), global.jobs, [&](std::size_t i) {
    gts[i] = parse_mot_file(fs::path(opt.gt_paths[i]), MotFileKind::GroundTruth);
    results[i] = parse_mot_file(fs::path(opt.res_paths[i]), MotFileKind::Results);
  });

  std::vector<SequencePair> pairs;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    pairs.push_back(SequencePair{fs::path(opt.gt_paths[i]).parent_path().parent_path()
                                     .filename()
                                     .string(),
                                 gts[i], results[i]});
    if (pairs.back().name.empty()) {
      pairs.back().name = "seq" + std::to_string(i + 1);
    }
  }
  const MetricReport report = evaluate_sequences(pairs, opt.iou_thresh);
  std::cout << report_table(report);
  if (opt.kv) {
    std::cout << report_key_values(report);
  }
  return 0;
}

// -------------------------------------------------------------- augment ----

struct AugmentOptions {
  std::string data_dir;
  std::string out;
  std::uint64_t seed = 0;
  int num_samples = 100;
  std::string mode = "video";
  int max_gap = 3;
  double drop_prob = 0.1;
  int max_fp = 3;
};

constexpr std::string_view kAugmentKeys[] = {
    "num_samples", "mode",         "max_gap",          "drop_prob",
    "max_fp",      "max_attempts", "max_center_shift", "max_scale_change",
    "scale_min",   "scale_max",    "max_translate_frac"};

int run_augment(const GlobalOptions& global, AugmentOptions opt,
                const std::map<std::string, bool>& given) {
  global.file.require_known_keys("augment", kAugmentKeys);
  if (!given.at("num_samples")) opt.num_samples = static_cast<int>(global.file.get_int("augment.num_samples", opt.num_samples));
  if (!given.at("mode")) opt.mode = global.file.get_string("augment.mode", opt.mode);
  if (!given.at("max_gap")) opt.max_gap = static_cast<int>(global.file.get_int("augment.max_gap", opt.max_gap));
  if (!given.at("drop_prob")) opt.drop_prob = global.file.get_double("augment.drop_prob", opt.drop_prob);
  if (!given.at("max_fp")) opt.max_fp = static_cast<int>(global.file.get_int("augment.max_fp", opt.max_fp));
  if (opt.mode != "video" && opt.mode != "image") {
    throw ConfigError("--mode must be 'video' or 'image'");
  }
  if (opt.num_samples < 1) {
    throw ConfigError("--num-samples must be >= 1");
  }

  AugmentConfig config;
  config.drop_prob = opt.drop_prob;
  config.max_false_positives = opt.max_fp;
  config.max_gap = opt.max_gap;
  config.jitter.max_attempts = static_cast<int>(global.file.get_int("augment.max_attempts", config.jitter.max_attempts));
  config.jitter.max_center_shift = global.file.get_double("augment.max_center_shift", config.jitter.max_center_shift);
  config.jitter.max_scale_change = global.file.get_double("augment.max_scale_change", config.jitter.max_scale_change);
  config.pair_synth.scale_min = global.file.get_double("augment.scale_min", config.pair_synth.scale_min);
  config.pair_synth.scale_max = global.file.get_double("augment.scale_max", config.pair_synth.scale_max);
  config.pair_synth.max_translate_frac = global.file.get_double("augment.max_translate_frac", config.pair_synth.max_translate_frac);
  config.validate();

  // one sequence dir, or a root holding sequence dirs
  std::vector<fs::path> seq_dirs;
  const fs::path root(opt.data_dir);
  if (fs::exists(root / "gt" / "gt.txt")) {
    seq_dirs.push_back(root);
  } else if (fs::is_directory(root)) {
    for (const auto& entry : fs::directory_iterator(root)) {
      if (entry.is_directory() && fs::exists(entry.path() / "gt" / "gt.txt")) {
        seq_dirs.push_back(entry.path());
      }
    }
    std::sort(seq_dirs.begin(), seq_dirs.end());
  }
  if (seq_dirs.empty()) {
    throw IoError("no sequence with gt/gt.txt under " + root.string());
  }

  struct SeqData {
    std::string name;
    FrameGeometry geometry;
    std::int64_t frame_count = 0;
    std::map<std::int64_t, std::vector<IdBox>> gt_by_frame;
  };
  std::vector<SeqData> sequences;
  for (const fs::path& dir : seq_dirs) {
    const Sequence seq = load_sequence(dir);
    SeqData data;
    data.name = seq.info.name;
    data.geometry = seq.info.geometry();
    data.frame_count = seq.info.frame_count;
    for (const TrackEntry& e : *seq.ground_truth) {
      data.gt_by_frame[e.frame].push_back(IdBox{e.id, e.box});
    }
    sequences.push_back(std::move(data));
  }

  const auto gt_at = [](const SeqData& s, std::int64_t f) {
    const auto it = s.gt_by_frame.find(f);
    return it == s.gt_by_frame.end() ? std::vector<IdBox>{} : it->second;
  };

  std::vector<std::string> lines(static_cast<std::size_t>(opt.num_samples));
  parallel_for(lines.size(), global.jobs, [&](std::size_t i) {
    // per-sample seed mixing rule: sample_seed = base_seed ^ sample_index
    const std::uint64_t sample_seed = opt.seed ^ static_cast<std::uint64_t>(i);
    Rng rng(sample_seed);
    const SeqData& seq = sequences[rng.uniform_int(sequences.size())];
    TrainingSample sample;
    if (opt.mode == "video") {
      const auto [prev_f, curr_f] =
          select_frame_pair(seq.frame_count, config.max_gap, rng);
      sample = make_training_sample(
          gt_at(seq, prev_f), gt_at(seq, curr_f), seq.geometry, config,
          rng.next_u64(),
          seq.name + ":" + std::to_string(prev_f) + "-" + std::to_string(curr_f));
    } else {
      const std::int64_t frame =
          1 + static_cast<std::int64_t>(rng.uniform_int(
                  static_cast<std::uint64_t>(seq.frame_count)));
      const auto [view_a, view_b] = synthesize_pair_from_image(
          gt_at(seq, frame), seq.geometry, config.pair_synth, rng);
      sample = make_training_sample(view_a, view_b, seq.geometry, config,
                                    rng.next_u64(),
                                    seq.name + ":img" + std::to_string(frame));
    }
    validate_sample(sample);
    lines[i] = serialize_sample(sample);
  });

  std::string content;
  for (const std::string& line : lines) {
    content += line;
    content += '\n';
  }
  atomic_write(opt.out, content);
  std::cout << "wrote " << lines.size() << " samples -> " << opt.out << "\n";
  return 0;
}

// ------------------------------------------------------------- simulate ----

constexpr std::string_view kSimulateKeys[] = {
    "name",        "frame_width",     "frame_height",     "num_objects",
    "num_frames",  "vel_min",         "vel_max",          "width_min",
    "width_max",   "height_min",      "height_max",       "occlusions",
    "entry_frames", "exit_frames",    "center_jitter_std", "size_jitter_std",
    "drop_prob",   "clutter_rate",    "true_conf_mean",   "true_conf_std",
    "clutter_conf_mean", "clutter_conf_std", "frame_rate"};

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    out.push_back(std::stoll(token));
  }
  return out;
}

int run_simulate(const GlobalOptions& global, const std::string& out_dir,
                 std::uint64_t seed) {
  const KeyValueConfig& file = global.file;
  file.require_known_keys("simulate", kSimulateKeys);

  ScenarioConfig scenario;
  scenario.frame.width = static_cast<int>(file.get_int("simulate.frame_width", 1920));
  scenario.frame.height = static_cast<int>(file.get_int("simulate.frame_height", 1080));
  scenario.num_objects = static_cast<int>(file.get_int("simulate.num_objects", 10));
  scenario.num_frames = static_cast<int>(file.get_int("simulate.num_frames", 200));
  scenario.vel_min = file.get_double("simulate.vel_min", -3.0);
  scenario.vel_max = file.get_double("simulate.vel_max", 3.0);
  scenario.width_min = file.get_double("simulate.width_min", 40.0);
  scenario.width_max = file.get_double("simulate.width_max", 120.0);
  scenario.height_min = file.get_double("simulate.height_min", 80.0);
  scenario.height_max = file.get_double("simulate.height_max", 260.0);
  scenario.rng_seed = seed;
  if (const auto v = file.get("simulate.entry_frames")) {
    scenario.entry_frames = parse_int_list(*v);
  }
  if (const auto v = file.get("simulate.exit_frames")) {
    scenario.exit_frames = parse_int_list(*v);
  }
  if (const auto v = file.get("simulate.occlusions")) {
    // format: id:start:duration[,id:start:duration...]
    std::istringstream in(*v);
    std::string token;
    while (std::getline(in, token, ',')) {
      long long id = 0, start = 0;
      int duration = 0;
      if (std::sscanf(token.c_str(), "%lld:%lld:%d", &id, &start, &duration) != 3) {
        throw ConfigError("bad occlusion spec '" + token + "'");
      }
      scenario.occlusions.push_back(OcclusionWindow{id, start, duration});
    }
  }

  NoiseModel noise;
  noise.center_jitter_std = file.get_double("simulate.center_jitter_std", 0.0);
  noise.size_jitter_std = file.get_double("simulate.size_jitter_std", 0.0);
  noise.drop_prob = file.get_double("simulate.drop_prob", 0.0);
  noise.clutter_rate = file.get_double("simulate.clutter_rate", 0.0);
  noise.true_conf_mean = file.get_double("simulate.true_conf_mean", 0.9);
  noise.true_conf_std = file.get_double("simulate.true_conf_std", 0.0);
  noise.clutter_conf_mean = file.get_double("simulate.clutter_conf_mean", 0.5);
  noise.clutter_conf_std = file.get_double("simulate.clutter_conf_std", 0.15);

  const std::string name =
      file.get_string("simulate.name", "sim-" + std::to_string(seed));
  const double frame_rate = file.get_double("simulate.frame_rate", 30.0);

  const auto gt = generate_scenario(scenario);
  Rng det_rng(seed ^ 0xD1B54A32D192ED03ULL);  // independent detector stream
  const auto detections =
      corrupt_detections(gt, scenario.frame, scenario.num_frames, noise, det_rng);

  const fs::path out(out_dir);
  std::ostringstream seqinfo;
  seqinfo << "[Sequence]\nname=" << name << "\nimDir=img1\nframeRate=" << frame_rate
          << "\nseqLength=" << scenario.num_frames << "\nimWidth="
          << scenario.frame.width << "\nimHeight=" << scenario.frame.height
          << "\nimExt=.jpg\n";
  atomic_write(out / "seqinfo.ini", seqinfo.str());

  std::ostringstream gt_text;
  write_ground_truth(gt_text, gt);
  atomic_write(out / "gt" / "gt.txt", gt_text.str());

  std::ostringstream det_text;
  write_detections(det_text, detections);
  atomic_write(out / "det" / "det.txt", det_text.str());

  std::cout << "sequence " << name << ": frames=" << scenario.num_frames
            << " gt_boxes=" << gt.size() << " detections=" << detections.size()
            << " -> " << out.string() << "\n";
  return 0;
}

// -------------------------------------------------------------- overlay ----

int run_overlay(const std::string& seq_dir, const std::string& res_path,
                const std::string& out_dir) {
  const Sequence seq = load_sequence(seq_dir);
  const auto results = parse_mot_file(fs::path(res_path), MotFileKind::Results);

  std::map<std::int64_t, std::vector<TrackEntry>> res_by_frame, gt_by_frame;
  for (const TrackEntry& e : results) {
    res_by_frame[e.frame].push_back(e);
  }
  if (seq.ground_truth) {
    for (const TrackEntry& e : *seq.ground_truth) {
      gt_by_frame[e.frame].push_back(e);
    }
  }

  const fs::path out(out_dir);
  fs::create_directories(out);
  for (const auto& [frame, entries] : res_by_frame) {
    const auto gt_it = gt_by_frame.find(frame);
    const std::vector<TrackEntry> empty;
    const std::string svg = render_frame_svg(
        seq.info.geometry(), gt_it == gt_by_frame.end() ? empty : gt_it->second,
        entries);
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06lld.svg",
                  static_cast<long long>(frame));
    atomic_write(out / name, svg);
  }
  std::cout << "wrote " << res_by_frame.size() << " overlays -> " << out.string()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-object tracking engine and evaluation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global --config/--jobs may follow the subcommand

  GlobalOptions global;
  const auto* config_opt =
      app.add_option("--config", global.config_path, "key = value config file");
  const auto* jobs_opt =
      app.add_option("--jobs", global.jobs, "parallel sequence/sample workers")
          ->default_val(1);
  (void)config_opt;

  // track
  TrackOptions track;
  auto* track_cmd = app.add_subcommand("track", "run the tracker over a sequence");
  track_cmd->add_option("--seq", track.seq_dirs, "MOTChallenge sequence directory")
      ->required();
  track_cmd->add_option("--out", track.out, "results file (or directory when --seq repeats)")
      ->required();
  const auto* t_conf = track_cmd->add_option("--min-conf", track.min_conf,
                                             "detection confidence gate")
                           ->default_val(0.4);
  const auto* t_rebirth =
      track_cmd->add_option("--rebirth", track.rebirth, "inactive track window P")
          ->default_val(30);
  const auto* t_iou = track_cmd->add_option("--iou-thresh", track.iou_thresh,
                                            "association IoU gate")
                          ->default_val(0.5);
  const auto* t_cap = track_cmd->add_option("--capacity", track.capacity,
                                            "per-frame new-object budget")
                          ->default_val(500);

  // eval
  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "CLEAR/IDF1 metrics for results");
  eval_cmd->add_option("--gt", eval.gt_paths, "ground-truth file")->required();
  eval_cmd->add_option("--res", eval.res_paths, "results file")->required();
  const auto* e_iou = eval_cmd->add_option("--iou-thresh", eval.iou_thresh,
                                           "matching IoU threshold")
                          ->default_val(0.5);
  eval_cmd->add_flag("--kv", eval.kv, "also print key = value report");

  // augment
  AugmentOptions augment;
  auto* augment_cmd =
      app.add_subcommand("augment", "generate training samples from ground truth");
  augment_cmd->add_option("--data", augment.data_dir, "sequence dir or root of sequence dirs")
      ->required();
  augment_cmd->add_option("--seed", augment.seed, "base RNG seed")->required();
  augment_cmd->add_option("--out", augment.out, "output JSONL file")->required();
  const auto* a_num = augment_cmd->add_option("--num-samples", augment.num_samples,
                                              "samples to generate")
                          ->default_val(100);
  const auto* a_mode =
      augment_cmd->add_option("--mode", augment.mode, "video | image")
          ->default_val("video");
  const auto* a_gap = augment_cmd->add_option("--max-gap", augment.max_gap,
                                              "max frame-pair gap")
                          ->default_val(3);
  const auto* a_drop = augment_cmd->add_option("--drop-prob", augment.drop_prob,
                                               "false-negative drop probability")
                           ->default_val(0.1);
  const auto* a_fp = augment_cmd->add_option("--max-fp", augment.max_fp,
                                             "max injected false positives")
                         ->default_val(3);

  // simulate
  std::string sim_out;
  std::uint64_t sim_seed = 0;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "emit a synthetic MOTChallenge sequence");
  simulate_cmd->add_option("--out", sim_out, "output sequence directory")->required();
  simulate_cmd->add_option("--seed", sim_seed, "RNG seed")->required();

  // overlay
  std::string ov_seq, ov_res, ov_out;
  auto* overlay_cmd =
      app.add_subcommand("overlay", "render per-frame SVG overlays of results");
  overlay_cmd->add_option("--seq", ov_seq, "sequence directory")->required();
  overlay_cmd->add_option("--res", ov_res, "results file")->required();
  overlay_cmd->add_option("--out", ov_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    load_config(global, jobs_opt);
    if (track_cmd->parsed()) {
      const std::map<std::string, bool> given{
          {"min_conf", t_conf->count() > 0},
          {"rebirth", t_rebirth->count() > 0},
          {"iou_thresh", t_iou->count() > 0},
          {"capacity", t_cap->count() > 0}};
      return run_track(global, track, given);
    }
    if (eval_cmd->parsed()) {
      const std::map<std::string, bool> given{{"iou_thresh", e_iou->count() > 0}};
      return run_eval(global, eval, given);
    }
    if (augment_cmd->parsed()) {
      const std::map<std::string, bool> given{
          {"num_samples", a_num->count() > 0}, {"mode", a_mode->count() > 0},
          {"max_gap", a_gap->count() > 0},     {"drop_prob", a_drop->count() > 0},
          {"max_fp", a_fp->count() > 0}};
      return run_augment(global, augment, given);
    }
    if (simulate_cmd->parsed()) {
      return run_simulate(global, sim_out, sim_seed);
    }
    if (overlay_cmd->parsed()) {
      return run_overlay(ov_seq, ov_res, ov_out);
    }
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    // parameter out of its documented domain: a usage error at the CLI level
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const SequencingError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
