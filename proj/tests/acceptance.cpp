// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "motkit/augment.hpp"
#include "motkit/loss.hpp"
#include "motkit/metrics.hpp"
#include "motkit/mot_io.hpp"
#include "motkit/sim.hpp"
#include "motkit/tracker.hpp"
#include "oracles.hpp"

using namespace motkit;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(const std::string& name, const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    body();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[PASS] %s (%.2fs)\n", name.c_str(), secs);
  } catch (const std::exception& e) {
    ++g_failures;
    std::printf("[FAIL] %s: %s\n", name.c_str(), e.what());
  }
  std::fflush(stdout);
}

void require(bool condition, const std::string& message) {
  if (!condition) {
    throw std::runtime_error(message);
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Runs the association-refiner tracker over per-frame detections and returns
// MOT-style result entries.
std::vector<TrackEntry> run_tracker(const std::vector<Detection>& detections,
                                    int num_frames, const TrackerConfig& config,
                                    TrackerStats* stats_out = nullptr) {
  std::map<std::int64_t, std::vector<Detection>> by_frame;
  for (const Detection& d : detections) {
    by_frame[d.frame].push_back(d);
  }
  const auto at = [&](std::int64_t f) {
    const auto it = by_frame.find(f);
    return it == by_frame.end() ? std::vector<Detection>{} : it->second;
  };
  AssociationRefiner refiner(config.match_iou_threshold);
  TrackerState state = init_first_frame(at(1), config);
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
  for (std::int64_t f = 2; f <= num_frames; ++f) {
    emit(f, step(state, f, at(f), refiner, config));
  }
  if (stats_out) {
    *stats_out = state.stats;
  }
  return results;
}

std::vector<Detection> exact_detections(const std::vector<TrackEntry>& gt) {
  std::vector<Detection> dets;
  dets.reserve(gt.size());
  for (const TrackEntry& e : gt) {
    dets.push_back(Detection{e.frame, e.box, 1.0});
  }
  return dets;
}

// ------------------------------------------------------------ criteria ----

void scope_statement() {
  std::printf(
      "[INFO] leaderboard-scale MOT16/MOT17 accuracy requires a trained neural\n"
      "       refiner plugged into the Refiner seam and is explicitly not\n"
      "       reproduced here; this suite is property-based plus hand oracles and\n"
      "       an ablation-shaped smoke test of the shipped association refiner.\n");
}

void assignment_oracle() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int rows = 1 + static_cast<int>(rng.uniform_int(7));
    const int cols = 1 + static_cast<int>(rng.uniform_int(7));
    CostMatrix m = CostMatrix::zeros(rows, cols);
    for (double& c : m.costs) {
      c = trial % 4 == 0 ? static_cast<double>(rng.uniform_int(4))
                         : rng.uniform(-10.0, 10.0);
    }
    const Assignment got = solve_assignment(m);
    const Assignment want = testing::brute_force_assignment(m);
    require(got.pairs == want.pairs, "pairing differs from exhaustive optimum");
    require(std::abs(got.total_cost - want.total_cost) <= 1e-9,
            "total cost differs: got " + fmt(got.total_cost) + " want " +
                fmt(want.total_cost));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < 5.0, "runtime " + fmt(secs) + "s exceeds 5s");
}

void geometry_bounds() {
  require(std::abs(iou(Box{0, 0, 2, 2}, Box{1, 0, 2, 2}) - 1.0 / 3.0) <= 1e-9,
          "IoU hand case 1/3");
  require(std::abs(giou(Box{0, 0, 2, 2}, Box{1, 0, 2, 2}) - 1.0 / 3.0) <= 1e-9,
          "GIoU hand case 1/3");
  require(std::abs(giou(Box{0, 0, 1, 1}, Box{2, 0, 1, 1}) + 1.0 / 3.0) <= 1e-9,
          "GIoU hand case -1/3");
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const Box a = testing::random_box(rng);
    const Box b = testing::random_box(rng);
    const double v_iou = iou(a, b);
    const double v_giou = giou(a, b);
    require(v_iou >= -1e-9 && v_iou <= 1.0 + 1e-9, "IoU out of [0,1]");
    require(v_giou > -1.0 && v_giou <= v_iou + 1e-9 && v_giou <= 1.0 + 1e-9,
            "GIoU ordering violated");
    require(std::abs(giou(a, a) - 1.0) <= 1e-9, "GIoU(A,A) != 1");
  }
}

void kalman_exactness() {
  const double dx = 3.0, dy = -2.0;
  const auto truth = [&](int t) {
    return Box{150.0 + dx * t, 400.0 + dy * t, 55.0, 110.0};
  };
  KalmanState s = kf_init(truth(0));
  std::vector<double> errors;
  for (int t = 1; t <= 30; ++t) {
    const auto [advanced, predicted] = kf_predict(s);
    errors.push_back(std::hypot(predicted.cx() - truth(t).cx(),
                                predicted.cy() - truth(t).cy()));
    s = kf_update(advanced, truth(t));
  }
  for (std::size_t i = 20; i < errors.size(); ++i) {
    require(errors[i] < 1e-6, "prediction error " + fmt(errors[i]) + " at frame " +
                                  std::to_string(i + 1) + " is not < 1e-6");
  }
}

void loss_zero_point() {
  require(std::abs(focal_loss(0.5, 0.25, 2.0) - 0.0433217) < 1e-6,
          "focal(0.5, 0.25, 2) != 0.0433217 +- 1e-6");

  const LossWeights w{2, 5, 2};
  const Box target{0.4, 0.4, 0.2, 0.2};
  const Prediction perfect{target, ClassScores{1.0, 0.0}};
  require(detection_set_loss(std::vector{perfect}, std::vector{target}, w) == 0.0,
          "perfect detection loss is not exactly 0");
  const std::map<std::int64_t, Prediction> pmap{{1, perfect}};
  const std::map<std::int64_t, Box> tmap{{1, target}};
  require(tracking_set_loss(pmap, tmap, w) == 0.0,
          "perfect tracking loss is not exactly 0");

  // detection: cx offset 0.1, giou 1/3 on the chosen boxes
  const Prediction offset{Box{0.5, 0.4, 0.2, 0.2}, ClassScores{1.0, 0.0}};
  const double want_det = 5.0 * 0.1 + 2.0 * (1.0 - 1.0 / 3.0);
  const double got_det = detection_set_loss(std::vector{offset}, std::vector{target}, w);
  require(std::abs(got_det - want_det) <= 1e-9,
          "composed detection loss: got " + fmt(got_det) + " want " + fmt(want_det));

  // tracking: L1 0.04, overlap 0.04/0.0484, person prob 0.9
  const std::map<std::int64_t, Prediction> pred_by_id{
      {3, Prediction{Box::from_cxcywh(0.5, 0.5, 0.22, 0.22), ClassScores{0.9, 0.1}}}};
  const std::map<std::int64_t, Box> targets_by_id{{3, Box::from_cxcywh(0.5, 0.5, 0.2, 0.2)}};
  const double want_trk = 2.0 * focal_loss(0.9, 0.25, 2.0) + 5.0 * 0.04 +
                          2.0 * (1.0 - 0.04 / 0.0484);
  const double got_trk = tracking_set_loss(pred_by_id, targets_by_id, w);
  require(std::abs(got_trk - want_trk) <= 1e-9,
          "composed tracking loss: got " + fmt(got_trk) + " want " + fmt(want_trk));
}

ScenarioConfig base_scenario() {
  ScenarioConfig c;
  c.frame = FrameGeometry{1920, 1080};
  c.num_objects = 10;
  c.num_frames = 200;
  c.rng_seed = 404;
  return c;
}

void closed_loop_tracking() {
  const auto start = std::chrono::steady_clock::now();
  TrackerConfig config;
  config.rebirth_window = 30;

  {  // no occlusion, zero noise
    const auto gt = generate_scenario(base_scenario());
    const auto results = run_tracker(exact_detections(gt), 200, config);
    const ClearCounts clear = compute_clear(gt, results);
    const IdCounts id = compute_idf1(gt, results);
    require(clear.mota == 1.0, "MOTA " + fmt(clear.mota) + " != 1.0");
    require(id.idf1 == 1.0, "IDF1 " + fmt(id.idf1) + " != 1.0");
    require(clear.idsw == 0, "IDsw != 0");
  }

  {  // occlusion of exactly 30 frames, window 30: the id survives
    ScenarioConfig sc = base_scenario();
    sc.occlusions = {OcclusionWindow{1, 100, 30}};
    const auto gt = generate_scenario(sc);
    TrackerStats stats;
    const auto results = run_tracker(exact_detections(gt), 200, config, &stats);
    const ClearCounts clear = compute_clear(gt, results);
    require(clear.idsw == 0, "30-frame occlusion produced id switches");
    require(stats.rebirths >= 1, "no re-birth happened");
    std::set<std::int64_t> ids;
    for (const TrackEntry& e : results) ids.insert(e.id);
    require(ids.size() == 10, "expected 10 distinct ids, got " +
                                  std::to_string(ids.size()));
  }

  {  // occlusion of 31 frames: exactly one new id for that object
    ScenarioConfig sc = base_scenario();
    sc.occlusions = {OcclusionWindow{1, 100, 31}};
    const auto gt = generate_scenario(sc);
    const auto results = run_tracker(exact_detections(gt), 200, config);
    const ClearCounts clear = compute_clear(gt, results);
    require(clear.idsw == 1, "expected exactly 1 id switch, got " +
                                 std::to_string(clear.idsw));
    std::set<std::int64_t> ids;
    for (const TrackEntry& e : results) ids.insert(e.id);
    require(ids.size() == 11, "expected 11 distinct ids (one re-issue), got " +
                                  std::to_string(ids.size()));
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < 10.0, "runtime " + fmt(secs) + "s exceeds 10s");
}

void augmentation_constraints() {
  // frame pairs from a scenario's ground truth
  ScenarioConfig sc = base_scenario();
  sc.num_objects = 14;
  sc.num_frames = 60;
  sc.rng_seed = 901;
  const auto gt = generate_scenario(sc);
  std::map<std::int64_t, std::vector<IdBox>> by_frame;
  for (const TrackEntry& e : gt) {
    by_frame[e.frame].push_back(IdBox{e.id, e.box});
  }

  AugmentConfig config;
  std::size_t candidates_checked = 0, fps_checked = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Rng rng(seed);
    const auto [prev_f, curr_f] = select_frame_pair(sc.num_frames, config.max_gap, rng);
    const TrainingSample sample =
        make_training_sample(by_frame.at(prev_f), by_frame.at(curr_f), sc.frame,
                             config, seed, "acceptance");
    // independent validator re-checks provenance and both IoU constraints
    validate_sample(sample);

    std::map<std::int64_t, Box> curr_by_id;
    for (const IdBox& t : sample.curr_tracks) curr_by_id.emplace(t.id, t.box);
    for (const IdBox& c : sample.candidates) {
      if (const auto it = curr_by_id.find(c.id); it != curr_by_id.end()) {
        require(iou(c.box, it->second) >= 0.5, "candidate IoU constraint violated");
        ++candidates_checked;
      }
    }
    for (const Box& fp : sample.false_positives) {
      for (const auto& [id, box] : curr_by_id) {
        require(iou(fp, box) < 0.5, "false-positive IoU constraint violated");
      }
      ++fps_checked;
    }
  }
  require(candidates_checked > 10000, "too few persisting candidates exercised");
  require(fps_checked > 1000, "too few false positives exercised");
}

void metrics_hand_oracle() {
  const Box home{100, 100, 20, 40};
  std::vector<TrackEntry> gt, res;
  for (std::int64_t f = 1; f <= 10; ++f) {
    TrackEntry g;
    g.frame = f;
    g.id = 1;
    g.box = home;
    g.conf = 1.0;
    g.cls = 1;
    gt.push_back(g);
    if (f <= 8) {
      TrackEntry r;
      r.frame = f;
      r.id = 5;
      r.box = home;
      res.push_back(r);
    }
  }
  {
    auto with_fp = res;
    TrackEntry fp;
    fp.frame = 1;
    fp.id = 9;
    fp.box = Box{700, 700, 20, 40};
    with_fp.push_back(fp);
    const ClearCounts c = compute_clear(gt, with_fp);
    require(c.fp == 1 && c.fn == 2 && c.idsw == 0 && c.gt_total == 10,
            "counts for the MOTA micro-case are wrong");
    require(c.mota == 0.7, "MOTA " + fmt(c.mota) + " != 0.7 exactly");
    require(c.mota == 1.0 - static_cast<double>(c.fp + c.fn + c.idsw) /
                                static_cast<double>(c.gt_total),
            "MOTA identity violated");
  }
  {
    std::vector<TrackEntry> half(res.begin(), res.begin() + 5);
    const IdCounts id = compute_idf1(gt, half);
    require(id.idtp == 5 && id.idfn == 5 && id.idfp == 0, "IDF1 counts wrong");
    require(std::abs(id.idf1 - 2.0 / 3.0) <= 1e-12,
            "IDF1 " + fmt(id.idf1) + " != 2/3");
  }
  {  // identity holds on an arbitrary noisy evaluation
    ScenarioConfig sc = base_scenario();
    sc.num_frames = 80;
    sc.rng_seed = 55;
    const auto gt2 = generate_scenario(sc);
    NoiseModel noise;
    noise.center_jitter_std = 3.0;
    noise.drop_prob = 0.1;
    noise.clutter_rate = 1.0;
    Rng rng(3);
    TrackerConfig config;
    const auto results = run_tracker(
        corrupt_detections(gt2, sc.frame, sc.num_frames, noise, rng), sc.num_frames,
        config);
    const ClearCounts c = compute_clear(gt2, results);
    require(c.mota == 1.0 - static_cast<double>(c.fp + c.fn + c.idsw) /
                                static_cast<double>(c.gt_total),
            "MOTA identity violated on noisy run");
  }
}

void format_fidelity() {
  Rng rng(640);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<TrackEntry> entries;
    std::set<std::pair<std::int64_t, std::int64_t>> used;
    const int n = 1 + static_cast<int>(rng.uniform_int(12));
    for (int i = 0; i < n; ++i) {
      TrackEntry e;
      e.frame = 1 + static_cast<std::int64_t>(rng.uniform_int(50));
      e.id = 1 + static_cast<std::int64_t>(rng.uniform_int(40));
      if (!used.emplace(e.frame, e.id).second) continue;
      e.box.left = static_cast<double>(rng.uniform_int(400000)) / 100.0;
      e.box.top = static_cast<double>(rng.uniform_int(400000)) / 100.0;
      e.box.width = static_cast<double>(1 + rng.uniform_int(80000)) / 100.0;
      e.box.height = static_cast<double>(1 + rng.uniform_int(80000)) / 100.0;
      entries.push_back(e);
    }
    std::istringstream in(results_to_string(entries));
    const auto parsed = parse_mot_file(in, MotFileKind::Results);
    require(parsed.size() == entries.size(), "round trip lost entries");
    std::sort(entries.begin(), entries.end(),
              [](const TrackEntry& a, const TrackEntry& b) {
                return std::tie(a.frame, a.id) < std::tie(b.frame, b.id);
              });
    for (std::size_t i = 0; i < entries.size(); ++i) {
      require(parsed[i].frame == entries[i].frame && parsed[i].id == entries[i].id &&
                  parsed[i].box == entries[i].box,
              "round trip changed an entry");
    }
  }

  // real benchmark data, when present locally
  std::vector<fs::path> roots;
  if (const char* env = std::getenv("MOT17_ROOT")) {
    roots.emplace_back(env);
  }
  roots.emplace_back("data/MOT17/train");
  roots.emplace_back("/root/data/MOT17/train");
  bool found = false;
  for (const fs::path& root : roots) {
    if (!fs::is_directory(root)) continue;
    for (const auto& entry : fs::directory_iterator(root)) {
      const fs::path gt = entry.path() / "gt" / "gt.txt";
      if (fs::exists(gt)) {
        const auto parsed = parse_mot_file(gt, MotFileKind::GroundTruth);
        require(!parsed.empty(), "parsed empty gt from " + gt.string());
        found = true;
      }
    }
  }
  if (!found) {
    std::printf("[INFO] no local MOT17 data found; benchmark parse check skipped\n");
  }
}

void ablation_shaped_behavior() {
  ScenarioConfig sc;
  sc.frame = FrameGeometry{1920, 1080};
  sc.num_objects = 20;
  sc.num_frames = 300;
  sc.rng_seed = 1702;
  const auto gt = generate_scenario(sc);

  NoiseModel noise;
  noise.center_jitter_std = 2.0;
  noise.size_jitter_std = 2.0;
  noise.drop_prob = 0.05;
  noise.clutter_rate = 0.5;
  noise.true_conf_std = 0.03;
  Rng rng(88);
  const auto detections = corrupt_detections(gt, sc.frame, sc.num_frames, noise, rng);

  TrackerConfig with_rebirth;
  with_rebirth.rebirth_window = 30;
  TrackerConfig without_rebirth;
  without_rebirth.rebirth_window = 0;

  const auto res30 = run_tracker(detections, sc.num_frames, with_rebirth);
  const auto res0 = run_tracker(detections, sc.num_frames, without_rebirth);
  const ClearCounts c30 = compute_clear(gt, res30);
  const ClearCounts c0 = compute_clear(gt, res0);

  require(c30.mota >= 0.9, "MOTA with re-birth is " + fmt(c30.mota) + " < 0.9");
  require(c30.idsw < c0.idsw,
          "IDsw not strictly reduced by re-birth: " + std::to_string(c30.idsw) +
              " vs " + std::to_string(c0.idsw));
  std::printf("[INFO] ablation smoke: MOTA %.4f, IDsw %lld (P=30) vs %lld (P=0)\n",
              c30.mota, static_cast<long long>(c30.idsw),
              static_cast<long long>(c0.idsw));
}

}  // namespace

int main() {
  scope_statement();
  criterion("assignment solver matches exhaustive search (1000 matrices <= 7x7, < 5s)",
            assignment_oracle);
  criterion("geometry bounds and hand values over 10000 random pairs", geometry_bounds);
  criterion("Kalman one-step error < 1e-6 after frame 20 on a noiseless track",
            kalman_exactness);
  criterion("set-prediction losses: exact zero point and composed hand values",
            loss_zero_point);
  criterion("closed-loop tracking: MOTA/IDF1 1.0; 30-frame occlusion keeps the id, "
            "31 frames re-issues once (< 10s)",
            closed_loop_tracking);
  criterion("augmentation constraints hold over 10000 seeded samples",
            augmentation_constraints);
  criterion("metrics hand oracles (MOTA 0.7, IDF1 2/3) and the MOTA identity",
            metrics_hand_oracle);
  criterion("MOT format round trip over 1000 random track sets (+ local MOT17 if present)",
            format_fidelity);
  criterion("ablation-shaped smoke test: MOTA >= 0.9 and strictly fewer IDsw with re-birth",
            ablation_shaped_behavior);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
  } else {
    std::printf("all acceptance criteria passed\n");
  }
  return g_failures;
}
