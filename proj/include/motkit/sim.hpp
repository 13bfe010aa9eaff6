#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "motkit/mot_io.hpp"
#include "motkit/rng.hpp"

namespace motkit {

// Frames [start, start + duration) during which the object is absent.
struct OcclusionWindow {
  std::int64_t object_id = 0;  // 1-based, matching the emitted gt ids
  std::int64_t start_frame = 0;
  int duration = 0;
};

struct ScenarioConfig {
  FrameGeometry frame{1920, 1080};
  int num_objects = 10;
  int num_frames = 200;
  double vel_min = -3.0;  // per-axis velocity range, px/frame
  double vel_max = 3.0;
  double width_min = 40.0;
  double width_max = 120.0;
  double height_min = 80.0;
  double height_max = 260.0;
  std::vector<std::int64_t> entry_frames;  // per object, default 1
  std::vector<std::int64_t> exit_frames;   // per object, default num_frames
  std::vector<OcclusionWindow> occlusions;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

// Constant-velocity ground truth, deterministic per seed. Objects are placed
// so their whole trajectory stays inside the frame; an object that cannot fit
// is a ConfigError. Entries are sorted by frame, then id, with conf = 1,
// class = 1, visibility = 1.
std::vector<TrackEntry> generate_scenario(const ScenarioConfig& config);

struct NoiseModel {
  double center_jitter_std = 0.0;  // px
  double size_jitter_std = 0.0;    // px
  double drop_prob = 0.0;
  double clutter_rate = 0.0;  // expected false boxes per frame (Poisson)
  double true_conf_mean = 0.9;
  double true_conf_std = 0.0;
  double clutter_conf_mean = 0.5;
  double clutter_conf_std = 0.15;

  void validate() const;
};

// Detector model: each visible ground-truth box is dropped with drop_prob,
// otherwise jittered; Poisson clutter boxes are added uniformly in-frame with
// sizes drawn from the scenario's own box-size distribution.
std::vector<Detection> corrupt_detections(std::span<const TrackEntry> gt,
                                          const FrameGeometry& frame,
                                          std::int64_t num_frames,
                                          const NoiseModel& noise, Rng& rng);

}  // namespace motkit
