#include "motkit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace motkit {

void ScenarioConfig::validate() const {
  if (frame.width <= 0 || frame.height <= 0) {
    throw ConfigError("frame dimensions must be positive");
  }
  if (num_objects < 0 || num_frames < 1) {
    throw ConfigError("need num_objects >= 0 and num_frames >= 1");
  }
  if (vel_min > vel_max || width_min > width_max || height_min > height_max ||
      width_min <= 0.0 || height_min <= 0.0) {
    throw ConfigError("invalid velocity or size ranges");
  }
  if (width_min > frame.width || height_min > frame.height) {
    throw ConfigError("object never inside frame: minimum size exceeds frame");
  }
  for (const OcclusionWindow& w : occlusions) {
    if (w.duration < 0) {
      throw ConfigError("occlusion duration must be >= 0");
    }
    if (w.object_id < 1 || w.object_id > num_objects) {
      throw ConfigError("occlusion refers to unknown object id " +
                        std::to_string(w.object_id));
    }
  }
  if (!entry_frames.empty() && entry_frames.size() != static_cast<std::size_t>(num_objects)) {
    throw ConfigError("entry_frames must list one frame per object");
  }
  if (!exit_frames.empty() && exit_frames.size() != static_cast<std::size_t>(num_objects)) {
    throw ConfigError("exit_frames must list one frame per object");
  }
}

namespace {

// Everything the simulator emits sits on the quarter-pixel grid. Such values
// are dyadic, so box coordinates at every frame are exact doubles and the
// 2-decimal file format round-trips them bit-exactly.
double floor_q(double v) { return std::floor(v * 4.0) / 4.0; }
double ceil_q(double v) { return std::ceil(v * 4.0) / 4.0; }
double round_q(double v) { return std::nearbyint(v * 4.0) / 4.0; }

}  // namespace

std::vector<TrackEntry> generate_scenario(const ScenarioConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);

  struct Body {
    double x0, y0, vx, vy, w, h;
    std::int64_t entry, exit;
  };
  std::vector<Body> bodies;

  const double frame_w = config.frame.width;
  const double frame_h = config.frame.height;

  for (int i = 0; i < config.num_objects; ++i) {
    Body b;
    b.entry = config.entry_frames.empty() ? 1 : config.entry_frames[i];
    b.exit = config.exit_frames.empty() ? config.num_frames : config.exit_frames[i];
    if (b.entry < 1 || b.exit > config.num_frames || b.entry > b.exit) {
      throw ConfigError("entry/exit schedule out of range for object " +
                        std::to_string(i + 1));
    }
    b.w = std::max(0.25, floor_q(rng.uniform(config.width_min,
                                             std::min(config.width_max, frame_w))));
    b.h = std::max(0.25, floor_q(rng.uniform(config.height_min,
                                             std::min(config.height_max, frame_h))));
    const double lifetime = static_cast<double>(b.exit - b.entry);
    // Sample a velocity whose full-lifetime trajectory fits in the frame,
    // shrinking the draw when the frame cannot contain it.
    double shrink = 1.0;
    for (int attempt = 0;; ++attempt) {
      b.vx = round_q(shrink * rng.uniform(config.vel_min, config.vel_max));
      b.vy = round_q(shrink * rng.uniform(config.vel_min, config.vel_max));
      const double lo_x = ceil_q(std::max(0.0, -b.vx * lifetime));
      const double hi_x =
          floor_q(std::min(frame_w - b.w, frame_w - b.w - b.vx * lifetime));
      const double lo_y = ceil_q(std::max(0.0, -b.vy * lifetime));
      const double hi_y =
          floor_q(std::min(frame_h - b.h, frame_h - b.h - b.vy * lifetime));
      if (lo_x <= hi_x && lo_y <= hi_y) {
        b.x0 = floor_q(rng.uniform(lo_x, hi_x));
        b.y0 = floor_q(rng.uniform(lo_y, hi_y));
        break;
      }
      if (attempt >= 200) {
        throw ConfigError("object never inside frame for its whole lifetime");
      }
      shrink *= 0.5;
    }
    bodies.push_back(b);
  }

  std::vector<TrackEntry> entries;
  for (std::int64_t f = 1; f <= config.num_frames; ++f) {
    for (int i = 0; i < config.num_objects; ++i) {
      const Body& b = bodies[i];
      if (f < b.entry || f > b.exit) {
        continue;
      }
      const bool occluded = std::any_of(
          config.occlusions.begin(), config.occlusions.end(),
          [&](const OcclusionWindow& w) {
            return w.object_id == i + 1 && f >= w.start_frame &&
                   f < w.start_frame + w.duration;
          });
      if (occluded) {
        continue;
      }
      const double t = static_cast<double>(f - b.entry);
      TrackEntry e;
      e.frame = f;
      e.id = i + 1;
      e.box = Box{b.x0 + b.vx * t, b.y0 + b.vy * t, b.w, b.h};
      e.conf = 1.0;
      e.cls = 1;
      e.visibility = 1.0;
      entries.push_back(e);
    }
  }
  return entries;
}

void NoiseModel::validate() const {
  if (center_jitter_std < 0.0 || size_jitter_std < 0.0 || clutter_rate < 0.0 ||
      true_conf_std < 0.0 || clutter_conf_std < 0.0) {
    throw ConfigError("noise standard deviations and rates must be >= 0");
  }
  if (drop_prob < 0.0 || drop_prob > 1.0) {
    throw ConfigError("drop probability must lie in [0, 1]");
  }
}

std::vector<Detection> corrupt_detections(std::span<const TrackEntry> gt,
                                          const FrameGeometry& frame,
                                          std::int64_t num_frames,
                                          const NoiseModel& noise, Rng& rng) {
  noise.validate();
  if (frame.width <= 0 || frame.height <= 0) {
    throw ConfigError("frame dimensions must be positive");
  }

  std::map<std::int64_t, std::vector<const TrackEntry*>> by_frame;
  std::vector<std::pair<double, double>> sizes;
  for (const TrackEntry& e : gt) {
    by_frame[e.frame].push_back(&e);
    sizes.emplace_back(e.box.width, e.box.height);
  }

  const double frame_w = frame.width;
  const double frame_h = frame.height;
  std::vector<Detection> detections;
  for (std::int64_t f = 1; f <= num_frames; ++f) {
    const auto it = by_frame.find(f);
    if (it != by_frame.end()) {
      for (const TrackEntry* e : it->second) {
        if (rng.bernoulli(noise.drop_prob)) {
          continue;
        }
        const double cx = e->box.cx() + rng.normal(0.0, noise.center_jitter_std);
        const double cy = e->box.cy() + rng.normal(0.0, noise.center_jitter_std);
        const double w =
            std::max(1.0, e->box.width + rng.normal(0.0, noise.size_jitter_std));
        const double h =
            std::max(1.0, e->box.height + rng.normal(0.0, noise.size_jitter_std));
        Detection d;
        d.frame = f;
        d.box = noise.center_jitter_std == 0.0 && noise.size_jitter_std == 0.0
                    ? e->box
                    : Box::from_cxcywh(cx, cy, w, h);
        d.confidence = std::clamp(
            rng.normal(noise.true_conf_mean, noise.true_conf_std), 0.0, 1.0);
        detections.push_back(d);
      }
    }
    const std::uint64_t clutter = rng.poisson(noise.clutter_rate);
    for (std::uint64_t k = 0; k < clutter; ++k) {
      double w = frame_w / 10.0;
      double h = frame_h / 5.0;
      if (!sizes.empty()) {
        const auto& [sw, sh] = sizes[rng.uniform_int(sizes.size())];
        w = sw;
        h = sh;
      }
      w = std::min(w, frame_w);
      h = std::min(h, frame_h);
      Detection d;
      d.frame = f;
      d.box = Box{rng.uniform(0.0, frame_w - w), rng.uniform(0.0, frame_h - h), w, h};
      d.confidence = std::clamp(
          rng.normal(noise.clutter_conf_mean, noise.clutter_conf_std), 0.0, 1.0);
      detections.push_back(d);
    }
  }
  return detections;
}

}  // namespace motkit
