#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motkit/box.hpp"
#include "motkit/rng.hpp"

namespace motkit {

struct IdBox {
  std::int64_t id = 0;
  Box box;
};

struct JitterConfig {
  double max_center_shift = 0.1;  // fraction of box width/height
  double max_scale_change = 0.2;  // fraction of box size
  double min_iou_keep = 0.5;      // pinned by the training recipe
  int max_attempts = 50;

  void validate() const {
    if (max_center_shift < 0.0 || max_scale_change < 0.0 ||
        max_scale_change >= 1.0 || max_attempts < 1) {
      throw ConfigError("invalid jitter configuration");
    }
  }
};

// Randomly shifted and rescaled copy of the previous-frame box. When the
// same-ID current-frame box exists, rejection-samples until the result keeps
// IoU >= min_iou_keep with it, falling back to the unjittered box after
// max_attempts.
Box jitter_candidate(const Box& gt_box_prev, const std::optional<Box>& gt_box_curr,
                     const JitterConfig& config, Rng& rng);

// In-frame box with IoU < min_iou_keep against every current ground-truth
// box; sizes are drawn from the ground-truth size distribution (uniform
// fractions of the frame when no ground truth exists). Empty on exhaustion.
std::optional<Box> inject_false_positive(std::span<const Box> all_gt_boxes_curr,
                                         const FrameGeometry& frame,
                                         const JitterConfig& config, Rng& rng);

// Independent Bernoulli(drop_prob) per persisting id; returns the dropped set.
std::vector<std::int64_t> remove_false_negatives(
    std::span<const std::int64_t> persisting_ids, double drop_prob, Rng& rng);

struct PairSynthConfig {
  double scale_min = 0.8;
  double scale_max = 1.2;
  double max_translate_frac = 0.1;  // fraction of frame size

  void validate() const {
    if (scale_min <= 0.0 || scale_min > scale_max || max_translate_frac < 0.0) {
      throw ConfigError("invalid pair synthesis configuration");
    }
  }
};

// Two coherent views of a static annotation: per view, one uniform scale plus
// translation applied to all boxes jointly, clamped to the frame; boxes that
// clamp away entirely are dropped from that view.
std::pair<std::vector<IdBox>, std::vector<IdBox>> synthesize_pair_from_image(
    std::span<const IdBox> gt_boxes, const FrameGeometry& frame,
    const PairSynthConfig& config, Rng& rng);

// Frame pair (k - g, k), 1-based, with gap g uniform in [1, max_gap] (capped
// by the sequence length) and k uniform in range.
std::pair<std::int64_t, std::int64_t> select_frame_pair(std::int64_t sequence_length,
                                                        int max_gap, Rng& rng);

struct AugmentConfig {
  JitterConfig jitter;
  PairSynthConfig pair_synth;
  double drop_prob = 0.1;
  int max_false_positives = 3;
  int max_gap = 3;

  void validate() const {
    jitter.validate();
    pair_synth.validate();
    if (drop_prob < 0.0 || drop_prob > 1.0 || max_false_positives < 0 || max_gap < 1) {
      throw ConfigError("invalid augmentation configuration");
    }
  }
};

// One serialized training example: the frame pair's ground truth, the
// generated candidates, and the injected errors.
struct TrainingSample {
  std::vector<IdBox> prev_tracks;
  std::vector<IdBox> curr_tracks;
  std::vector<IdBox> candidates;        // keyed by previous-frame track id
  std::vector<Box> false_positives;
  std::vector<std::int64_t> removed_ids;
  std::string source;
  std::uint64_t seed = 0;
};

TrainingSample make_training_sample(std::span<const IdBox> prev_tracks,
                                    std::span<const IdBox> curr_tracks,
                                    const FrameGeometry& frame,
                                    const AugmentConfig& config,
                                    std::uint64_t sample_seed, std::string source);

// One JSON object per line; serialization is byte-deterministic.
std::string serialize_sample(const TrainingSample& sample);
TrainingSample parse_sample(const std::string& line);

// Re-checks the sample invariants (candidate provenance, removed-id
// provenance, and both IoU constraints) from the serialized data alone.
// Throws ConsistencyError naming the first violation.
void validate_sample(const TrainingSample& sample);

}  // namespace motkit
