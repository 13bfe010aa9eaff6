#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "motkit/motion.hpp"
#include "motkit/mot_io.hpp"

namespace motkit {

enum class TrackStatus { Active, Inactive };

struct Track {
  std::int64_t id = 0;
  Box box;
  KalmanState kalman;
  TrackStatus status = TrackStatus::Active;
  int inactive_age = 0;  // frames since last match; 0 while active
  std::int64_t last_seen_frame = 0;
};

// Motion-model prediction of one track in the current frame. A candidate is
// background-bound when the prediction degenerated and cannot be matched.
struct TrackCandidate {
  std::int64_t track_id = 0;
  Box predicted_box;
  bool background_bound = false;
};

struct TrackerConfig {
  int rebirth_window = 30;       // inactive tracks are kept for this many frames
  int detection_capacity = 500;  // per-frame budget of new-object admissions
  double match_iou_threshold = 0.5;
  double min_confidence = 0.4;
  NoiseConfig noise;

  void validate() const;
};

// Per-candidate refiner verdict: a refined box, or background.
struct CandidateOutcome {
  bool refined = false;
  Box box;

  static CandidateOutcome refined_at(const Box& b) { return {true, b}; }
  static CandidateOutcome background() { return {}; }
};

struct RefinerResult {
  std::vector<CandidateOutcome> outcomes;  // one per candidate, same order
  std::vector<Detection> new_objects;
};

// The extension seam: turns track candidates plus frame detections into
// refined boxes / background verdicts and leftover new objects. The shipped
// implementation is IoU-gated Hungarian association; a learned refiner can
// plug in without tracker changes.
class Refiner {
 public:
  virtual ~Refiner() = default;
  virtual RefinerResult refine(std::int64_t frame,
                               const std::vector<TrackCandidate>& candidates,
                               const std::vector<Detection>& detections) = 0;
};

// Builds a (1 - IoU) cost matrix between candidate and detection boxes,
// solves the assignment, and gates pairs at iou_threshold. Unmatched
// candidates become background; unmatched detections become new objects.
RefinerResult association_refine(const std::vector<TrackCandidate>& candidates,
                                 const std::vector<Detection>& detections,
                                 double iou_threshold);

class AssociationRefiner final : public Refiner {
 public:
  explicit AssociationRefiner(double iou_threshold = 0.5)
      : iou_threshold_(iou_threshold) {}
  RefinerResult refine(std::int64_t frame,
                       const std::vector<TrackCandidate>& candidates,
                       const std::vector<Detection>& detections) override {
    (void)frame;
    return association_refine(candidates, detections, iou_threshold_);
  }

 private:
  double iou_threshold_;
};

struct TrackerStats {
  std::int64_t frames = 0;
  std::int64_t tracks_born = 0;
  std::int64_t rebirths = 0;
};

struct TrackerState {
  std::vector<Track> tracks;  // Active and Inactive, in creation order
  std::int64_t next_id = 1;   // ids are never reissued within a run
  std::int64_t last_frame = 0;
  TrackerStats stats;

  std::vector<Track> active_tracks() const;
};

// First frame: every detection at or above min_confidence becomes an Active
// track, ids issued in detection order starting at 1, at most
// detection_capacity tracks (chosen by descending confidence on overflow).
TrackerState init_first_frame(const std::vector<Detection>& detections,
                              const TrackerConfig& config,
                              std::int64_t frame_index = 1);

// One candidate per track (Active and Inactive), carrying the track id and
// the one-step motion prediction.
std::vector<TrackCandidate> propagate(std::span<const Track> tracks,
                                      const NoiseConfig& noise = {});

// Advances the tracker by one frame; returns the Active track set for the
// frame. frame_index must be exactly state.last_frame + 1.
std::vector<Track> step(TrackerState& state, std::int64_t frame_index,
                        const std::vector<Detection>& detections, Refiner& refiner,
                        const TrackerConfig& config);

}  // namespace motkit
