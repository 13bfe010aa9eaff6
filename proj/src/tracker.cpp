#include "motkit/tracker.hpp"

#include <algorithm>
#include <numeric>

#include "motkit/assign.hpp"
#include "motkit/kernels.hpp"

namespace motkit {

void TrackerConfig::validate() const {
  if (rebirth_window < 0) {
    throw DomainError("rebirth window must be >= 0");
  }
  if (detection_capacity < 1) {
    throw DomainError("detection capacity must be >= 1");
  }
  if (!(match_iou_threshold > 0.0 && match_iou_threshold < 1.0)) {
    throw DomainError("match IoU threshold must lie in (0, 1)");
  }
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
    throw DomainError("min confidence must lie in [0, 1]");
  }
  noise.validate();
}

std::vector<Track> TrackerState::active_tracks() const {
  std::vector<Track> out;
  for (const Track& t : tracks) {
    if (t.status == TrackStatus::Active) {
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Track& a, const Track& b) { return a.id < b.id; });
  return out;
}

namespace {

// Indices of the detections that survive the confidence gate, capped at
// `capacity` by descending confidence (stable on ties), in original order.
std::vector<std::size_t> admit_detections(const std::vector<Detection>& detections,
                                          double min_confidence, int capacity) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    if (detections[i].confidence >= min_confidence) {
      idx.push_back(i);
    }
  }
  if (idx.size() > static_cast<std::size_t>(capacity)) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return detections[a].confidence > detections[b].confidence;
    });
    idx.resize(static_cast<std::size_t>(capacity));
    std::sort(idx.begin(), idx.end());
  }
  return idx;
}

TrackCandidate predict_candidate(Track& track, const NoiseConfig& noise) {
  TrackCandidate candidate;
  candidate.track_id = track.id;
  try {
    auto [advanced, box] = kf_predict(track.kalman, noise);
    track.kalman = advanced;
    candidate.predicted_box = box;
  } catch (const DegeneratePredictionError&) {
    // Keep the prior filter state; the candidate cannot be matched this frame.
    candidate.predicted_box = track.box;
    candidate.background_bound = true;
  }
  return candidate;
}

}  // namespace

TrackerState init_first_frame(const std::vector<Detection>& detections,
                              const TrackerConfig& config, std::int64_t frame_index) {
  config.validate();
  TrackerState state;
  state.last_frame = frame_index;
  state.stats.frames = 1;
  for (const std::size_t i :
       admit_detections(detections, config.min_confidence, config.detection_capacity)) {
    Track t;
    t.id = state.next_id++;
    t.box = detections[i].box;
    t.kalman = kf_init(detections[i].box, config.noise);
    t.status = TrackStatus::Active;
    t.last_seen_frame = frame_index;
    state.tracks.push_back(std::move(t));
    ++state.stats.tracks_born;
  }
  return state;
}

std::vector<TrackCandidate> propagate(std::span<const Track> tracks,
                                      const NoiseConfig& noise) {
  std::vector<TrackCandidate> candidates;
  candidates.reserve(tracks.size());
  for (const Track& t : tracks) {
    Track scratch = t;
    candidates.push_back(predict_candidate(scratch, noise));
  }
  return candidates;
}

RefinerResult association_refine(const std::vector<TrackCandidate>& candidates,
                                 const std::vector<Detection>& detections,
                                 double iou_threshold) {
  RefinerResult result;
  result.outcomes.assign(candidates.size(), CandidateOutcome::background());

  std::vector<std::size_t> matchable;
  kernels::BoxArray candidate_boxes;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!candidates[i].background_bound) {
      matchable.push_back(i);
      candidate_boxes.push_back(candidates[i].predicted_box);
    }
  }

  std::vector<char> det_matched(detections.size(), 0);
  if (!matchable.empty() && !detections.empty()) {
    kernels::BoxArray det_boxes;
    det_boxes.reserve(detections.size());
    for (const Detection& d : detections) {
      det_boxes.push_back(d.box);
    }
    const int rows = static_cast<int>(matchable.size());
    const int cols = static_cast<int>(detections.size());
    std::vector<double> overlap(static_cast<std::size_t>(rows) * cols);
    kernels::iou_matrix(candidate_boxes, det_boxes, overlap.data());

    CostMatrix costs = CostMatrix::zeros(rows, cols);
    for (std::size_t k = 0; k < overlap.size(); ++k) {
      costs.costs[k] = 1.0 - overlap[k];
    }
    for (const auto& [r, c] : solve_assignment(costs).pairs) {
      if (overlap[static_cast<std::size_t>(r) * cols + c] >= iou_threshold) {
        result.outcomes[matchable[r]] =
            CandidateOutcome::refined_at(detections[c].box);
        det_matched[c] = 1;
      }
    }
  }

  for (std::size_t j = 0; j < detections.size(); ++j) {
    if (!det_matched[j]) {
      result.new_objects.push_back(detections[j]);
    }
  }
  return result;
}

std::vector<Track> step(TrackerState& state, std::int64_t frame_index,
                        const std::vector<Detection>& detections, Refiner& refiner,
                        const TrackerConfig& config) {
  config.validate();
  if (frame_index != state.last_frame + 1) {
    throw SequencingError("expected frame " + std::to_string(state.last_frame + 1) +
                          ", got " + std::to_string(frame_index));
  }

  std::vector<Detection> gated;
  for (const Detection& d : detections) {
    if (d.confidence >= config.min_confidence) {
      gated.push_back(d);
    }
  }

  std::vector<TrackCandidate> candidates;
  candidates.reserve(state.tracks.size());
  for (Track& t : state.tracks) {
    candidates.push_back(predict_candidate(t, config.noise));
  }

  const RefinerResult refined = refiner.refine(frame_index, candidates, gated);
  if (refined.outcomes.size() != candidates.size()) {
    throw ConsistencyError("refiner must produce one outcome per candidate");
  }

  std::vector<Track> survivors;
  survivors.reserve(state.tracks.size());
  for (std::size_t i = 0; i < state.tracks.size(); ++i) {
    Track& t = state.tracks[i];
    const CandidateOutcome& outcome = refined.outcomes[i];
    if (outcome.refined) {
      if (t.status == TrackStatus::Inactive) {
        ++state.stats.rebirths;
      }
      t.status = TrackStatus::Active;
      t.inactive_age = 0;
      t.box = outcome.box;
      t.kalman = kf_update(t.kalman, outcome.box, config.noise);
      t.last_seen_frame = frame_index;
      survivors.push_back(std::move(t));
    } else {
      t.status = TrackStatus::Inactive;
      ++t.inactive_age;
      if (t.inactive_age <= config.rebirth_window) {
        survivors.push_back(std::move(t));
      }
      // else: the re-birth window has elapsed; the id is retired for good.
    }
  }
  state.tracks = std::move(survivors);

  std::vector<std::size_t> fresh = admit_detections(
      refined.new_objects, config.min_confidence, config.detection_capacity);
  for (const std::size_t i : fresh) {
    Track t;
    t.id = state.next_id++;
    t.box = refined.new_objects[i].box;
    t.kalman = kf_init(refined.new_objects[i].box, config.noise);
    t.status = TrackStatus::Active;
    t.last_seen_frame = frame_index;
    state.tracks.push_back(std::move(t));
    ++state.stats.tracks_born;
  }

  state.last_frame = frame_index;
  ++state.stats.frames;
  return state.active_tracks();
}

}  // namespace motkit
