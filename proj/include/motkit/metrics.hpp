#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "motkit/mot_io.hpp"

namespace motkit {

// Per-frame matching state for the CLEAR accumulator. `matched` holds this
// frame's gt -> hypothesis pairs; `last_hyp` is the persistent memory an ID
// switch is judged against.
struct FrameCorrespondence {
  std::map<std::int64_t, std::int64_t> matched;
  std::map<std::int64_t, std::int64_t> last_hyp;
  std::vector<std::int64_t> unmatched_gt;
  std::vector<std::int64_t> unmatched_hyp;
  std::int64_t switches = 0;
};

struct IdBoxRef {
  std::int64_t id = 0;
  Box box;
};

// One CLEAR matching step: persisting prior pairs are kept while their IoU
// stays at or above the threshold; the remainder is matched by minimum
// (1 - IoU) assignment gated at the threshold.
FrameCorrespondence clear_match(const FrameCorrespondence& prev,
                                std::span<const IdBoxRef> gt,
                                std::span<const IdBoxRef> hyp, double threshold);

struct ClearCounts {
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t idsw = 0;
  std::int64_t gt_total = 0;
  std::int64_t matches = 0;
  int mt = 0;
  int ml = 0;
  int gt_trajectories = 0;
  double mota = 0.0;
};

// CLEAR metrics over one sequence. Ground truth is filtered to evaluated
// pedestrian entries (flag 1, class 1); hypotheses matching an ignored
// ground-truth box at the threshold are excluded from the FP count.
ClearCounts compute_clear(std::span<const TrackEntry> gt,
                          std::span<const TrackEntry> results,
                          double threshold = 0.5);

struct IdCounts {
  std::int64_t idtp = 0;
  std::int64_t idfp = 0;
  std::int64_t idfn = 0;
  double idf1 = 0.0;
};

// IDF1 under the globally optimal identity-to-identity matching: a frame
// contributes to IDTP when the paired ids overlap with IoU >= threshold.
IdCounts compute_idf1(std::span<const TrackEntry> gt,
                      std::span<const TrackEntry> results, double threshold = 0.5);

struct SequenceMetrics {
  std::string name;
  ClearCounts clear;
  IdCounts id;
};

struct MetricReport {
  double mota = 0.0;
  double idf1 = 0.0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t idsw = 0;
  int mt = 0;
  int ml = 0;
  std::int64_t gt_total = 0;
  std::vector<SequenceMetrics> per_sequence;
};

struct SequencePair {
  std::string name;
  std::span<const TrackEntry> gt;
  std::span<const TrackEntry> results;
};

MetricReport evaluate_sequences(std::span<const SequencePair> sequences,
                                double threshold = 0.5);

// Aligned plain-text table and key = value form with stable field names.
std::string report_table(const MetricReport& report);
std::string report_key_values(const MetricReport& report);

}  // namespace motkit
