#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "motkit/assign.hpp"
#include "motkit/box.hpp"

namespace motkit {

// Two-class score vector (MOT benchmarks are single-class plus background).
struct ClassScores {
  double person = 0.0;
  double background = 1.0;
};

// A decoded query output: a frame-normalized box plus class probabilities.
struct Prediction {
  Box box;  // coordinates normalized to [0, 1] by frame size
  ClassScores scores;
};

struct LossWeights {
  double lambda_cls = 2.0;
  double lambda_l1 = 5.0;
  double lambda_iou = 2.0;

  void validate() const {
    if (lambda_cls < 0.0 || lambda_l1 < 0.0 || lambda_iou < 0.0) {
      throw DomainError("loss weights must be non-negative");
    }
  }
};

struct FocalParams {
  double alpha = 0.25;
  double gamma = 2.0;
};

// -alpha * (1 - p)^gamma * ln(p) for p in (0, 1].
double focal_loss(double p_true_class, double alpha, double gamma);

// Matching cost between predictions and ground-truth person boxes:
// entry(i, j) = lambda_cls * focal(p_person_i) + lambda_l1 * L1(box_i, box_j)
//             + lambda_iou * (1 - giou(box_i, box_j)),
// with L1 over the normalized (cx, cy, w, h) components.
CostMatrix match_cost(std::span<const Prediction> predictions,
                      std::span<const Box> targets, const LossWeights& weights,
                      const FocalParams& focal = {});

// Set-prediction loss for new objects: Hungarian-matched terms plus
// background-class focal terms for unmatched predictions.
double detection_set_loss(std::span<const Prediction> predictions,
                          std::span<const Box> new_object_targets,
                          const LossWeights& weights, const FocalParams& focal = {});

// Set-prediction loss for persisting tracks; correspondence is given by
// tracking ID, no matching step. Predictions whose ID has left the frame
// contribute a background-class term. A persisting target without a
// prediction has no query to score and raises ConsistencyError.
double tracking_set_loss(const std::map<std::int64_t, Prediction>& predictions_by_id,
                         const std::map<std::int64_t, Box>& persisting_targets_by_id,
                         const LossWeights& weights, const FocalParams& focal = {});

double total_loss(double l_det, double l_trk);

}  // namespace motkit
