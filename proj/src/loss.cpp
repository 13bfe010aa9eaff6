#include "motkit/loss.hpp"

#include <cmath>
#include <vector>

#include "motkit/kernels.hpp"

namespace motkit {

namespace {

constexpr double kNormTol = 1e-6;

void require_normalized(const Box& b, const char* what) {
  if (!b.finite()) {
    throw NumericError(std::string("non-finite ") + what + " box");
  }
  if (!b.positive_area()) {
    throw InvalidBoxError(std::string("non-positive area for ") + what + " box");
  }
  if (b.left < -kNormTol || b.top < -kNormTol || b.right() > 1.0 + kNormTol ||
      b.bottom() > 1.0 + kNormTol) {
    throw DomainError(std::string(what) + " box is not frame-normalized");
  }
}

void require_scores(const ClassScores& s) {
  if (!(std::isfinite(s.person) && std::isfinite(s.background))) {
    throw NumericError("non-finite class scores");
  }
  if (s.person < -kNormTol || s.person > 1.0 + kNormTol || s.background < -kNormTol ||
      s.background > 1.0 + kNormTol ||
      std::abs(s.person + s.background - 1.0) > kNormTol) {
    throw DomainError("class scores must be probabilities summing to 1");
  }
}

// Focal term with the [0, 1] probability clamped away from log(0); the class
// probabilities are validated, so this only absorbs the +-1e-6 tolerance.
double focal_checked(double p, const FocalParams& fp) {
  return focal_loss(std::min(std::max(p, 1e-12), 1.0), fp.alpha, fp.gamma);
}

double pair_term(const Prediction& pred, const Box& target, const LossWeights& w,
                 const FocalParams& fp) {
  const double cls = focal_checked(pred.scores.person, fp);
  const double l1 = detail::pair_l1_cxcywh(pred.box.left, pred.box.top,
                                           pred.box.right(), pred.box.bottom(),
                                           target.left, target.top, target.right(),
                                           target.bottom());
  const double overlap = giou(pred.box, target);
  return w.lambda_cls * cls + w.lambda_l1 * l1 + w.lambda_iou * (1.0 - overlap);
}

}  // namespace

double focal_loss(double p_true_class, double alpha, double gamma) {
  if (!(p_true_class > 0.0 && p_true_class <= 1.0)) {
    throw DomainError("focal loss needs a probability in (0, 1]");
  }
  if (!(std::isfinite(alpha) && std::isfinite(gamma))) {
    throw NumericError("non-finite focal parameters");
  }
  return -alpha * std::pow(1.0 - p_true_class, gamma) * std::log(p_true_class);
}

CostMatrix match_cost(std::span<const Prediction> predictions,
                      std::span<const Box> targets, const LossWeights& weights,
                      const FocalParams& focal) {
  weights.validate();
  for (const Prediction& p : predictions) {
    require_normalized(p.box, "prediction");
    require_scores(p.scores);
  }
  for (const Box& t : targets) {
    require_normalized(t, "target");
  }

  const int rows = static_cast<int>(predictions.size());
  const int cols = static_cast<int>(targets.size());
  CostMatrix m = CostMatrix::zeros(rows, cols);
  if (rows == 0 || cols == 0) {
    return m;
  }

  kernels::BoxArray pred_boxes;
  pred_boxes.reserve(predictions.size());
  for (const Prediction& p : predictions) {
    pred_boxes.push_back(p.box);
  }
  kernels::BoxArray target_boxes;
  target_boxes.reserve(targets.size());
  for (const Box& t : targets) {
    target_boxes.push_back(t);
  }

  std::vector<double> l1(m.costs.size());
  std::vector<double> overlap(m.costs.size());
  kernels::l1_cxcywh_matrix(pred_boxes, target_boxes, l1.data());
  kernels::giou_matrix(pred_boxes, target_boxes, overlap.data());

  for (int i = 0; i < rows; ++i) {
    const double cls = focal_checked(predictions[i].scores.person, focal);
    for (int j = 0; j < cols; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * cols + j;
      m.costs[k] = weights.lambda_cls * cls + weights.lambda_l1 * l1[k] +
                   weights.lambda_iou * (1.0 - overlap[k]);
    }
  }
  return m;
}

double detection_set_loss(std::span<const Prediction> predictions,
                          std::span<const Box> new_object_targets,
                          const LossWeights& weights, const FocalParams& focal) {
  const CostMatrix costs = match_cost(predictions, new_object_targets, weights, focal);
  const Assignment assignment = solve_assignment(costs);

  std::vector<char> matched(predictions.size(), 0);
  double loss = 0.0;
  for (const auto& [i, j] : assignment.pairs) {
    matched[i] = 1;
    loss += pair_term(predictions[i], new_object_targets[j], weights, focal);
  }
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!matched[i]) {
      loss += weights.lambda_cls * focal_checked(predictions[i].scores.background, focal);
    }
  }
  return loss;
}

double tracking_set_loss(const std::map<std::int64_t, Prediction>& predictions_by_id,
                         const std::map<std::int64_t, Box>& persisting_targets_by_id,
                         const LossWeights& weights, const FocalParams& focal) {
  weights.validate();
  for (const auto& [id, target] : persisting_targets_by_id) {
    if (!predictions_by_id.contains(id)) {
      throw ConsistencyError("persisting target id " + std::to_string(id) +
                             " has no corresponding query prediction");
    }
    require_normalized(target, "target");
  }

  double loss = 0.0;
  for (const auto& [id, pred] : predictions_by_id) {
    require_normalized(pred.box, "prediction");
    require_scores(pred.scores);
    const auto target = persisting_targets_by_id.find(id);
    if (target != persisting_targets_by_id.end()) {
      loss += pair_term(pred, target->second, weights, focal);
    } else {
      // The object left the frame; the query should decode to background.
      loss += weights.lambda_cls * focal_checked(pred.scores.background, focal);
    }
  }
  return loss;
}

double total_loss(double l_det, double l_trk) {
  if (l_det < 0.0 || l_trk < 0.0) {
    throw DomainError("losses must be non-negative");
  }
  return l_det + l_trk;
}

}  // namespace motkit
