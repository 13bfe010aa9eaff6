#pragma once

#include <Eigen/Dense>
#include <utility>

#include "motkit/box.hpp"

namespace motkit {

// Scale factors for the height-adaptive noise model. Standard deviations are
// factor * track height, re-evaluated every step.
struct NoiseConfig {
  double pos_std_factor = 1.0 / 20.0;
  double vel_std_factor = 1.0 / 20.0;
  double meas_std_factor = 1.0 / 100.0;

  void validate() const {
    if (!(pos_std_factor > 0.0 && vel_std_factor > 0.0 && meas_std_factor > 0.0)) {
      throw DomainError("noise std factors must be strictly positive");
    }
  }
};

// Constant-velocity filter state over (cx, cy, aspect, height) and their
// per-frame velocities. The covariance is kept symmetric positive-definite by
// re-symmetrizing after every step and using the Joseph-form update.
struct KalmanState {
  Eigen::Matrix<double, 8, 1> mean;
  Eigen::Matrix<double, 8, 8> cov;
};

// Box corresponding to the position/shape components of the mean.
Box state_box(const KalmanState& state);

KalmanState kf_init(const Box& box, const NoiseConfig& noise = {});

// One-frame prediction (dt = 1). Returns the advanced state and the predicted
// box. Throws DegeneratePredictionError when the predicted shape collapses.
std::pair<KalmanState, Box> kf_predict(const KalmanState& state,
                                       const NoiseConfig& noise = {});

KalmanState kf_update(const KalmanState& state, const Box& measurement,
                      const NoiseConfig& noise = {});

}  // namespace motkit
