#include "motkit/motion.hpp"

namespace motkit {

namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Mat48 = Eigen::Matrix<double, 4, 8>;

Mat8 transition() {
  Mat8 f = Mat8::Identity();
  for (int i = 0; i < 4; ++i) {
    f(i, i + 4) = 1.0;
  }
  return f;
}

Mat48 observation() {
  Mat48 h = Mat48::Zero();
  for (int i = 0; i < 4; ++i) {
    h(i, i) = 1.0;
  }
  return h;
}

// Aspect ratio is dimensionless, so its noise does not scale with height;
// the fixed stds follow the SORT/DeepSORT convention.
constexpr double kAspectInitStd = 1e-2;
constexpr double kAspectProcessStd = 1e-2;
constexpr double kAspectVelStd = 1e-5;
constexpr double kAspectMeasStd = 1e-1;

Vec4 box_measurement(const Box& box) {
  Vec4 z;
  z << box.cx(), box.cy(), box.width / box.height, box.height;
  return z;
}

void require_measurement(const Box& box) {
  if (!box.finite()) {
    throw NumericError("non-finite measurement box");
  }
  if (!box.positive_area()) {
    throw InvalidBoxError("measurement box must have positive area");
  }
}

void symmetrize(Mat8& cov) { cov = (0.5 * (cov + cov.transpose())).eval(); }

}  // namespace

Box state_box(const KalmanState& state) {
  const double aspect = state.mean(2);
  const double height = state.mean(3);
  return Box::from_cxcywh(state.mean(0), state.mean(1), aspect * height, height);
}

KalmanState kf_init(const Box& box, const NoiseConfig& noise) {
  noise.validate();
  require_measurement(box);

  KalmanState s;
  s.mean << box.cx(), box.cy(), box.width / box.height, box.height, 0, 0, 0, 0;

  const double h = box.height;
  Vec8 std;
  std << 2 * noise.pos_std_factor * h, 2 * noise.pos_std_factor * h, kAspectInitStd,
      2 * noise.pos_std_factor * h, 10 * noise.vel_std_factor * h,
      10 * noise.vel_std_factor * h, kAspectVelStd, 10 * noise.vel_std_factor * h;
  s.cov = std.array().square().matrix().asDiagonal();
  return s;
}

std::pair<KalmanState, Box> kf_predict(const KalmanState& state,
                                       const NoiseConfig& noise) {
  noise.validate();
  static const Mat8 f = transition();

  const double h = state.mean(3);
  Vec8 std;
  std << noise.pos_std_factor * h, noise.pos_std_factor * h, kAspectProcessStd,
      noise.pos_std_factor * h, noise.vel_std_factor * h, noise.vel_std_factor * h,
      kAspectVelStd, noise.vel_std_factor * h;

  KalmanState next;
  next.mean = f * state.mean;
  next.cov = f * state.cov * f.transpose();
  next.cov += Mat8(std.array().square().matrix().asDiagonal());
  symmetrize(next.cov);

  if (!next.mean.allFinite()) {
    throw NumericError("non-finite prediction");
  }
  if (next.mean(3) <= 0.0 || next.mean(2) <= 0.0) {
    throw DegeneratePredictionError("predicted box has non-positive size");
  }
  return {next, state_box(next)};
}

KalmanState kf_update(const KalmanState& state, const Box& measurement,
                      const NoiseConfig& noise) {
  noise.validate();
  require_measurement(measurement);
  static const Mat48 hmat = observation();

  const double h = state.mean(3);
  Vec4 std;
  std << noise.meas_std_factor * h, noise.meas_std_factor * h, kAspectMeasStd,
      noise.meas_std_factor * h;
  const Mat4 r = std.array().square().matrix().asDiagonal();

  const Mat4 innovation_cov = hmat * state.cov * hmat.transpose() + r;
  const Eigen::Matrix<double, 8, 4> gain =
      state.cov * hmat.transpose() * innovation_cov.llt().solve(Mat4::Identity());

  KalmanState next;
  next.mean = state.mean + gain * (box_measurement(measurement) - hmat * state.mean);

  const Mat8 residual_form = Mat8::Identity() - gain * hmat;
  next.cov = residual_form * state.cov * residual_form.transpose() +
             gain * r * gain.transpose();
  symmetrize(next.cov);

  if (!next.mean.allFinite() || !next.cov.allFinite()) {
    throw NumericError("non-finite posterior");
  }
  return next;
}

}  // namespace motkit
