#include <doctest.h>

#include <cmath>
#include <cstring>

#include "motkit/motion.hpp"

using namespace motkit;

namespace {

bool symmetric(const Eigen::Matrix<double, 8, 8>& m, double tol = 1e-9) {
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

bool positive_definite(const Eigen::Matrix<double, 8, 8>& m) {
  Eigen::LLT<Eigen::Matrix<double, 8, 8>> llt(m);
  return llt.info() == Eigen::Success;
}

}  // namespace

TEST_CASE("kf_init maps the box into the state") {
  const KalmanState s = kf_init(Box{0, 0, 10, 20});
  CHECK(s.mean(0) == 5.0);
  CHECK(s.mean(1) == 10.0);
  CHECK(s.mean(2) == 0.5);
  CHECK(s.mean(3) == 20.0);
  for (int i = 4; i < 8; ++i) {
    CHECK(s.mean(i) == 0.0);
  }
  CHECK(symmetric(s.cov));
  CHECK(positive_definite(s.cov));
  CHECK_THROWS_AS(kf_init(Box{0, 0, 0, 20}), InvalidBoxError);
  CHECK_THROWS_AS(kf_init(Box{0, 0, 10, 20}, NoiseConfig{0, 1, 1}), DomainError);
}

TEST_CASE("kf_predict advances under constant velocity") {
  const Box b{5, 5, 12, 24};
  KalmanState s = kf_init(b);

  SUBCASE("zero velocity is a fixed point") {
    const auto [next, predicted] = kf_predict(s);
    CHECK(predicted.left == doctest::Approx(b.left).epsilon(1e-12));
    CHECK(predicted.top == doctest::Approx(b.top).epsilon(1e-12));
    CHECK(predicted.width == doctest::Approx(b.width).epsilon(1e-12));
    CHECK(predicted.height == doctest::Approx(b.height).epsilon(1e-12));
    CHECK(symmetric(next.cov));
    CHECK(positive_definite(next.cov));
  }

  SUBCASE("position moves by the velocity") {
    s.mean(4) = 3.0;
    const auto [next, predicted] = kf_predict(s);
    CHECK(next.mean(0) == s.mean(0) + 3.0);
    CHECK(predicted.cx() == doctest::Approx(s.mean(0) + 3.0).epsilon(1e-12));
  }

  SUBCASE("collapsing height is a degenerate prediction") {
    s.mean(7) = -30.0;  // height velocity drives height negative
    CHECK_THROWS_AS(kf_predict(s), DegeneratePredictionError);
  }
}

TEST_CASE("kf_update corrects toward the measurement") {
  KalmanState s = kf_init(Box{10, 10, 20, 40});

  SUBCASE("zero innovation leaves the mean untouched") {
    const KalmanState posterior = kf_update(s, state_box(s));
    CHECK((posterior.mean - s.mean).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("position covariance contracts") {
    const KalmanState posterior = kf_update(s, Box{12, 11, 20, 40});
    const double prior_trace = s.cov(0, 0) + s.cov(1, 1);
    const double post_trace = posterior.cov(0, 0) + posterior.cov(1, 1);
    CHECK(post_trace <= prior_trace);
    CHECK(symmetric(posterior.cov));
    CHECK(positive_definite(posterior.cov));
  }

  SUBCASE("invalid measurements are rejected") {
    CHECK_THROWS_AS(kf_update(s, Box{0, 0, -1, 5}), InvalidBoxError);
    CHECK_THROWS_AS(kf_update(s, Box{std::nan(""), 0, 1, 5}), NumericError);
  }
}

TEST_CASE("repeated updates with a static box converge to it") {
  KalmanState s = kf_init(Box{0, 0, 50, 100});
  const Box target{40, 30, 52, 104};
  for (int i = 0; i < 20; ++i) {
    s = kf_predict(s).first;
    s = kf_update(s, target);
  }
  const Box estimate = state_box(s);
  CHECK(std::abs(estimate.cx() - target.cx()) < 1e-6);
  CHECK(std::abs(estimate.cy() - target.cy()) < 1e-6);
  CHECK(std::abs(estimate.height - target.height) < 1e-6);
}

TEST_CASE("noiseless constant-velocity tracking becomes exact") {
  const double dx = 3.0, dy = 2.0;
  const auto truth = [&](int t) {
    return Box{100.0 + dx * t, 200.0 + dy * t, 40.0, 80.0};
  };
  KalmanState s = kf_init(truth(0));
  std::vector<double> errors;
  for (int t = 1; t <= 30; ++t) {
    const auto [advanced, predicted] = kf_predict(s);
    errors.push_back(std::hypot(predicted.cx() - truth(t).cx(),
                                predicted.cy() - truth(t).cy()));
    s = kf_update(advanced, truth(t));
  }
  // monotone non-increasing after the first 3 updates
  for (std::size_t i = 3; i + 1 < errors.size(); ++i) {
    CHECK(errors[i + 1] <= errors[i] + 1e-12);
  }
  for (std::size_t i = 20; i < errors.size(); ++i) {
    CHECK(errors[i] < 1e-6);
  }
}

TEST_CASE("filter steps are bit-deterministic") {
  const Box b{1.5, 2.5, 30, 60};
  const Box meas{2.0, 3.0, 31, 62};
  const KalmanState a1 = kf_update(kf_predict(kf_init(b)).first, meas);
  const KalmanState a2 = kf_update(kf_predict(kf_init(b)).first, meas);
  CHECK(std::memcmp(a1.mean.data(), a2.mean.data(), sizeof(double) * 8) == 0);
  CHECK(std::memcmp(a1.cov.data(), a2.cov.data(), sizeof(double) * 64) == 0);
}
