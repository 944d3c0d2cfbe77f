#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "posecast/tensor.hpp"

namespace posecast {

struct AdamParams {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Bias-corrected Adam. Moment buffers are sized on the first step and must
/// see the same parameter list (shapes and order) on every later step.
class AdamState {
 public:
  explicit AdamState(AdamParams hp = {}) : hp_(hp) {}

  void step(std::span<Tensor* const> params, std::span<const Tensor> grads);

  std::int64_t step_count() const { return t_; }
  const AdamParams& hyper() const { return hp_; }
  const Tensor& first_moment(std::size_t i) const { return m_[i]; }
  const Tensor& second_moment(std::size_t i) const { return v_[i]; }

 private:
  AdamParams hp_;
  std::int64_t t_ = 0;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
};

void adam_step(std::span<Tensor* const> params, std::span<const Tensor> grads,
               AdamState& state);

}  // namespace posecast
