#include "posecast/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace posecast {

void AdamState::step(std::span<Tensor* const> params, std::span<const Tensor> grads) {
  if (params.size() != grads.size()) {
    throw std::invalid_argument("adam: " + std::to_string(params.size()) + " params vs " +
                                std::to_string(grads.size()) + " grads");
  }
  if (m_.empty()) {
    m_.reserve(params.size());
    v_.reserve(params.size());
    for (const Tensor* p : params) {
      m_.emplace_back(p->shape());
      v_.emplace_back(p->shape());
    }
  } else if (m_.size() != params.size()) {
    throw std::invalid_argument("adam: parameter list size changed between steps");
  }

  ++t_;
  const double bc1 = 1.0 - std::pow(hp_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(hp_.beta2, static_cast<double>(t_));

  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = *params[i];
    const Tensor& g = grads[i];
    if (!p.same_shape(g) || !p.same_shape(m_[i])) {
      throw std::invalid_argument("adam: shape mismatch at parameter " + std::to_string(i) +
                                  ": " + p.shape_str() + " vs " + g.shape_str());
    }
    Tensor& m = m_[i];
    Tensor& v = v_[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      m[j] = hp_.beta1 * m[j] + (1.0 - hp_.beta1) * g[j];
      v[j] = hp_.beta2 * v[j] + (1.0 - hp_.beta2) * g[j] * g[j];
      const double m_hat = m[j] / bc1;
      const double v_hat = v[j] / bc2;
      p[j] -= hp_.lr * m_hat / (std::sqrt(v_hat) + hp_.epsilon);
    }
  }
}

void adam_step(std::span<Tensor* const> params, std::span<const Tensor> grads,
               AdamState& state) {
  state.step(params, grads);
}

}  // namespace posecast
