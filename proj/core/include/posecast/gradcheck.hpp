#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "posecast/edd.hpp"
#include "posecast/rng.hpp"
#include "posecast/ste.hpp"
#include "posecast/tensor.hpp"
#include "posecast/training.hpp"

namespace posecast {

/// Central difference (f(p+eps) - f(p-eps)) / (2 eps) for one coordinate.
/// `eval` must recompute the scalar from current parameter values; the
/// coordinate is restored before returning.
double finite_difference_grad(const std::function<double()>& eval, double& coord,
                              double eps = 1e-4);

/// |a - n| / max(|a|, |n|, guard).
double grad_rel_err(double analytic, double numeric, double guard = 1e-6);

struct GradCheckSample {
  std::string param;
  std::size_t index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_err = 0.0;
};

struct GradCheckResult {
  std::vector<GradCheckSample> samples;
  double max_rel_err = 0.0;

  bool pass(double tol = 1e-4) const { return max_rel_err <= tol && !samples.empty(); }
};

struct ParamRef {
  std::string name;
  Tensor* tensor = nullptr;
};

/// Compares `analytic` (one gradient per entry of `params`, same order)
/// against central differences of `eval` at `n_samples` randomly chosen
/// coordinates. Coordinates whose analytic gradient is below `skip_below`
/// are resampled, since the relative-error criterion is meaningless there.
GradCheckResult check_gradients(std::span<const ParamRef> params,
                                std::span<const Tensor> analytic,
                                const std::function<double()>& eval, int n_samples,
                                Rng& rng, double eps = 1e-4, double skip_below = 1e-6);

// Ready-made suites over freshly initialized random weights and inputs.
// Block checks probe sum(block(x) * r) for a fixed random r, which is smooth;
// model checks probe the actual training losses. L1 probes regenerate
// targets until every |pred - target| clears the kink guard, because a
// central difference straddling an L1 kink is not a gradient estimate.
GradCheckResult gradcheck_mu(int channels, int n_samples, std::uint64_t seed);
GradCheckResult gradcheck_rmb(int channels, int n_samples, std::uint64_t seed);
GradCheckResult gradcheck_cmu(int channels, int n_samples, std::uint64_t seed);
GradCheckResult gradcheck_edd(const EddConfig& config, LossKind loss, int n_samples,
                              std::uint64_t seed);
GradCheckResult gradcheck_ste(const SteConfig& config, LossKind loss, int n_samples,
                              std::uint64_t seed);

}  // namespace posecast
