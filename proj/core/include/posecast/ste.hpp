#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "posecast/blocks.hpp"
#include "posecast/skeleton.hpp"
#include "posecast/tape.hpp"

namespace posecast {

/// Fully-connected baseline over the flattened pseudo-image window. Layer
/// widths are 3*joints*input_frames -> 300 -> 100 -> 300 ->
/// 3*joints*output_frames, tanh on the hidden layers, identity output.
struct SteConfig {
  int input_frames = 10;
  int output_frames = 10;
  int joints = 18;
  std::array<int, 3> hidden = {300, 100, 300};

  int input_width() const { return 3 * joints * input_frames; }
  int output_width() const { return 3 * joints * output_frames; }
  std::vector<int> layer_widths() const;
  void validate() const;

  friend bool operator==(const SteConfig& a, const SteConfig& b) = default;
};

struct SteModel {
  SteConfig config;
  std::vector<Tensor> weights;  // four matrices [out x in]
  std::vector<Tensor> biases;   // four vectors [out]
};

SteModel make_ste_model(const SteConfig& config, std::uint64_t seed);

std::size_t ste_param_count(const SteConfig& config);
std::size_t param_count(const SteModel& m);

void visit_params(SteModel& m, const ParamFn& fn);
void visit_params(const SteModel& m, const ConstParamFn& fn);
ParamMap bind_params(Tape& tape, const SteModel& m);

/// Tape builder; returns the {K, N, 3} prediction node.
ValueId ste_forward(Tape& tape, const ParamMap& params, const SteModel& m,
                    std::span<const ValueId> images);

PseudoImageSequence ste_forward(const SteModel& m, const PseudoImageSequence& inputs);

}  // namespace posecast
