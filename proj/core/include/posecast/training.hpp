#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "posecast/adam.hpp"
#include "posecast/data.hpp"
#include "posecast/edd.hpp"
#include "posecast/ste.hpp"

namespace posecast {

enum class LossKind { kL1, kL2 };

LossKind loss_kind_from_string(std::string_view name);
std::string_view to_string(LossKind kind);

struct StepRecord {
  int step = 0;    // 1-based
  double loss = 0.0;  // training objective on the step's batch
  double l1 = 0.0;    // both measures are always recorded
  double l2 = 0.0;
};

struct TrainOptions {
  LossKind loss = LossKind::kL1;
  AdamParams adam;
  int steps = 1000;
  int batch_size = 1;
  std::uint64_t seed = 1;  // clip iteration order
  std::function<void(const StepRecord&)> on_step;  // optional
};

struct TrainLog {
  LossKind loss = LossKind::kL1;
  std::vector<StepRecord> steps;
};

/// Clips are consumed in a seeded-shuffled order, reshuffled each epoch.
/// Batch loss is the mean of per-clip losses. Deterministic given the model,
/// clips, and options.
TrainLog train_edd(EddModel& model, std::span<const ImageClip> clips,
                   const TrainOptions& options);
TrainLog train_ste(SteModel& model, std::span<const ImageClip> clips,
                   const TrainOptions& options);

/// Mean per-clip loss over a dataset, without updating the model.
double dataset_loss(const EddModel& model, std::span<const ImageClip> clips, LossKind kind);
double dataset_loss(const SteModel& model, std::span<const ImageClip> clips, LossKind kind);

/// L1/L2 values of one prediction against its target, using the same
/// per-frame normalization as the training losses.
double sequence_loss(const PseudoImageSequence& pred, const PseudoImageSequence& target,
                     LossKind kind);

}  // namespace posecast
