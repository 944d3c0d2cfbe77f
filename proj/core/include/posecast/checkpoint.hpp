#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "posecast/edd.hpp"
#include "posecast/skeleton.hpp"
#include "posecast/ste.hpp"

namespace posecast {

inline constexpr int kCheckpointVersion = 1;

/// Loaded checkpoint: exactly one of `edd` / `ste` is set.
struct Checkpoint {
  std::string model_type;  // "edd" | "ste"
  std::optional<EddModel> edd;
  std::optional<SteModel> ste;
  JointOrder order = JointOrder::body_part_default();
};

// JSON container: format tag, version, model type, config, joint order and
// every named parameter with shape and row-major values. Serialization is
// deterministic (sorted keys, shortest round-trip doubles).
void save_checkpoint(const std::filesystem::path& path, const EddModel& model,
                     const JointOrder& order);
void save_checkpoint(const std::filesystem::path& path, const SteModel& model,
                     const JointOrder& order);

/// Throws std::runtime_error on unreadable or malformed files, version or
/// shape mismatches, and unknown or missing parameters.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace posecast
