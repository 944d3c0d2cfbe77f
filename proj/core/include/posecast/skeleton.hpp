#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posecast/tensor.hpp"

namespace posecast {

struct Joint {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct SkeletonFrame {
  int index = 0;
  std::vector<Joint> joints;  // unique ids, finite coordinates

  const Joint* find(int id) const;
};

struct SkeletonSequence {
  std::string source;
  std::string subject;
  std::string action;
  std::vector<SkeletonFrame> frames;  // strictly increasing indices
};

enum class BodyPart : std::uint8_t { kLeftArm, kRightArm, kTrunk, kLeftLeg, kRightLeg };

/// Row ordering of the pseudo-image. The default order groups joints by
/// body part (left arm, right arm, trunk, left leg, right leg) so that
/// the trunk rows separate arm rows from leg rows. A disorder order is a
/// seeded random permutation with the part annotation dropped.
class JointOrder {
 public:
  static JointOrder body_part_default();
  static JointOrder disorder(std::uint64_t seed);
  /// Annotated order from explicit blocks; validates block layout.
  JointOrder(std::vector<int> ids, std::vector<BodyPart> parts);
  /// Unannotated order (disorder ablation); validates uniqueness only.
  explicit JointOrder(std::vector<int> ids);

  int size() const { return static_cast<int>(ids_.size()); }
  int id_at(int row) const { return ids_[static_cast<std::size_t>(row)]; }
  std::optional<BodyPart> part_at(int row) const;
  bool annotated() const { return !parts_.empty(); }
  const std::vector<int>& ids() const { return ids_; }

  friend bool operator==(const JointOrder& a, const JointOrder& b) = default;

 private:
  std::vector<int> ids_;
  std::vector<BodyPart> parts_;  // empty when unannotated
};

/// One-channel N x 3 image; row i holds the (x, y, z) of the i-th joint in
/// some JointOrder. Values are raw coordinates, unclamped and unnormalized.
class PseudoImage {
 public:
  PseudoImage() = default;
  explicit PseudoImage(int rows);
  PseudoImage(int rows, std::vector<double> data);

  int rows() const { return rows_; }
  double& at(int row, int axis) { return data_[static_cast<std::size_t>(row) * 3 + axis]; }
  double at(int row, int axis) const { return data_[static_cast<std::size_t>(row) * 3 + axis]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Tensor to_tensor() const;                      // shape {1, rows, 3}
  static PseudoImage from_tensor(const Tensor&);  // {rows, 3} or {1, rows, 3}

  friend bool operator==(const PseudoImage& a, const PseudoImage& b) = default;

 private:
  int rows_ = 0;
  std::vector<double> data_;
};

using PseudoImageSequence = std::vector<PseudoImage>;

PseudoImage frame_to_pseudo_image(const SkeletonFrame& frame, const JointOrder& order);
SkeletonFrame pseudo_image_to_frame(const PseudoImage& img, const JointOrder& order,
                                    int frame_index = 0);
PseudoImageSequence sequence_to_pseudo_images(const SkeletonSequence& seq,
                                              const JointOrder& order);

/// c -> scale * (c + translation), per axis. scale must be positive.
SkeletonSequence uniform_rescale(const SkeletonSequence& seq,
                                 const std::array<double, 3>& translation, double scale);

}  // namespace posecast
