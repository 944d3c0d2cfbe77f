#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "posecast/tensor.hpp"

namespace posecast {

using ValueId = std::int32_t;

enum class OpKind : std::uint8_t {
  kLeaf,
  kConv2d,     // (input, kernel, bias), same zero padding, odd kernel dims
  kAdd,
  kHadamard,
  kSigmoid,
  kTanh,
  kScalarMul,
  kAffine,     // (weight [out x in], x [in], bias [out])
  kReshape,
  kStack,      // new leading axis over same-shape inputs
  kSum,        // sum of all elements -> scalar
  kL1Loss,     // (pred, target) -> scalar, normalized by frame count
  kL2Loss,
};

/// Append-only record of differentiable tensor operations. Node inputs
/// always precede the node, so reverse insertion order is a valid reverse
/// topological order for the backward pass.
class Tape {
 public:
  struct Node {
    OpKind kind = OpKind::kLeaf;
    Tensor value;
    std::vector<ValueId> inputs;
    double scalar = 0.0;  // kScalarMul coefficient
  };

  ValueId leaf(Tensor value);

  ValueId conv2d(ValueId input, ValueId kernel, ValueId bias);
  ValueId add(ValueId a, ValueId b);
  ValueId hadamard(ValueId a, ValueId b);
  ValueId sigmoid(ValueId x);
  ValueId tanh(ValueId x);
  ValueId scalar_mul(ValueId x, double c);
  ValueId affine(ValueId weight, ValueId x, ValueId bias);
  ValueId reshape(ValueId x, std::vector<int> shape);
  ValueId stack(std::span<const ValueId> xs);
  ValueId sum(ValueId x);
  ValueId l1_loss(ValueId pred, ValueId target);
  ValueId l2_loss(ValueId pred, ValueId target);

  const Tensor& value(ValueId id) const { return nodes_[check(id)].value; }
  const Node& node(ValueId id) const { return nodes_[check(id)]; }
  std::size_t node_count() const { return nodes_.size(); }

  /// True when `ancestor` is reachable from `id` through input edges
  /// (or equals it) -- i.e. the value at `id` depends on it.
  bool depends_on(ValueId id, ValueId ancestor) const;

  /// Reverse-mode sweep from a scalar root. Returns one gradient tensor per
  /// requested node, in order; nodes the root does not depend on get zeros.
  std::vector<Tensor> backward(ValueId root, std::span<const ValueId> wrt) const;

 private:
  ValueId push(Node node);
  std::size_t check(ValueId id) const;
  const Tensor& loss_operand_check(ValueId pred, ValueId target, const char* op) const;

  std::vector<Node> nodes_;
};

/// Maps model parameter tensors (by address) to their tape leaf nodes so
/// forward builders can be written against weight structs directly.
class ParamMap {
 public:
  ValueId bind(Tape& tape, std::string name, const Tensor& param);
  ValueId at(const Tensor& param) const;
  std::span<const ValueId> node_ids() const { return ids_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return ids_.size(); }

 private:
  std::unordered_map<const Tensor*, ValueId> by_addr_;
  std::vector<ValueId> ids_;
  std::vector<std::string> names_;
};

/// Number of frames a loss op normalizes by: leading dim for rank >= 3,
/// otherwise 1.
int loss_frame_count(const Tensor& t);

}  // namespace posecast
