#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "posecast/blocks.hpp"
#include "posecast/skeleton.hpp"
#include "posecast/tape.hpp"

namespace posecast {

struct EddConfig {
  int input_frames = 10;   // m
  int output_frames = 10;  // K
  int encoder_blocks = 2;  // RMBs in the shared encoder stack
  int decoder_blocks = 3;  // RMBs per decoder stack
  int channels = 16;       // hidden channels, even
  int joints = 18;

  static EddConfig g3d();   // encoder 2, decoder 3
  static EddConfig fntu();  // encoder 4, decoder 6
  static EddConfig tiny();  // channels 8, encoder 2, decoder 2

  /// Binary-reduction depth over the input frames: ceil(log2(m)).
  int dynamics_layers() const;

  void validate() const;  // throws std::invalid_argument

  friend bool operator==(const EddConfig& a, const EddConfig& b) = default;
};

struct DecoderStack {
  std::vector<RmbWeights> blocks;
  Tensor out_w, out_b;  // [1,C,3,3], [1]
};

/// Encoder-Dynamics-Decoder network. One shared encoder weight set is
/// applied to every input frame, one CMU weight set per dynamics layer is
/// shared within the layer, and each of the K output frames has its own
/// decoder stack.
struct EddModel {
  EddConfig config;
  Tensor proj_w, proj_b;               // input projection [C,1,3,3], [C]
  std::vector<RmbWeights> encoder;     // size encoder_blocks, shared across frames
  std::vector<CmuWeights> dynamics;    // size dynamics_layers()
  std::vector<DecoderStack> decoders;  // size output_frames, mutually independent
};

EddModel make_edd_model(const EddConfig& config, std::uint64_t seed);

void visit_params(EddModel& m, const ParamFn& fn);
void visit_params(const EddModel& m, const ConstParamFn& fn);
ParamMap bind_params(Tape& tape, const EddModel& m);

std::size_t param_count(const EddModel& m);

struct EvalStats {
  int encoder_frames = 0;
  int dynamics_evals = 0;
  int cmu_applications = 0;
  int decoder_evals = 0;
};

// Tape builders. Images are {1, N, 3} nodes.
std::vector<ValueId> edd_encode(Tape& tape, const ParamMap& params, const EddModel& m,
                                std::span<const ValueId> images, EvalStats* stats = nullptr);
ValueId edd_dynamics(Tape& tape, const ParamMap& params, const EddModel& m,
                     std::span<const ValueId> features, EvalStats* stats = nullptr);
std::vector<ValueId> edd_decode_all(Tape& tape, const ParamMap& params, const EddModel& m,
                                    ValueId global_feature, EvalStats* stats = nullptr);
std::vector<ValueId> edd_forward(Tape& tape, const ParamMap& params, const EddModel& m,
                                 std::span<const ValueId> images, EvalStats* stats = nullptr);

// Pseudo-image convenience API.
std::vector<Tensor> edd_encode(const EddModel& m, const PseudoImageSequence& inputs);
PseudoImageSequence edd_forward(const EddModel& m, const PseudoImageSequence& inputs,
                                EvalStats* stats = nullptr);

/// Recursive-chain ablation: decoder 0 predicts one frame at a time and the
/// window slides over prior predictions until `horizon` frames are emitted.
PseudoImageSequence edd_forward_recursive(const EddModel& m, const PseudoImageSequence& inputs,
                                          int horizon, EvalStats* stats = nullptr);

/// Per-layer feature counts of the dynamics reduction tree, starting at m,
/// e.g. m=10 -> {10, 5, 3, 2, 1}.
std::vector<int> dynamics_layer_widths(int input_frames);
/// Total CMU applications for one dynamics evaluation.
int dynamics_cmu_count(int input_frames);

}  // namespace posecast
