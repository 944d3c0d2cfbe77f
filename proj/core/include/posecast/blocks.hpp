#pragma once

#include <functional>
#include <string>

#include "posecast/rng.hpp"
#include "posecast/tape.hpp"
#include "posecast/tensor.hpp"

namespace posecast {

using ParamFn = std::function<void(const std::string&, Tensor&)>;
using ConstParamFn = std::function<void(const std::string&, const Tensor&)>;

/// Multiplicative unit: three sigmoid gates and a tanh candidate over 3x3
/// same-padded convolutions of the input,
///   out = g1 * tanh(g2 * x + g3 * u).
struct MuWeights {
  Tensor w1, b1;  // gate g1, kernel [C,C,3,3], bias [C]
  Tensor w2, b2;  // gate g2
  Tensor w3, b3;  // gate g3
  Tensor w4, b4;  // candidate u
  int channels() const { return w1.empty() ? 0 : w1.dim(0); }
};

/// Residual multiplicative block: 1x1 bottleneck to C/2, two MUs, 1x1 back
/// to C, plus the identity shortcut.
struct RmbWeights {
  Tensor in_w, in_b;    // [C/2,C,1,1], [C/2]
  MuWeights mu1, mu2;   // at C/2
  Tensor out_w, out_b;  // [C,C/2,1,1], [C]
  int channels() const { return out_w.empty() ? 0 : out_w.dim(0); }
};

/// Cascade multiplicative unit fusing two frames: the earlier input passes
/// through two stacked MUs, the later through one, and the sum is squashed
/// by a learned output gate.
struct CmuWeights {
  MuWeights left1, left2;  // cascade on the earlier frame
  MuWeights right;         // later frame
  Tensor gate_w, gate_b;   // [C,C,3,3], [C]
  int channels() const { return gate_w.empty() ? 0 : gate_w.dim(0); }
};

Tensor conv_kernel_init(int c_out, int c_in, int kh, int kw, Rng& rng);

MuWeights make_mu_weights(int channels, Rng& rng);
RmbWeights make_rmb_weights(int channels, Rng& rng);  // channels must be even
CmuWeights make_cmu_weights(int channels, Rng& rng);

ValueId mu_forward(Tape& tape, const ParamMap& params, const MuWeights& w, ValueId x);
ValueId rmb_forward(Tape& tape, const ParamMap& params, const RmbWeights& w, ValueId x);
ValueId cmu_forward(Tape& tape, const ParamMap& params, const CmuWeights& w,
                    ValueId earlier, ValueId later);

// Plain-tensor forms; each builds a scratch tape internally.
Tensor mu_forward(const MuWeights& w, const Tensor& x);
Tensor rmb_forward(const RmbWeights& w, const Tensor& x);
Tensor cmu_forward(const CmuWeights& w, const Tensor& earlier, const Tensor& later);

void visit_params(MuWeights& w, const std::string& prefix, const ParamFn& fn);
void visit_params(const MuWeights& w, const std::string& prefix, const ConstParamFn& fn);
void visit_params(RmbWeights& w, const std::string& prefix, const ParamFn& fn);
void visit_params(const RmbWeights& w, const std::string& prefix, const ConstParamFn& fn);
void visit_params(CmuWeights& w, const std::string& prefix, const ParamFn& fn);
void visit_params(const CmuWeights& w, const std::string& prefix, const ConstParamFn& fn);

ParamMap bind_params(Tape& tape, const MuWeights& w);
ParamMap bind_params(Tape& tape, const RmbWeights& w);
ParamMap bind_params(Tape& tape, const CmuWeights& w);

}  // namespace posecast
