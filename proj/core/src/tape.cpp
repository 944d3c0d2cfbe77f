#include "posecast/tape.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace posecast {

namespace {

void conv2d_shape_check(const Tensor& in, const Tensor& kernel, const Tensor& bias) {
  if (in.rank() != 3) {
    throw std::invalid_argument("conv2d input must be rank 3 (C x H x W), got " +
                                in.shape_str());
  }
  if (kernel.rank() != 4) {
    throw std::invalid_argument("conv2d kernel must be rank 4 (Cout x Cin x kH x kW), got " +
                                kernel.shape_str());
  }
  if (kernel.dim(1) != in.dim(0)) {
    throw std::invalid_argument("conv2d kernel expects " + std::to_string(kernel.dim(1)) +
                                " input channels but the input has " +
                                std::to_string(in.dim(0)));
  }
  if (kernel.dim(2) % 2 == 0 || kernel.dim(3) % 2 == 0) {
    throw std::invalid_argument("conv2d kernel dims must be odd for same padding, got " +
                                kernel.shape_str());
  }
  if (bias.rank() != 1 || bias.dim(0) != kernel.dim(0)) {
    throw std::invalid_argument("conv2d bias must be rank 1 of size Cout=" +
                                std::to_string(kernel.dim(0)) + ", got " + bias.shape_str());
  }
}

Tensor conv2d_run(const Tensor& in, const Tensor& k, const Tensor& b) {
  const int ci_n = in.dim(0), h = in.dim(1), w = in.dim(2);
  const int co_n = k.dim(0), kh = k.dim(2), kw = k.dim(3);
  const int ph = kh / 2, pw = kw / 2;
  Tensor out({co_n, h, w});
  for (int co = 0; co < co_n; ++co) {
    const double bias = b[static_cast<std::size_t>(co)];
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double acc = bias;
        for (int ci = 0; ci < ci_n; ++ci) {
          for (int u = 0; u < kh; ++u) {
            const int yy = y + u - ph;
            if (yy < 0 || yy >= h) continue;
            for (int v = 0; v < kw; ++v) {
              const int xx = x + v - pw;
              if (xx < 0 || xx >= w) continue;
              acc += in.at(ci, yy, xx) * k.at(co, ci, u, v);
            }
          }
        }
        out.at(co, y, x) = acc;
      }
    }
  }
  return out;
}

void conv2d_backward(const Tensor& in, const Tensor& k, const Tensor& g, Tensor& d_in,
                     Tensor& d_k, Tensor& d_b) {
  const int ci_n = in.dim(0), h = in.dim(1), w = in.dim(2);
  const int co_n = k.dim(0), kh = k.dim(2), kw = k.dim(3);
  const int ph = kh / 2, pw = kw / 2;
  for (int co = 0; co < co_n; ++co) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double gv = g.at(co, y, x);
        if (gv == 0.0) continue;
        d_b[static_cast<std::size_t>(co)] += gv;
        for (int ci = 0; ci < ci_n; ++ci) {
          for (int u = 0; u < kh; ++u) {
            const int yy = y + u - ph;
            if (yy < 0 || yy >= h) continue;
            for (int v = 0; v < kw; ++v) {
              const int xx = x + v - pw;
              if (xx < 0 || xx >= w) continue;
              d_k.at(co, ci, u, v) += gv * in.at(ci, yy, xx);
              d_in.at(ci, yy, xx) += gv * k.at(co, ci, u, v);
            }
          }
        }
      }
    }
  }
}

void affine_shape_check(const Tensor& w, const Tensor& x, const Tensor& b) {
  if (w.rank() != 2 || x.rank() != 1 || b.rank() != 1) {
    throw std::invalid_argument("affine expects weight [out x in], x [in], bias [out], got " +
                                w.shape_str() + ", " + x.shape_str() + ", " + b.shape_str());
  }
  if (w.dim(1) != x.dim(0) || w.dim(0) != b.dim(0)) {
    throw std::invalid_argument("affine shape mismatch: weight " + w.shape_str() + " with x " +
                                x.shape_str() + " and bias " + b.shape_str());
  }
}

}  // namespace

int loss_frame_count(const Tensor& t) { return t.rank() >= 3 ? t.dim(0) : 1; }

std::size_t Tape::check(ValueId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
    throw std::invalid_argument("tape node id " + std::to_string(id) + " out of range");
  }
  return static_cast<std::size_t>(id);
}

ValueId Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<ValueId>(nodes_.size() - 1);
}

ValueId Tape::leaf(Tensor value) {
  if (value.empty()) throw std::invalid_argument("leaf tensor must not be empty");
  return push({OpKind::kLeaf, std::move(value), {}, 0.0});
}

ValueId Tape::conv2d(ValueId input, ValueId kernel, ValueId bias) {
  const Tensor& in = value(input);
  const Tensor& k = value(kernel);
  const Tensor& b = value(bias);
  conv2d_shape_check(in, k, b);
  return push({OpKind::kConv2d, conv2d_run(in, k, b), {input, kernel, bias}, 0.0});
}

ValueId Tape::add(ValueId a, ValueId b) {
  const Tensor& ta = value(a);
  const Tensor& tb = value(b);
  if (!ta.same_shape(tb)) {
    throw std::invalid_argument("add shape mismatch: " + ta.shape_str() + " vs " +
                                tb.shape_str());
  }
  Tensor out = ta;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += tb[i];
  return push({OpKind::kAdd, std::move(out), {a, b}, 0.0});
}

ValueId Tape::hadamard(ValueId a, ValueId b) {
  const Tensor& ta = value(a);
  const Tensor& tb = value(b);
  if (!ta.same_shape(tb)) {
    throw std::invalid_argument("hadamard shape mismatch: " + ta.shape_str() + " vs " +
                                tb.shape_str());
  }
  Tensor out = ta;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= tb[i];
  return push({OpKind::kHadamard, std::move(out), {a, b}, 0.0});
}

ValueId Tape::sigmoid(ValueId x) {
  Tensor out = value(x);
  for (double& v : out.values()) v = 1.0 / (1.0 + std::exp(-v));
  return push({OpKind::kSigmoid, std::move(out), {x}, 0.0});
}

ValueId Tape::tanh(ValueId x) {
  Tensor out = value(x);
  for (double& v : out.values()) v = std::tanh(v);
  return push({OpKind::kTanh, std::move(out), {x}, 0.0});
}

ValueId Tape::scalar_mul(ValueId x, double c) {
  Tensor out = value(x);
  for (double& v : out.values()) v *= c;
  return push({OpKind::kScalarMul, std::move(out), {x}, c});
}

ValueId Tape::affine(ValueId weight, ValueId x, ValueId bias) {
  const Tensor& w = value(weight);
  const Tensor& v = value(x);
  const Tensor& b = value(bias);
  affine_shape_check(w, v, b);
  const int out_n = w.dim(0), in_n = w.dim(1);
  Tensor out({out_n});
  for (int o = 0; o < out_n; ++o) {
    double acc = b[static_cast<std::size_t>(o)];
    const double* row = w.data() + static_cast<std::size_t>(o) * in_n;
    for (int i = 0; i < in_n; ++i) acc += row[i] * v[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(o)] = acc;
  }
  return push({OpKind::kAffine, std::move(out), {weight, x, bias}, 0.0});
}

ValueId Tape::reshape(ValueId x, std::vector<int> shape) {
  const Tensor& in = value(x);
  if (shape_product(shape) != in.size()) {
    throw std::invalid_argument("reshape to " + shape_to_string(shape) +
                                " changes element count of " + in.shape_str());
  }
  return push({OpKind::kReshape, Tensor(std::move(shape), in.values()), {x}, 0.0});
}

ValueId Tape::stack(std::span<const ValueId> xs) {
  if (xs.empty()) throw std::invalid_argument("stack needs at least one input");
  const Tensor& first = value(xs[0]);
  for (ValueId id : xs) {
    if (!value(id).same_shape(first)) {
      throw std::invalid_argument("stack inputs must share a shape: " + first.shape_str() +
                                  " vs " + value(id).shape_str());
    }
  }
  std::vector<int> shape;
  shape.reserve(first.shape().size() + 1);
  shape.push_back(static_cast<int>(xs.size()));
  shape.insert(shape.end(), first.shape().begin(), first.shape().end());
  Tensor out(std::move(shape));
  double* dst = out.data();
  for (ValueId id : xs) {
    const Tensor& t = value(id);
    std::memcpy(dst, t.data(), t.size() * sizeof(double));
    dst += t.size();
  }
  return push({OpKind::kStack, std::move(out), {xs.begin(), xs.end()}, 0.0});
}

ValueId Tape::sum(ValueId x) {
  double acc = 0.0;
  for (double v : value(x).values()) acc += v;
  return push({OpKind::kSum, Tensor::scalar(acc), {x}, 0.0});
}

const Tensor& Tape::loss_operand_check(ValueId pred, ValueId target, const char* op) const {
  const Tensor& p = value(pred);
  const Tensor& t = value(target);
  if (!p.same_shape(t)) {
    throw std::invalid_argument(std::string(op) + " shape mismatch: pred " + p.shape_str() +
                                " vs target " + t.shape_str());
  }
  return p;
}

ValueId Tape::l1_loss(ValueId pred, ValueId target) {
  const Tensor& p = loss_operand_check(pred, target, "l1_loss");
  const Tensor& t = value(target);
  const double inv_frames = 1.0 / loss_frame_count(p);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - t[i]);
  return push({OpKind::kL1Loss, Tensor::scalar(acc * inv_frames), {pred, target}, 0.0});
}

ValueId Tape::l2_loss(ValueId pred, ValueId target) {
  const Tensor& p = loss_operand_check(pred, target, "l2_loss");
  const Tensor& t = value(target);
  const double inv_frames = 1.0 / loss_frame_count(p);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - t[i];
    acc += d * d;
  }
  return push({OpKind::kL2Loss, Tensor::scalar(acc * inv_frames), {pred, target}, 0.0});
}

bool Tape::depends_on(ValueId id, ValueId ancestor) const {
  check(id);
  check(ancestor);
  if (id == ancestor) return true;
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<ValueId> work{id};
  seen[static_cast<std::size_t>(id)] = 1;
  while (!work.empty()) {
    ValueId cur = work.back();
    work.pop_back();
    for (ValueId in : nodes_[static_cast<std::size_t>(cur)].inputs) {
      if (in == ancestor) return true;
      if (!seen[static_cast<std::size_t>(in)]) {
        seen[static_cast<std::size_t>(in)] = 1;
        work.push_back(in);
      }
    }
  }
  return false;
}

std::vector<Tensor> Tape::backward(ValueId root, std::span<const ValueId> wrt) const {
  const std::size_t root_idx = check(root);
  if (nodes_[root_idx].value.size() != 1) {
    throw std::invalid_argument("backward root must be scalar, got " +
                                nodes_[root_idx].value.shape_str());
  }
  for (ValueId id : wrt) check(id);

  std::vector<Tensor> grad(nodes_.size());
  auto grad_of = [&](ValueId id) -> Tensor& {
    Tensor& g = grad[static_cast<std::size_t>(id)];
    if (g.empty()) g = Tensor(nodes_[static_cast<std::size_t>(id)].value.shape());
    return g;
  };

  grad_of(root)[0] = 1.0;

  for (std::size_t i = root_idx + 1; i-- > 0;) {
    const Node& n = nodes_[i];
    const Tensor& g = grad[i];
    if (g.empty()) continue;

    switch (n.kind) {
      case OpKind::kLeaf:
        break;
      case OpKind::kConv2d: {
        const Tensor& in = value(n.inputs[0]);
        const Tensor& k = value(n.inputs[1]);
        conv2d_backward(in, k, g, grad_of(n.inputs[0]), grad_of(n.inputs[1]),
                        grad_of(n.inputs[2]));
        break;
      }
      case OpKind::kAdd: {
        Tensor& ga = grad_of(n.inputs[0]);
        Tensor& gb = grad_of(n.inputs[1]);
        for (std::size_t j = 0; j < g.size(); ++j) {
          ga[j] += g[j];
          gb[j] += g[j];
        }
        break;
      }
      case OpKind::kHadamard: {
        const Tensor& a = value(n.inputs[0]);
        const Tensor& b = value(n.inputs[1]);
        Tensor& ga = grad_of(n.inputs[0]);
        Tensor& gb = grad_of(n.inputs[1]);
        for (std::size_t j = 0; j < g.size(); ++j) {
          ga[j] += g[j] * b[j];
          gb[j] += g[j] * a[j];
        }
        break;
      }
      case OpKind::kSigmoid: {
        Tensor& gx = grad_of(n.inputs[0]);
        for (std::size_t j = 0; j < g.size(); ++j) {
          const double y = n.value[j];
          gx[j] += g[j] * y * (1.0 - y);
        }
        break;
      }
      case OpKind::kTanh: {
        Tensor& gx = grad_of(n.inputs[0]);
        for (std::size_t j = 0; j < g.size(); ++j) {
          const double y = n.value[j];
          gx[j] += g[j] * (1.0 - y * y);
        }
        break;
      }
      case OpKind::kScalarMul: {
        Tensor& gx = grad_of(n.inputs[0]);
        for (std::size_t j = 0; j < g.size(); ++j) gx[j] += g[j] * n.scalar;
        break;
      }
      case OpKind::kAffine: {
        const Tensor& w = value(n.inputs[0]);
        const Tensor& x = value(n.inputs[1]);
        Tensor& gw = grad_of(n.inputs[0]);
        Tensor& gx = grad_of(n.inputs[1]);
        Tensor& gb = grad_of(n.inputs[2]);
        const int out_n = w.dim(0), in_n = w.dim(1);
        for (int o = 0; o < out_n; ++o) {
          const double go = g[static_cast<std::size_t>(o)];
          if (go == 0.0) continue;
          gb[static_cast<std::size_t>(o)] += go;
          const double* wrow = w.data() + static_cast<std::size_t>(o) * in_n;
          double* gwrow = gw.data() + static_cast<std::size_t>(o) * in_n;
          for (int j = 0; j < in_n; ++j) {
            gwrow[j] += go * x[static_cast<std::size_t>(j)];
            gx[static_cast<std::size_t>(j)] += go * wrow[j];
          }
        }
        break;
      }
      case OpKind::kReshape: {
        Tensor& gx = grad_of(n.inputs[0]);
        for (std::size_t j = 0; j < g.size(); ++j) gx[j] += g[j];
        break;
      }
      case OpKind::kStack: {
        const double* src = g.data();
        for (ValueId in : n.inputs) {
          Tensor& gi = grad_of(in);
          for (std::size_t j = 0; j < gi.size(); ++j) gi[j] += src[j];
          src += gi.size();
        }
        break;
      }
      case OpKind::kSum: {
        Tensor& gx = grad_of(n.inputs[0]);
        const double go = g[0];
        for (double& v : gx.values()) v += go;
        break;
      }
      case OpKind::kL1Loss: {
        const Tensor& p = value(n.inputs[0]);
        const Tensor& t = value(n.inputs[1]);
        Tensor& gp = grad_of(n.inputs[0]);
        Tensor& gt = grad_of(n.inputs[1]);
        const double go = g[0] / loss_frame_count(p);
        for (std::size_t j = 0; j < p.size(); ++j) {
          const double d = p[j] - t[j];
          const double s = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);  // sign(0) = 0
          gp[j] += go * s;
          gt[j] -= go * s;
        }
        break;
      }
      case OpKind::kL2Loss: {
        const Tensor& p = value(n.inputs[0]);
        const Tensor& t = value(n.inputs[1]);
        Tensor& gp = grad_of(n.inputs[0]);
        Tensor& gt = grad_of(n.inputs[1]);
        const double go = 2.0 * g[0] / loss_frame_count(p);
        for (std::size_t j = 0; j < p.size(); ++j) {
          const double d = p[j] - t[j];
          gp[j] += go * d;
          gt[j] -= go * d;
        }
        break;
      }
    }
  }

  std::vector<Tensor> out;
  out.reserve(wrt.size());
  for (ValueId id : wrt) {
    Tensor& g = grad[static_cast<std::size_t>(id)];
    out.push_back(g.empty() ? Tensor(nodes_[static_cast<std::size_t>(id)].value.shape())
                            : std::move(g));
  }
  return out;
}

ValueId ParamMap::bind(Tape& tape, std::string name, const Tensor& param) {
  ValueId id = tape.leaf(param);
  by_addr_.emplace(&param, id);
  ids_.push_back(id);
  names_.push_back(std::move(name));
  return id;
}

ValueId ParamMap::at(const Tensor& param) const {
  auto it = by_addr_.find(&param);
  if (it == by_addr_.end()) {
    throw std::invalid_argument("parameter tensor is not bound to this tape");
  }
  return it->second;
}

}  // namespace posecast
