#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace posecast {

/// Dense row-major tensor of doubles, rank 0..4.
/// Image layout convention is channels x height x width.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape);  // zero-filled
  Tensor(std::vector<int> shape, std::vector<double> data);

  static Tensor scalar(double v);
  static Tensor full(std::vector<int> shape, double v);

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  double& at(int a, int b) { return data_[flat(a, b)]; }
  double at(int a, int b) const { return data_[flat(a, b)]; }
  double& at(int a, int b, int c) { return data_[flat(a, b, c)]; }
  double at(int a, int b, int c) const { return data_[flat(a, b, c)]; }
  double& at(int a, int b, int c, int d) { return data_[flat(a, b, c, d)]; }
  double at(int a, int b, int c, int d) const { return data_[flat(a, b, c, d)]; }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
  bool all_finite() const;
  void fill(double v);

  std::string shape_str() const;  // e.g. "[16x18x3]"

  friend bool operator==(const Tensor& a, const Tensor& b) = default;

 private:
  std::size_t flat(int a, int b) const {
    return static_cast<std::size_t>(a) * shape_[1] + b;
  }
  std::size_t flat(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * shape_[1] + b) * shape_[2] + c;
  }
  std::size_t flat(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * shape_[1] + b) * shape_[2] + c) * shape_[3] + d;
  }

  std::vector<int> shape_;
  std::vector<double> data_;
};

/// Validates dims positive and rank <= 4; returns element count.
std::size_t shape_product(std::span<const int> shape);

std::string shape_to_string(std::span<const int> shape);

}  // namespace posecast
