#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "posecast/skeleton.hpp"

namespace posecast {

/// Frame/joint/axis error breakdowns. Per-frame values sum squared (or
/// absolute) differences over all joints and axes; joint- and axis-wise
/// entries are frame averages of their restriction, so summing axis entries
/// recovers the joint entry and summing joint entries recovers the frame
/// average.
struct EvalReport {
  std::vector<double> frame_mse, frame_mae;              // per predicted frame
  std::vector<double> joint_mse, joint_mae;              // per joint row
  std::vector<std::array<double, 3>> axis_mse, axis_mae;  // per joint row, x/y/z
  double mean_mse = 0.0;  // mean of frame_mse
  double mean_mae = 0.0;

  int frames() const { return static_cast<int>(frame_mse.size()); }
  int joints() const { return static_cast<int>(joint_mse.size()); }
};

/// Sum over joints and axes of squared differences; no within-frame
/// averaging.
double mse_frame(const PseudoImage& pred, const PseudoImage& gt);
double mae_frame(const PseudoImage& pred, const PseudoImage& gt);

EvalReport evaluate(const PseudoImageSequence& pred, const PseudoImageSequence& gt);

/// Unweighted mean over clip reports (all must share dimensions).
EvalReport mean_report(std::span<const EvalReport> reports);

/// Writes frame_wise.csv, joint_wise.csv and axis_wise.csv into `dir`.
/// Joint ids come from `order` rows.
void write_report_csv(const EvalReport& report, const JointOrder& order,
                      const std::filesystem::path& dir);

}  // namespace posecast
