#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "posecast/skeleton.hpp"

namespace posecast {

/// Skeleton text file problem, carrying the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::filesystem::path& path, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_ = 0;
};

struct WindowSpec {
  int window = 20;
  int overlap = 5;
  int input_frames = 10;
  int output_frames = 10;

  int stride() const { return window - overlap; }
  void validate() const;  // window == input + output, 0 <= overlap < window

  friend bool operator==(const WindowSpec& a, const WindowSpec& b) = default;
};

struct FrameClip {
  std::vector<SkeletonFrame> input;
  std::vector<SkeletonFrame> target;
};

struct ImageClip {
  PseudoImageSequence input;
  PseudoImageSequence target;
};

/// Line format: `frame_index joint_id:x,y,z ...`, `#` comments ignored.
/// Joints are filtered to keep_ids; every id in keep_ids must be present in
/// every frame. Throws ParseError on malformed input, missing joints,
/// non-finite coordinates, or an empty file.
SkeletonSequence load_skeleton_file(const std::filesystem::path& path,
                                    const std::vector<int>& keep_ids);
void save_skeleton_file(const std::filesystem::path& path, const SkeletonSequence& seq);

/// Overlapping clips at stride (window - overlap); incomplete trailing
/// windows are dropped. A sequence shorter than the window yields no clips.
std::vector<FrameClip> sliding_window(const SkeletonSequence& seq, const WindowSpec& spec);

/// Closed-form clip count: floor((len - window) / stride) + 1 for
/// len >= window, else 0.
int sliding_window_count(int sequence_length, const WindowSpec& spec);

std::vector<ImageClip> to_image_clips(std::span<const FrameClip> clips,
                                      const JointOrder& order);

enum class MotionKind { kConstant, kLinearDrift, kSinusoidalLimb, kNoisySinusoid };

MotionKind motion_kind_from_string(std::string_view name);
std::string_view to_string(MotionKind kind);

struct MotionParams {
  double amplitude = 0.25;                         // arm swing, meters
  double period = 24.0;                            // frames per cycle
  double noise = 0.015;                            // noisy-sinusoid sigma
  std::array<double, 3> velocity = {0.01, 0.0, 0.004};  // linear-drift m/frame
};

/// Deterministic synthetic sequences over a fixed 18-joint rest pose.
/// Sinusoidal kinds move the arm joints along phase-shifted sinusoids and
/// keep trunk and legs static.
SkeletonSequence synthetic_motion(MotionKind kind, const MotionParams& params, int length,
                                  std::uint64_t seed);

/// The rest pose used by the synthetic generator.
SkeletonFrame synthetic_rest_pose();

/// A file path is returned as-is; a directory yields its *.txt entries in
/// sorted order. Throws ParseError when nothing matches.
std::vector<std::filesystem::path> list_skeleton_files(const std::filesystem::path& path);

/// Whole-sequence split with a seeded shuffle; first `fraction` goes to
/// train. Windows never cross the split.
std::pair<std::vector<SkeletonSequence>, std::vector<SkeletonSequence>> split_sequences(
    std::vector<SkeletonSequence> seqs, double fraction, std::uint64_t seed);

}  // namespace posecast
