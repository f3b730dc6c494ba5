// Batch front door: frame-directory discovery, scheme files, and the
// drivers behind every CLI subcommand. Frame processing may fan out over a
// thread pool; emission is always single-threaded in frame order, so
// output bytes do not depend on the parallelism degree.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asym/measures.hpp"

namespace asym::pipeline {

struct RunConfig {
    std::string input_dir;
    std::string scheme_path;           // empty: by-index-order with n from the first frame
    std::optional<long> neutral_index; // required by analyze
    double tolerance = 0.0;
    std::string out_path;              // analyze: output directory; others: file
    int jobs = 0;                      // 0 = hardware concurrency
    bool normalize_brightness = true;
    double p = 0.98;
    double clamp_k = 3.0;
};

struct FrameFile {
    long index = 0;
    std::filesystem::path pts;
    std::filesystem::path image; // empty when absent
};

enum class FrameKind { pts_only, image_only, pts_and_image };

/// Numbered frames `<stem><zero-padded index>.{pts,ppm,pgm}` sorted by
/// index; mixed stems and index gaps are errors.
std::vector<FrameFile> discover_frames(const std::string& dir, FrameKind kind);

/// JSON scheme file: {"n": N, "pairing": "by-index-order" | [[l,r],...],
/// "tie_rule": "left"|"right"}.
LandmarkScheme load_scheme(const std::string& path);

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_measure2(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_keyframes(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_fit_error(const std::string& image_a, const std::string& image_b, std::ostream& out,
                  std::ostream& err);
int run_colorfix(const std::string& fitted, const std::string& original,
                 const std::string& out_path, std::ostream& err);
int run_homography(const std::string& src_pts, const std::string& dst_pts,
                   const std::string& image_in, const std::string& image_out, bool invert,
                   std::ostream& out, std::ostream& err);
int run_correlate(const std::string& csv_path, const std::string& column_a,
                  const std::string& column_b, std::ostream& out, std::ostream& err);
int run_train_model(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace asym::pipeline
