// Minimal image substrate: PGM/PPM codecs, grayscale conversion, L1
// fitting error, colour correction and brightness normalization.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "asym/error.hpp"

namespace asym {

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // interleaved r,g,b, row-major

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // row-major
    // Optional per-pixel validity (0 = invalid, 1 = valid); empty = all valid.
    std::vector<std::uint8_t> mask;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool valid_at(int x, int y) const {
        return mask.empty() || mask[static_cast<std::size_t>(y) * width + x] != 0;
    }
    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
};

using PnmImage = std::variant<GrayImage, RgbImage>;

/// Decode P2/P3 (ASCII) or P5/P6 (binary) with maxval 255. Header comments
/// are tolerated. Failures carry the byte offset.
PnmImage decode_pnm(const std::string& bytes);

/// Canonical binary encodings (P5/P6, single-space header, maxval 255).
std::string encode_pnm(const GrayImage& img);
std::string encode_pnm(const RgbImage& img);

PnmImage read_pnm_file(const std::string& path);
void write_pnm_file(const std::string& path, const PnmImage& img);

/// Rec.601 luma: round(0.299 r + 0.587 g + 0.114 b).
GrayImage to_gray(const RgbImage& img);

/// Sum of absolute channel differences, exact integer.
std::uint64_t l1_norm(const RgbImage& a, const RgbImage& b);

/// Shift each channel of `fitted` by the rounded difference of channel
/// means against `original`, clamped to [0,255].
RgbImage color_correct(const RgbImage& fitted, const RgbImage& original);

/// Shift `src` so its mean (over its mask) matches `ref`'s mean (over
/// ref's mask); the mask is carried through unchanged.
GrayImage brightness_normalize(const GrayImage& src, const GrayImage& ref);

/// Mean over the image's mask (whole image when maskless).
double masked_mean(const GrayImage& img);

/// Bilinear sample at continuous coordinates; nullopt outside the image or
/// when any contributing pixel is mask-invalid.
std::optional<double> sample_bilinear(const GrayImage& img, double fx, double fy);

} // namespace asym
