#ifndef EMOFUSE_LBP_FEATURES_HPP
#define EMOFUSE_LBP_FEATURES_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "emofuse/signal_io.hpp"

namespace emofuse {

constexpr int kLbpBins = 59;
constexpr int kFaceGridCols = 7;
constexpr int kFaceGridRows = 8;
constexpr int kFaceWidth = 112;
constexpr int kFaceHeight = 128;
constexpr int kFacialFeatureDim = kFaceGridCols * kFaceGridRows * kLbpBins;  // 3304

/// Per-pixel LBP codes of an image's interior; border pixels are excluded,
/// so the grid is (W-2) x (H-2).
struct LbpImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> codes;

    std::uint8_t at(int x, int y) const { return codes[static_cast<std::size_t>(y) * width + x]; }
};

/// Maps each 8-bit code to a histogram bin: the 58 uniform patterns get
/// bins 0..57 in ascending code order, everything else shares bin 58.
struct UniformMap {
    std::array<std::uint8_t, 256> bin{};
};

/// Concatenated regional LBP histograms of a normalized face crop:
/// 56 regions x 59 bins, region-major. Entries are raw counts.
struct FacialFeatureVector {
    std::vector<double> values;
};

/// 8-bit code for the pixel at (x, y): neighbors visited clockwise from the
/// top-left corner, first visit most significant; a neighbor greater than or
/// equal to the center contributes a 1 bit. Throws OutOfBounds on border or
/// outside pixels.
int lbp_code(const GrayImage& img, int x, int y);

UniformMap build_uniform_map();

/// Codes for every interior pixel. Throws ImageTooSmall below 3x3.
LbpImage lbp_image(const GrayImage& img);

/// 3304-value histogram vector of a 112x128 face crop: the 110x126 code grid
/// is split into 7 columns x 8 rows and each region contributes a 59-bin
/// uniform-pattern histogram, concatenated row by row. Throws BadSize for
/// any other input size.
FacialFeatureVector facial_feature_vector(const GrayImage& face);

}  // namespace emofuse

#endif  // EMOFUSE_LBP_FEATURES_HPP
