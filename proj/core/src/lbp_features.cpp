#include "emofuse/lbp_features.hpp"

#include <string>

namespace emofuse {

namespace {

// Clockwise neighborhood walk starting at the top-left corner.
constexpr int kNeighborDx[8] = {-1, 0, 1, 1, 1, 0, -1, -1};
constexpr int kNeighborDy[8] = {-1, -1, -1, 0, 1, 1, 1, 0};

int circular_transitions(int code) {
    int transitions = 0;
    for (int bit = 0; bit < 8; ++bit) {
        const int a = (code >> bit) & 1;
        const int b = (code >> ((bit + 1) % 8)) & 1;
        if (a != b) ++transitions;
    }
    return transitions;
}

}  // namespace

int lbp_code(const GrayImage& img, int x, int y) {
    if (x < 1 || y < 1 || x > img.width - 2 || y > img.height - 2) {
        throw Error(Errc::OutOfBounds, "pixel (" + std::to_string(x) + "," + std::to_string(y) +
                                           ") has no full neighborhood");
    }
    const std::uint8_t center = img.at(x, y);
    int code = 0;
    for (int i = 0; i < 8; ++i) {
        code <<= 1;
        if (img.at(x + kNeighborDx[i], y + kNeighborDy[i]) >= center) code |= 1;
    }
    return code;
}

UniformMap build_uniform_map() {
    UniformMap map;
    std::uint8_t next_bin = 0;
    for (int code = 0; code < 256; ++code) {
        map.bin[code] = circular_transitions(code) <= 2 ? next_bin++ : kLbpBins - 1;
    }
    return map;
}

LbpImage lbp_image(const GrayImage& img) {
    if (img.width < 3 || img.height < 3) {
        throw Error(Errc::ImageTooSmall, "LBP needs at least a 3x3 image, got " +
                                             std::to_string(img.width) + "x" +
                                             std::to_string(img.height));
    }
    LbpImage out;
    out.width = img.width - 2;
    out.height = img.height - 2;
    out.codes.resize(static_cast<std::size_t>(out.width) * out.height);
    for (int y = 1; y <= img.height - 2; ++y) {
        for (int x = 1; x <= img.width - 2; ++x) {
            out.codes[static_cast<std::size_t>(y - 1) * out.width + (x - 1)] =
                static_cast<std::uint8_t>(lbp_code(img, x, y));
        }
    }
    return out;
}

FacialFeatureVector facial_feature_vector(const GrayImage& face) {
    if (face.width != kFaceWidth || face.height != kFaceHeight) {
        throw Error(Errc::BadSize, "expected a " + std::to_string(kFaceWidth) + "x" +
                                       std::to_string(kFaceHeight) + " face crop, got " +
                                       std::to_string(face.width) + "x" +
                                       std::to_string(face.height));
    }
    static const UniformMap map = build_uniform_map();
    const LbpImage codes = lbp_image(face);

    FacialFeatureVector vec;
    vec.values.assign(kFacialFeatureDim, 0.0);
    for (int row = 0; row < kFaceGridRows; ++row) {
        const int y0 = row * codes.height / kFaceGridRows;
        const int y1 = (row + 1) * codes.height / kFaceGridRows;
        for (int col = 0; col < kFaceGridCols; ++col) {
            const int x0 = col * codes.width / kFaceGridCols;
            const int x1 = (col + 1) * codes.width / kFaceGridCols;
            double* hist = vec.values.data() +
                           static_cast<std::size_t>(row * kFaceGridCols + col) * kLbpBins;
            for (int y = y0; y < y1; ++y) {
                for (int x = x0; x < x1; ++x) {
                    hist[map.bin[codes.at(x, y)]] += 1.0;
                }
            }
        }
    }
    return vec;
}

}  // namespace emofuse
