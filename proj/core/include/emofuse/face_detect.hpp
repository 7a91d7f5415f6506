#ifndef EMOFUSE_FACE_DETECT_HPP
#define EMOFUSE_FACE_DETECT_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "emofuse/signal_io.hpp"

namespace emofuse {

constexpr int kCascadeWindow = 24;
constexpr double kDetectScaleStep = 1.25;

/// Cumulative sums (and squared sums) with a zero first row and column, so
/// any rectangle sum takes four lookups.
struct IntegralImage {
    int width = 0;   // source image width
    int height = 0;  // source image height
    std::vector<std::int64_t> sum;     // (width+1) * (height+1)
    std::vector<std::int64_t> sq_sum;  // same layout

    std::int64_t rect_sum(int x, int y, int w, int h) const;
    std::int64_t rect_sq_sum(int x, int y, int w, int h) const;
};

/// Weighted rectangle in 24x24 base-window coordinates.
struct HaarRect {
    int x = 0, y = 0, w = 0, h = 0;
    double weight = 0.0;
};

/// Two- to four-rectangle feature.
struct HaarFeature {
    std::vector<HaarRect> rects;
};

struct DecisionStump {
    HaarFeature feature;
    double threshold = 0.0;
    double left = 0.0;   // returned when the feature value is below threshold
    double right = 0.0;  // otherwise
};

struct CascadeStage {
    std::vector<DecisionStump> stumps;
    double threshold = 0.0;
};

/// Ordered rejection stages over a 24x24 base window.
struct Cascade {
    int window_width = kCascadeWindow;
    int window_height = kCascadeWindow;
    std::vector<CascadeStage> stages;
};

/// Detected square face region in image pixels.
struct FaceBox {
    int x = 0, y = 0, w = 0, h = 0;
};

IntegralImage integral_image(const GrayImage& img);

/// Runs the cascade on the window whose top-left corner is (x, y) at the
/// given scale. Feature values are variance-normalized against the window
/// (standard deviation floored at 1), and the window is rejected at the
/// first stage whose stump sum falls below the stage threshold.
/// The scaled window must fit inside the image.
bool eval_window(const IntegralImage& ii, const Cascade& cascade, int x, int y, double scale);

/// Scans scales 1.0, 1.25, 1.25^2, ... with a step of max(1, round(scale))
/// pixels, groups raw hits at IoU >= 0.5, and returns each group's mean box,
/// largest group first. Throws ImageTooSmall below the base window.
std::vector<FaceBox> detect_faces(const GrayImage& img, const Cascade& cascade);

/// Loads and validates a cascade from its JSON file format. Throws Error
/// with Parse, EmptyStage or RectOutOfWindow.
Cascade load_cascade(const std::filesystem::path& path);

/// Nearest-neighbor resample of the box region to the 112x128 size the
/// facial feature extractor expects.
GrayImage crop_face(const GrayImage& img, const FaceBox& box);

double box_iou(const FaceBox& a, const FaceBox& b);

}  // namespace emofuse

#endif  // EMOFUSE_FACE_DETECT_HPP
