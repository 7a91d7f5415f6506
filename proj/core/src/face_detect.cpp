#include "emofuse/face_detect.hpp"

#include "emofuse/lbp_features.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace emofuse {

std::int64_t IntegralImage::rect_sum(int x, int y, int w, int h) const {
    const int stride = width + 1;
    const std::int64_t* s = sum.data();
    return s[(y + h) * stride + (x + w)] - s[y * stride + (x + w)] -
           s[(y + h) * stride + x] + s[y * stride + x];
}

std::int64_t IntegralImage::rect_sq_sum(int x, int y, int w, int h) const {
    const int stride = width + 1;
    const std::int64_t* s = sq_sum.data();
    return s[(y + h) * stride + (x + w)] - s[y * stride + (x + w)] -
           s[(y + h) * stride + x] + s[y * stride + x];
}

IntegralImage integral_image(const GrayImage& img) {
    IntegralImage ii;
    ii.width = img.width;
    ii.height = img.height;
    const int stride = img.width + 1;
    ii.sum.assign(static_cast<std::size_t>(stride) * (img.height + 1), 0);
    ii.sq_sum.assign(ii.sum.size(), 0);

    for (int y = 0; y < img.height; ++y) {
        std::int64_t row = 0, row_sq = 0;
        for (int x = 0; x < img.width; ++x) {
            const std::int64_t v = img.at(x, y);
            row += v;
            row_sq += v * v;
            ii.sum[(y + 1) * stride + (x + 1)] = ii.sum[y * stride + (x + 1)] + row;
            ii.sq_sum[(y + 1) * stride + (x + 1)] = ii.sq_sum[y * stride + (x + 1)] + row_sq;
        }
    }
    return ii;
}

namespace {

int scaled(int v, double scale) { return static_cast<int>(std::lround(v * scale)); }

}  // namespace

bool eval_window(const IntegralImage& ii, const Cascade& cascade, int x, int y, double scale) {
    const int side = scaled(cascade.window_width, scale);
    assert(x >= 0 && y >= 0 && x + side <= ii.width && y + side <= ii.height);

    const double area = static_cast<double>(side) * side;
    const double mean = ii.rect_sum(x, y, side, side) / area;
    const double variance = ii.rect_sq_sum(x, y, side, side) / area - mean * mean;
    const double stddev = std::max(std::sqrt(std::max(variance, 0.0)), 1.0);

    for (const CascadeStage& stage : cascade.stages) {
        double stage_sum = 0.0;
        for (const DecisionStump& stump : stage.stumps) {
            double raw = 0.0;
            for (const HaarRect& r : stump.feature.rects) {
                // Scale the corners, not the sizes, so rectangles cannot
                // escape the scaled window.
                const int rx0 = x + scaled(r.x, scale);
                const int ry0 = y + scaled(r.y, scale);
                const int rx1 = x + scaled(r.x + r.w, scale);
                const int ry1 = y + scaled(r.y + r.h, scale);
                raw += r.weight * ii.rect_sum(rx0, ry0, rx1 - rx0, ry1 - ry0);
            }
            const double value = raw / (area * stddev);
            stage_sum += value < stump.threshold ? stump.left : stump.right;
        }
        if (stage_sum < stage.threshold) return false;
    }
    return true;
}

double box_iou(const FaceBox& a, const FaceBox& b) {
    const int ix0 = std::max(a.x, b.x);
    const int iy0 = std::max(a.y, b.y);
    const int ix1 = std::min(a.x + a.w, b.x + b.w);
    const int iy1 = std::min(a.y + a.h, b.y + b.h);
    const double inter = std::max(0, ix1 - ix0) * static_cast<double>(std::max(0, iy1 - iy0));
    const double uni = static_cast<double>(a.w) * a.h + static_cast<double>(b.w) * b.h - inter;
    return uni <= 0.0 ? 0.0 : inter / uni;
}

namespace {

struct BoxGroup {
    double sum_x = 0.0, sum_y = 0.0, sum_side = 0.0;
    int count = 0;

    FaceBox mean_box() const {
        FaceBox box;
        box.x = static_cast<int>(std::lround(sum_x / count));
        box.y = static_cast<int>(std::lround(sum_y / count));
        box.w = box.h = static_cast<int>(std::lround(sum_side / count));
        return box;
    }
};

}  // namespace

std::vector<FaceBox> detect_faces(const GrayImage& img, const Cascade& cascade) {
    if (img.width < cascade.window_width || img.height < cascade.window_height) {
        throw Error(Errc::ImageTooSmall, "image " + std::to_string(img.width) + "x" +
                                             std::to_string(img.height) +
                                             " is smaller than the detection window");
    }
    const IntegralImage ii = integral_image(img);

    std::vector<BoxGroup> groups;
    for (double scale = 1.0;; scale *= kDetectScaleStep) {
        const int side = scaled(cascade.window_width, scale);
        if (side > img.width || side > img.height) break;
        const int step = std::max(1, static_cast<int>(std::lround(scale)));
        for (int y = 0; y + side <= img.height; y += step) {
            for (int x = 0; x + side <= img.width; x += step) {
                if (!eval_window(ii, cascade, x, y, scale)) continue;
                const FaceBox hit{x, y, side, side};
                auto it = std::find_if(groups.begin(), groups.end(), [&](const BoxGroup& g) {
                    return box_iou(hit, g.mean_box()) >= 0.5;
                });
                if (it == groups.end()) {
                    groups.push_back(BoxGroup{});
                    it = std::prev(groups.end());
                }
                it->sum_x += x;
                it->sum_y += y;
                it->sum_side += side;
                it->count += 1;
            }
        }
    }

    std::stable_sort(groups.begin(), groups.end(),
                     [](const BoxGroup& a, const BoxGroup& b) { return a.count > b.count; });

    std::vector<FaceBox> boxes;
    boxes.reserve(groups.size());
    for (const BoxGroup& g : groups) {
        FaceBox box = g.mean_box();
        box.x = std::clamp(box.x, 0, img.width - box.w);
        box.y = std::clamp(box.y, 0, img.height - box.h);
        boxes.push_back(box);
    }
    return boxes;
}

Cascade load_cascade(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::Parse, "cannot open cascade file " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::Parse, "invalid cascade JSON in " + path.string() + ": " + e.what());
    }

    try {
        Cascade cascade;
        const auto window = doc.at("window");
        cascade.window_width = window.at(0).get<int>();
        cascade.window_height = window.at(1).get<int>();
        if (cascade.window_width != kCascadeWindow || cascade.window_height != kCascadeWindow) {
            throw Error(Errc::Parse, "unsupported base window in " + path.string());
        }

        for (const auto& stage_doc : doc.at("stages")) {
            CascadeStage stage;
            stage.threshold = stage_doc.at("threshold").get<double>();
            for (const auto& stump_doc : stage_doc.at("stumps")) {
                DecisionStump stump;
                stump.threshold = stump_doc.at("threshold").get<double>();
                stump.left = stump_doc.at("left").get<double>();
                stump.right = stump_doc.at("right").get<double>();
                for (const auto& rect_doc : stump_doc.at("rects")) {
                    HaarRect rect;
                    rect.x = rect_doc.at(0).get<int>();
                    rect.y = rect_doc.at(1).get<int>();
                    rect.w = rect_doc.at(2).get<int>();
                    rect.h = rect_doc.at(3).get<int>();
                    rect.weight = rect_doc.at(4).get<double>();
                    if (rect.w < 1 || rect.h < 1 || rect.x < 0 || rect.y < 0 ||
                        rect.x + rect.w > kCascadeWindow || rect.y + rect.h > kCascadeWindow) {
                        throw Error(Errc::RectOutOfWindow,
                                    "rectangle outside the 24x24 window in " + path.string());
                    }
                    stump.feature.rects.push_back(rect);
                }
                if (stump.feature.rects.size() < 2 || stump.feature.rects.size() > 4) {
                    throw Error(Errc::Parse,
                                "features need 2 to 4 rectangles in " + path.string());
                }
                stage.stumps.push_back(std::move(stump));
            }
            if (stage.stumps.empty()) {
                throw Error(Errc::EmptyStage, "stage without stumps in " + path.string());
            }
            cascade.stages.push_back(std::move(stage));
        }
        if (cascade.stages.empty()) {
            throw Error(Errc::Parse, "cascade has no stages in " + path.string());
        }
        return cascade;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::Parse, "malformed cascade structure in " + path.string() + ": " + e.what());
    }
}

GrayImage crop_face(const GrayImage& img, const FaceBox& box) {
    GrayImage out;
    out.width = kFaceWidth;
    out.height = kFaceHeight;
    out.pixels.resize(static_cast<std::size_t>(kFaceWidth) * kFaceHeight);
    for (int oy = 0; oy < kFaceHeight; ++oy) {
        const int sy = box.y + oy * box.h / kFaceHeight;
        for (int ox = 0; ox < kFaceWidth; ++ox) {
            const int sx = box.x + ox * box.w / kFaceWidth;
            out.at(ox, oy) = img.at(sx, sy);
        }
    }
    return out;
}

}  // namespace emofuse
