#ifndef EMOFUSE_FUSION_HPP
#define EMOFUSE_FUSION_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "emofuse/classifiers.hpp"
#include "emofuse/lbp_features.hpp"

namespace emofuse {

constexpr int kDefaultFusionThreshold = 9;

/// How many frames of a clip were classified as each emotion.
struct EmotionCounts {
    std::map<std::string, int> counts;

    int total() const;
};

/// The video-side vote: most frequent emotion and its lead over the
/// runner-up (the full count when only one emotion appears).
struct VideoEmotion {
    std::string label;
    int margin = 0;
};

struct FusionDecision {
    enum class Source { Video, Audio };

    std::string final_label;
    Source source = Source::Audio;
    int margin = 0;
    std::string video_label;
    std::string audio_label;
};

/// One evaluation case for the threshold sweep.
struct FusionCase {
    EmotionCounts counts;
    std::string audio_label;
    std::string true_label;
};

/// Classifies every frame vector independently and accumulates per-emotion
/// counts. Throws NoFrames on an empty list.
EmotionCounts count_frame_emotions(const std::vector<FacialFeatureVector>& frames,
                                   const Model& model);

/// Argmax of the counts (ties break toward the lexicographically earlier
/// label) plus the margin over the second-highest count. Throws EmptyCounts
/// when nothing was counted.
VideoEmotion video_emotion(const EmotionCounts& counts);

/// The combining rule: the video label wins when its margin strictly
/// exceeds the threshold, otherwise the audio label is taken.
FusionDecision fuse(const VideoEmotion& video, const std::string& audio_label, int threshold);

/// Fused accuracy over the cases for every integer threshold in 0..10.
/// Throws NoCases on an empty list.
std::vector<std::pair<int, double>> threshold_sweep(const std::vector<FusionCase>& cases);

}  // namespace emofuse

#endif  // EMOFUSE_FUSION_HPP
