#include "emofuse/fusion.hpp"

namespace emofuse {

int EmotionCounts::total() const {
    int total = 0;
    for (const auto& [label, count] : counts) total += count;
    return total;
}

EmotionCounts count_frame_emotions(const std::vector<FacialFeatureVector>& frames,
                                   const Model& model) {
    if (frames.empty()) {
        throw Error(Errc::NoFrames, "no frame vectors to classify");
    }
    EmotionCounts counts;
    for (const FacialFeatureVector& frame : frames) {
        ++counts.counts[predict(model, frame.values)];
    }
    return counts;
}

VideoEmotion video_emotion(const EmotionCounts& counts) {
    if (counts.counts.empty() || counts.total() <= 0) {
        throw Error(Errc::EmptyCounts, "no classified frames to vote on");
    }
    // The map iterates labels in sorted order, so keeping a strict maximum
    // breaks count ties toward the earlier label.
    std::string top_label;
    int top = -1, second = 0;
    for (const auto& [label, count] : counts.counts) {
        if (count > top) {
            second = top < 0 ? 0 : top;
            top = count;
            top_label = label;
        } else if (count > second) {
            second = count;
        }
    }
    return VideoEmotion{top_label, top - second};
}

FusionDecision fuse(const VideoEmotion& video, const std::string& audio_label, int threshold) {
    FusionDecision decision;
    decision.margin = video.margin;
    decision.video_label = video.label;
    decision.audio_label = audio_label;
    if (video.margin > threshold) {
        decision.source = FusionDecision::Source::Video;
        decision.final_label = video.label;
    } else {
        decision.source = FusionDecision::Source::Audio;
        decision.final_label = audio_label;
    }
    return decision;
}

std::vector<std::pair<int, double>> threshold_sweep(const std::vector<FusionCase>& cases) {
    if (cases.empty()) {
        throw Error(Errc::NoCases, "no fusion cases to sweep");
    }
    std::vector<std::pair<int, double>> sweep;
    sweep.reserve(11);
    for (int threshold = 0; threshold <= 10; ++threshold) {
        int correct = 0;
        for (const FusionCase& c : cases) {
            const FusionDecision decision = fuse(video_emotion(c.counts), c.audio_label, threshold);
            if (decision.final_label == c.true_label) ++correct;
        }
        sweep.emplace_back(threshold,
                           static_cast<double>(correct) / static_cast<double>(cases.size()));
    }
    return sweep;
}

}  // namespace emofuse
