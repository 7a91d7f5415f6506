#ifndef EMOFUSE_CLASSIFIERS_HPP
#define EMOFUSE_CLASSIFIERS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "emofuse/error.hpp"

namespace emofuse {

/// Sorted, duplicate-free list of emotion names. Ties throughout the
/// library break toward the earlier label in this order.
struct LabelSet {
    std::vector<std::string> names;

    static LabelSet from_labels(std::span<const std::string> labels);
    int index_of(const std::string& label) const;  // -1 when absent
    int size() const { return static_cast<int>(names.size()); }
};

/// Per-dimension mean and population standard deviation of the training
/// data; zero-variance dimensions store a standard deviation of 1 so they
/// pass through mean-centered.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;
};

Standardizer fit_standardizer(const std::vector<std::vector<double>>& vectors);
std::vector<double> apply_standardizer(const Standardizer& s, std::span<const double> vector);

/// k-nearest-neighbor classifier holding its standardized training set.
struct KnnModel {
    LabelSet labels;
    Standardizer scaler;
    std::vector<std::vector<double>> train_vectors;  // standardized
    std::vector<int> train_labels;                   // indices into labels
    int k = 3;
};

/// One-vs-rest linear classifier: one weight vector and bias per label.
struct SvmModel {
    LabelSet labels;
    Standardizer scaler;
    std::vector<std::vector<double>> weights;  // one per label
    std::vector<double> biases;
    double lambda = 1e-4;
    int epochs = 200;
    std::uint64_t seed = 0;
};

using Model = std::variant<KnnModel, SvmModel>;

KnnModel knn_train(const std::vector<std::vector<double>>& vectors,
                   const std::vector<std::string>& labels, int k);
std::string knn_predict(const KnnModel& model, std::span<const double> vector);

/// Trains each class against the rest with hinge-loss subgradient steps of
/// size 1/(lambda * t) over seed-shuffled passes through the data.
SvmModel svm_train(const std::vector<std::vector<double>>& vectors,
                   const std::vector<std::string>& labels, double lambda = 1e-4,
                   int epochs = 200, std::uint64_t seed = 42);
std::string svm_predict(const SvmModel& model, std::span<const double> vector);

const LabelSet& model_labels(const Model& model);
std::string predict(const Model& model, std::span<const double> vector);

/// Counts of true class (rows) against predicted class (columns).
struct ConfusionMatrix {
    LabelSet labels;
    std::vector<std::int64_t> counts;  // size() * size(), row-major

    std::int64_t at(int true_idx, int pred_idx) const {
        return counts[static_cast<std::size_t>(true_idx) * labels.size() + pred_idx];
    }
    std::int64_t row_total(int true_idx) const;
    double row_percent(int true_idx, int pred_idx) const;
};

struct Evaluation {
    double accuracy = 0.0;
    ConfusionMatrix matrix;
};

Evaluation evaluate(const Model& model, const std::vector<std::vector<double>>& vectors,
                    const std::vector<std::string>& labels);

/// Binary model file with magic bytes, format version and trailing checksum;
/// the round trip restores the model bit-exactly.
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace emofuse

#endif  // EMOFUSE_CLASSIFIERS_HPP
