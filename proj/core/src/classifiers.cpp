#include "emofuse/classifiers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>
#include <set>

namespace emofuse {

LabelSet LabelSet::from_labels(std::span<const std::string> labels) {
    std::set<std::string> unique(labels.begin(), labels.end());
    LabelSet set;
    set.names.assign(unique.begin(), unique.end());
    return set;
}

int LabelSet::index_of(const std::string& label) const {
    const auto it = std::lower_bound(names.begin(), names.end(), label);
    if (it == names.end() || *it != label) return -1;
    return static_cast<int>(it - names.begin());
}

namespace {

void require_equal_dims(const std::vector<std::vector<double>>& vectors) {
    for (const auto& v : vectors) {
        if (v.size() != vectors.front().size()) {
            throw Error(Errc::DimMismatch, "vectors of length " +
                                               std::to_string(vectors.front().size()) + " and " +
                                               std::to_string(v.size()) + " mixed");
        }
    }
}

Standardizer fit_unchecked(const std::vector<std::vector<double>>& vectors) {
    const std::size_t dim = vectors.front().size();
    Standardizer s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 1.0);

    for (const auto& v : vectors) {
        for (std::size_t i = 0; i < dim; ++i) s.mean[i] += v[i];
    }
    for (double& m : s.mean) m /= static_cast<double>(vectors.size());

    if (vectors.size() > 1) {
        std::vector<double> var(dim, 0.0);
        for (const auto& v : vectors) {
            for (std::size_t i = 0; i < dim; ++i) {
                const double d = v[i] - s.mean[i];
                var[i] += d * d;
            }
        }
        for (std::size_t i = 0; i < dim; ++i) {
            const double sd = std::sqrt(var[i] / static_cast<double>(vectors.size()));
            s.stddev[i] = sd > 0.0 ? sd : 1.0;
        }
    }
    return s;
}

std::vector<int> label_indices(const LabelSet& set, const std::vector<std::string>& labels) {
    std::vector<int> indices;
    indices.reserve(labels.size());
    for (const auto& label : labels) indices.push_back(set.index_of(label));
    return indices;
}

// Deterministic Fisher-Yates; std::shuffle's sampling is not pinned by the
// standard, this is.
void shuffle_indices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
    for (std::size_t i = indices.size(); i > 1; --i) {
        const std::size_t j = rng() % i;
        std::swap(indices[i - 1], indices[j]);
    }
}

}  // namespace

Standardizer fit_standardizer(const std::vector<std::vector<double>>& vectors) {
    if (vectors.size() < 2) {
        throw Error(Errc::TooFewSamples, "standardizer needs at least 2 vectors, got " +
                                             std::to_string(vectors.size()));
    }
    require_equal_dims(vectors);
    return fit_unchecked(vectors);
}

std::vector<double> apply_standardizer(const Standardizer& s, std::span<const double> vector) {
    if (vector.size() != s.mean.size()) {
        throw Error(Errc::DimMismatch, "vector of length " + std::to_string(vector.size()) +
                                           " against standardizer of " +
                                           std::to_string(s.mean.size()));
    }
    std::vector<double> out(vector.size());
    for (std::size_t i = 0; i < vector.size(); ++i) {
        out[i] = (vector[i] - s.mean[i]) / s.stddev[i];
    }
    return out;
}

KnnModel knn_train(const std::vector<std::vector<double>>& vectors,
                   const std::vector<std::string>& labels, int k) {
    if (vectors.empty() || vectors.size() != labels.size()) {
        throw Error(Errc::TooFewSamples, "need matching non-empty vectors and labels");
    }
    if (k < 1 || static_cast<std::size_t>(k) > vectors.size()) {
        throw Error(Errc::KTooLarge, "k=" + std::to_string(k) + " with " +
                                         std::to_string(vectors.size()) + " training samples");
    }
    require_equal_dims(vectors);

    KnnModel model;
    model.k = k;
    model.labels = LabelSet::from_labels(labels);
    model.scaler = fit_unchecked(vectors);
    model.train_labels = label_indices(model.labels, labels);
    model.train_vectors.reserve(vectors.size());
    for (const auto& v : vectors) {
        model.train_vectors.push_back(apply_standardizer(model.scaler, v));
    }
    return model;
}

std::string knn_predict(const KnnModel& model, std::span<const double> vector) {
    const std::vector<double> q = apply_standardizer(model.scaler, vector);

    std::vector<std::pair<double, std::size_t>> order(model.train_vectors.size());
    for (std::size_t i = 0; i < model.train_vectors.size(); ++i) {
        double dist = 0.0;
        const auto& t = model.train_vectors[i];
        for (std::size_t d = 0; d < q.size(); ++d) {
            const double diff = q[d] - t[d];
            dist += diff * diff;
        }
        order[i] = {dist, i};
    }
    // Distance ties resolve toward the lower training index.
    std::sort(order.begin(), order.end());

    std::vector<int> votes(model.labels.size(), 0);
    for (int i = 0; i < model.k; ++i) {
        ++votes[model.train_labels[order[i].second]];
    }
    const int top = *std::max_element(votes.begin(), votes.end());
    const bool tied = std::count(votes.begin(), votes.end(), top) > 1;
    const int winner = tied ? model.train_labels[order.front().second]
                            : static_cast<int>(std::max_element(votes.begin(), votes.end()) -
                                               votes.begin());
    return model.labels.names[winner];
}

SvmModel svm_train(const std::vector<std::vector<double>>& vectors,
                   const std::vector<std::string>& labels, double lambda, int epochs,
                   std::uint64_t seed) {
    if (vectors.empty() || vectors.size() != labels.size()) {
        throw Error(Errc::TooFewSamples, "need matching non-empty vectors and labels");
    }
    require_equal_dims(vectors);

    SvmModel model;
    model.labels = LabelSet::from_labels(labels);
    if (model.labels.size() < 2) {
        throw Error(Errc::SingleClass, "training data holds a single class");
    }
    model.lambda = lambda;
    model.epochs = epochs;
    model.seed = seed;
    model.scaler = fit_unchecked(vectors);

    std::vector<std::vector<double>> x;
    x.reserve(vectors.size());
    for (const auto& v : vectors) x.push_back(apply_standardizer(model.scaler, v));
    const std::vector<int> y = label_indices(model.labels, labels);
    const std::size_t dim = x.front().size();

    model.weights.assign(model.labels.size(), std::vector<double>(dim, 0.0));
    model.biases.assign(model.labels.size(), 0.0);

    for (int cls = 0; cls < model.labels.size(); ++cls) {
        std::vector<double>& w = model.weights[cls];
        double& b = model.biases[cls];
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> order(x.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

        std::uint64_t t = 0;
        for (int epoch = 0; epoch < epochs; ++epoch) {
            shuffle_indices(order, rng);
            for (const std::size_t i : order) {
                const double eta = 1.0 / (lambda * static_cast<double>(++t));
                const double target = y[i] == cls ? 1.0 : -1.0;
                double score = b;
                for (std::size_t d = 0; d < dim; ++d) score += w[d] * x[i][d];

                const double decay = 1.0 - eta * lambda;
                if (target * score < 1.0) {
                    for (std::size_t d = 0; d < dim; ++d) {
                        w[d] = decay * w[d] + eta * target * x[i][d];
                    }
                    b += eta * target;
                } else {
                    for (double& wd : w) wd *= decay;
                }
            }
        }
    }
    return model;
}

std::string svm_predict(const SvmModel& model, std::span<const double> vector) {
    const std::vector<double> q = apply_standardizer(model.scaler, vector);
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int cls = 0; cls < model.labels.size(); ++cls) {
        double score = model.biases[cls];
        for (std::size_t d = 0; d < q.size(); ++d) score += model.weights[cls][d] * q[d];
        if (score > best_score) {
            best_score = score;
            best = cls;
        }
    }
    return model.labels.names[best];
}

const LabelSet& model_labels(const Model& model) {
    return std::visit([](const auto& m) -> const LabelSet& { return m.labels; }, model);
}

std::string predict(const Model& model, std::span<const double> vector) {
    if (const auto* knn = std::get_if<KnnModel>(&model)) return knn_predict(*knn, vector);
    return svm_predict(std::get<SvmModel>(model), vector);
}

std::int64_t ConfusionMatrix::row_total(int true_idx) const {
    std::int64_t total = 0;
    for (int p = 0; p < labels.size(); ++p) total += at(true_idx, p);
    return total;
}

double ConfusionMatrix::row_percent(int true_idx, int pred_idx) const {
    const std::int64_t total = row_total(true_idx);
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(at(true_idx, pred_idx)) /
                                  static_cast<double>(total);
}

Evaluation evaluate(const Model& model, const std::vector<std::vector<double>>& vectors,
                    const std::vector<std::string>& labels) {
    const LabelSet& set = model_labels(model);
    Evaluation eval;
    eval.matrix.labels = set;
    eval.matrix.counts.assign(static_cast<std::size_t>(set.size()) * set.size(), 0);

    std::int64_t correct = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const int true_idx = set.index_of(labels[i]);
        if (true_idx < 0) {
            throw Error(Errc::UnknownLabel, "label '" + labels[i] + "' not in the model");
        }
        const int pred_idx = set.index_of(predict(model, vectors[i]));
        ++eval.matrix.counts[static_cast<std::size_t>(true_idx) * set.size() + pred_idx];
        if (true_idx == pred_idx) ++correct;
    }
    eval.accuracy = vectors.empty() ? 0.0
                                    : static_cast<double>(correct) /
                                          static_cast<double>(vectors.size());
    return eval;
}

// ---------------------------------------------------------------------------
// Persistence: magic, version, kind, labels, standardizer, payload, checksum.

namespace {

constexpr char kMagic[4] = {'E', 'M', 'F', 'M'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::uint8_t kKindKnn = 0;
constexpr std::uint8_t kKindSvm = 1;

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= data[i];
        hash *= 1099511628211ULL;
    }
    return hash;
}

struct ByteWriter {
    std::vector<std::uint8_t> buf;

    void u8(std::uint8_t v) { buf.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf.insert(buf.end(), s.begin(), s.end());
    }
    void f64_vec(const std::vector<double>& v) {
        u32(static_cast<std::uint32_t>(v.size()));
        for (const double x : v) f64(x);
    }
};

struct ByteReader {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > size) throw Error(Errc::Corrupt, "model file ends mid-record");
    }
    std::uint8_t u8() {
        need(1);
        return data[pos++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data[pos++]) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data[pos++]) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        const std::uint32_t n = u32();
        need(n);
        std::string s(reinterpret_cast<const char*>(data + pos), n);
        pos += n;
        return s;
    }
    std::vector<double> f64_vec() {
        const std::uint32_t n = u32();
        std::vector<double> v(n);
        for (auto& x : v) x = f64();
        return v;
    }
};

void write_standardizer(ByteWriter& w, const Standardizer& s) {
    w.f64_vec(s.mean);
    w.f64_vec(s.stddev);
}

Standardizer read_standardizer(ByteReader& r) {
    Standardizer s;
    s.mean = r.f64_vec();
    s.stddev = r.f64_vec();
    return s;
}

void write_labels(ByteWriter& w, const LabelSet& set) {
    w.u32(static_cast<std::uint32_t>(set.names.size()));
    for (const auto& name : set.names) w.str(name);
}

LabelSet read_labels(ByteReader& r) {
    LabelSet set;
    const std::uint32_t n = r.u32();
    set.names.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) set.names.push_back(r.str());
    return set;
}

}  // namespace

void save_model(const Model& model, const std::filesystem::path& path) {
    ByteWriter w;
    w.buf.insert(w.buf.end(), kMagic, kMagic + 4);
    w.u32(kFormatVersion);

    if (const auto* knn = std::get_if<KnnModel>(&model)) {
        w.u8(kKindKnn);
        write_labels(w, knn->labels);
        write_standardizer(w, knn->scaler);
        w.u32(static_cast<std::uint32_t>(knn->k));
        w.u32(static_cast<std::uint32_t>(knn->train_vectors.size()));
        for (const auto& v : knn->train_vectors) w.f64_vec(v);
        for (const int label : knn->train_labels) w.u32(static_cast<std::uint32_t>(label));
    } else {
        const auto& svm = std::get<SvmModel>(model);
        w.u8(kKindSvm);
        write_labels(w, svm.labels);
        write_standardizer(w, svm.scaler);
        w.f64(svm.lambda);
        w.u32(static_cast<std::uint32_t>(svm.epochs));
        w.u64(svm.seed);
        w.u32(static_cast<std::uint32_t>(svm.weights.size()));
        for (std::size_t c = 0; c < svm.weights.size(); ++c) {
            w.f64_vec(svm.weights[c]);
            w.f64(svm.biases[c]);
        }
    }
    w.u64(fnv1a64(w.buf.data(), w.buf.size()));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out ||
        !out.write(reinterpret_cast<const char*>(w.buf.data()),
                   static_cast<std::streamsize>(w.buf.size()))) {
        throw Error(Errc::Io, "cannot write model file " + path.string());
    }
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::Io, "cannot open model file " + path.string());
    }
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw Error(Errc::BadVersion, "not a model file: " + path.string());
    }
    ByteReader header{bytes.data(), bytes.size(), 4};
    if (header.u32() != kFormatVersion) {
        throw Error(Errc::BadVersion, "unsupported model format version in " + path.string());
    }
    if (bytes.size() < 17) {
        throw Error(Errc::Corrupt, "model file too short: " + path.string());
    }
    const std::size_t body = bytes.size() - 8;
    ByteReader checker{bytes.data(), bytes.size(), body};
    if (checker.u64() != fnv1a64(bytes.data(), body)) {
        throw Error(Errc::Corrupt, "checksum mismatch in " + path.string());
    }

    ByteReader r{bytes.data(), body, 8};
    const std::uint8_t kind = r.u8();
    if (kind == kKindKnn) {
        KnnModel knn;
        knn.labels = read_labels(r);
        knn.scaler = read_standardizer(r);
        knn.k = static_cast<int>(r.u32());
        const std::uint32_t n = r.u32();
        knn.train_vectors.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) knn.train_vectors.push_back(r.f64_vec());
        knn.train_labels.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) knn.train_labels.push_back(static_cast<int>(r.u32()));
        return knn;
    }
    if (kind == kKindSvm) {
        SvmModel svm;
        svm.labels = read_labels(r);
        svm.scaler = read_standardizer(r);
        svm.lambda = r.f64();
        svm.epochs = static_cast<int>(r.u32());
        svm.seed = r.u64();
        const std::uint32_t n = r.u32();
        svm.weights.reserve(n);
        svm.biases.reserve(n);
        for (std::uint32_t c = 0; c < n; ++c) {
            svm.weights.push_back(r.f64_vec());
            svm.biases.push_back(r.f64());
        }
        return svm;
    }
    throw Error(Errc::Corrupt, "unknown model kind in " + path.string());
}

}  // namespace emofuse
