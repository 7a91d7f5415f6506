#include "emofuse/audio_features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fft.hpp"

namespace emofuse {

namespace {

const std::vector<double>& hamming_window() {
    static const std::vector<double> window = [] {
        std::vector<double> w(kFrameLength);
        for (int n = 0; n < kFrameLength; ++n) {
            w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (kFrameLength - 1));
        }
        return w;
    }();
    return window;
}

double entropy_bits(const std::vector<double>& g) {
    double h = 0.0;
    for (const double gi : g) {
        if (gi > 0.0) h -= gi * std::log2(gi);
    }
    return h;
}

}  // namespace

const std::array<const char*, UtteranceFeatures::kDim>& UtteranceFeatures::names() {
    static const std::array<const char*, kDim> kNames = {
        "pitch",   "zcr",   "energy", "entropy", "centroid", "spread", "flux",  "rolloff",
        "spec_entropy", "mfcc0", "mfcc1",  "mfcc2",   "mfcc3",    "mfcc4",  "mfcc5", "mfcc6",
        "mfcc7",   "mfcc8", "mfcc9",  "mfcc10",  "mfcc11",   "mfcc12"};
    return kNames;
}

std::vector<Frame> frame_signal(const AudioClip& clip) {
    const std::size_t n = clip.samples.size();
    if (n < kFrameLength) {
        throw Error(Errc::TooShort, "clip of " + std::to_string(n) + " samples is shorter than one frame");
    }
    std::vector<Frame> frames;
    frames.reserve((n - kFrameLength) / kFrameHop + 1);
    for (std::size_t start = 0; start + kFrameLength <= n; start += kFrameHop) {
        Frame frame;
        frame.index = static_cast<int>(frames.size());
        frame.samples.assign(clip.samples.begin() + start,
                             clip.samples.begin() + start + kFrameLength);
        frames.push_back(std::move(frame));
    }
    return frames;
}

Spectrum magnitude_spectrum(const Frame& frame) {
    const std::vector<double>& window = hamming_window();
    std::vector<std::complex<double>> buf(kFftSize, {0.0, 0.0});
    for (int n = 0; n < kFrameLength; ++n) {
        buf[n] = frame.samples[n] * window[n];
    }
    detail::fft_in_place(buf);

    Spectrum spec;
    spec.magnitudes.resize(kSpectrumBins);
    for (int k = 0; k < kSpectrumBins; ++k) {
        spec.magnitudes[k] = std::abs(buf[k]);
    }
    return spec;
}

DifferenceFunction yin_difference(std::span<const double> signal, int lag_min, int lag_max) {
    const std::size_t n = signal.size();
    if (n < 2 * static_cast<std::size_t>(lag_max)) {
        throw Error(Errc::TooShort, "signal of " + std::to_string(n) +
                                        " samples cannot cover lag " + std::to_string(lag_max));
    }
    const std::size_t window = n - static_cast<std::size_t>(lag_max);

    DifferenceFunction df;
    df.lag_min = lag_min;
    df.lag_max = lag_max;
    df.d.resize(lag_max - lag_min + 1);
    for (int lag = lag_min; lag <= lag_max; ++lag) {
        double sum = 0.0;
        const double* a = signal.data();
        const double* b = signal.data() + lag;
        for (std::size_t j = 0; j < window; ++j) {
            const double diff = a[j] - b[j];
            sum += diff * diff;
        }
        df.d[lag - lag_min] = sum;
    }
    return df;
}

DifferenceFunction yin_normalize(DifferenceFunction df) {
    df.d_norm.resize(df.d.size());
    double running = 0.0;
    for (std::size_t i = 0; i < df.d.size(); ++i) {
        running += df.d[i];
        df.d_norm[i] = running == 0.0 ? 1.0 : df.d[i] * static_cast<double>(i + 1) / running;
    }
    return df;
}

double estimate_pitch(const AudioClip& clip) {
    if (clip.samples.size() < 2 * static_cast<std::size_t>(kPitchLagMax)) return 0.0;
    const double total_energy = std::inner_product(clip.samples.begin(), clip.samples.end(),
                                                   clip.samples.begin(), 0.0);
    if (total_energy < 1e-12) return 0.0;

    const DifferenceFunction df =
        yin_normalize(yin_difference(clip.samples, kPitchLagMin, kPitchLagMax));

    // First dip below the threshold: walk down to the bottom of that dip.
    // With no dip, fall back to the global minimum.
    int best = kPitchLagMin;
    for (int lag = kPitchLagMin; lag <= kPitchLagMax; ++lag) {
        if (df.normalized(lag) < kPitchDipThreshold) {
            while (lag < kPitchLagMax && df.normalized(lag + 1) < df.normalized(lag)) ++lag;
            return static_cast<double>(kSampleRate) / lag;
        }
        if (df.normalized(lag) < df.normalized(best)) best = lag;
    }
    return static_cast<double>(kSampleRate) / best;
}

double zcr(const Frame& frame) {
    int crossings = 0;
    for (int i = 0; i + 1 < kFrameLength; ++i) {
        const bool a = frame.samples[i] >= 0.0;
        const bool b = frame.samples[i + 1] >= 0.0;
        if (a != b) ++crossings;
    }
    return crossings / static_cast<double>(kFrameLength);
}

double energy(const Frame& frame) {
    double sum = 0.0;
    for (const double y : frame.samples) sum += y * y;
    return sum / kFrameLength;
}

EnergyDistribution subframe_energy_distribution(const Frame& frame) {
    constexpr int kSubframeLength = kFrameLength / kEntropySubframes;
    EnergyDistribution dist;
    dist.g.assign(kEntropySubframes, 0.0);
    double total = 0.0;
    for (int s = 0; s < kEntropySubframes; ++s) {
        double e = 0.0;
        for (int i = 0; i < kSubframeLength; ++i) {
            const double y = frame.samples[s * kSubframeLength + i];
            e += y * y;
        }
        dist.g[s] = e;
        total += e;
    }
    if (total > 0.0) {
        for (double& gi : dist.g) gi /= total;
    }
    return dist;
}

double energy_entropy(const Frame& frame) {
    const EnergyDistribution dist = subframe_energy_distribution(frame);
    if (std::accumulate(dist.g.begin(), dist.g.end(), 0.0) == 0.0) return 0.0;
    return entropy_bits(dist.g);
}

std::pair<double, double> spectral_centroid_spread(const Spectrum& spec) {
    double sum = 0.0, weighted = 0.0;
    for (int n = 0; n < kSpectrumBins; ++n) {
        sum += spec.magnitudes[n];
        weighted += Spectrum::norm_freq(n) * spec.magnitudes[n];
    }
    if (sum == 0.0) return {0.5, 0.0};

    const double centroid = weighted / sum;
    double spread = 0.0;
    for (int n = 0; n < kSpectrumBins; ++n) {
        const double d = Spectrum::norm_freq(n) - centroid;
        spread += d * d * spec.magnitudes[n];
    }
    return {centroid, spread / sum};
}

double spectral_flux(const Spectrum& cur, const Spectrum& prev) {
    const double sum_cur = std::accumulate(cur.magnitudes.begin(), cur.magnitudes.end(), 0.0);
    const double sum_prev = std::accumulate(prev.magnitudes.begin(), prev.magnitudes.end(), 0.0);
    double flux = 0.0;
    for (int n = 0; n < kSpectrumBins; ++n) {
        const double a = sum_cur == 0.0 ? 0.0 : cur.magnitudes[n] / sum_cur;
        const double b = sum_prev == 0.0 ? 0.0 : prev.magnitudes[n] / sum_prev;
        flux += (a - b) * (a - b);
    }
    return flux;
}

double spectral_rolloff(const Spectrum& spec) {
    const double total = std::accumulate(spec.magnitudes.begin(), spec.magnitudes.end(), 0.0);
    if (total == 0.0) return 0.0;
    double cumulative = 0.0;
    for (int n = 0; n < kSpectrumBins; ++n) {
        cumulative += spec.magnitudes[n];
        if (cumulative >= 0.90 * total) return Spectrum::norm_freq(n);
    }
    return 1.0;
}

EnergyDistribution spectral_energy_distribution(const Spectrum& spec) {
    EnergyDistribution dist;
    dist.g.assign(kEntropySubframes, 0.0);
    double total = 0.0;
    for (int s = 0; s < kEntropySubframes; ++s) {
        const int begin = s * kSpectrumBins / kEntropySubframes;
        const int end = (s + 1) * kSpectrumBins / kEntropySubframes;
        double e = 0.0;
        for (int n = begin; n < end; ++n) {
            e += spec.magnitudes[n] * spec.magnitudes[n];
        }
        dist.g[s] = e;
        total += e;
    }
    if (total > 0.0) {
        for (double& gi : dist.g) gi /= total;
    }
    return dist;
}

double spectral_entropy(const Spectrum& spec) {
    const EnergyDistribution dist = spectral_energy_distribution(spec);
    if (std::accumulate(dist.g.begin(), dist.g.end(), 0.0) == 0.0) return 0.0;
    return entropy_bits(dist.g);
}

namespace {

constexpr double kMfccLogFloor = 1e-10;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

// Triangular filters with peaks equally spaced on the mel axis from 0 to
// 8000 Hz, sampled at the 512-point bin centers.
const std::vector<std::vector<double>>& mel_filterbank() {
    static const std::vector<std::vector<double>> bank = [] {
        const double mel_max = hz_to_mel(kSampleRate / 2.0);
        std::vector<double> edges_hz(kNumMelFilters + 2);
        for (int i = 0; i < kNumMelFilters + 2; ++i) {
            edges_hz[i] = mel_to_hz(mel_max * i / (kNumMelFilters + 1));
        }

        std::vector<std::vector<double>> filters(kNumMelFilters,
                                                 std::vector<double>(kSpectrumBins, 0.0));
        for (int m = 0; m < kNumMelFilters; ++m) {
            const double lo = edges_hz[m], mid = edges_hz[m + 1], hi = edges_hz[m + 2];
            for (int k = 0; k < kSpectrumBins; ++k) {
                const double f = k * static_cast<double>(kSampleRate) / kFftSize;
                if (f > lo && f < mid) {
                    filters[m][k] = (f - lo) / (mid - lo);
                } else if (f >= mid && f < hi) {
                    filters[m][k] = (hi - f) / (hi - mid);
                }
            }
        }
        return filters;
    }();
    return bank;
}

}  // namespace

std::array<double, kNumMfcc> mfcc(const Frame& frame) {
    const Spectrum spec = magnitude_spectrum(frame);
    const auto& bank = mel_filterbank();

    std::array<double, kNumMelFilters> log_energies{};
    for (int m = 0; m < kNumMelFilters; ++m) {
        double e = 0.0;
        for (int k = 0; k < kSpectrumBins; ++k) {
            e += bank[m][k] * spec.magnitudes[k];
        }
        log_energies[m] = std::log(std::max(e, kMfccLogFloor));
    }

    // Orthonormal DCT-II of the log filter energies.
    std::array<double, kNumMfcc> coeffs{};
    for (int j = 0; j < kNumMfcc; ++j) {
        double sum = 0.0;
        for (int m = 0; m < kNumMelFilters; ++m) {
            sum += log_energies[m] *
                   std::cos(std::numbers::pi * j * (2 * m + 1) / (2.0 * kNumMelFilters));
        }
        const double scale = j == 0 ? std::sqrt(1.0 / kNumMelFilters)
                                    : std::sqrt(2.0 / kNumMelFilters);
        coeffs[j] = scale * sum;
    }
    return coeffs;
}

UtteranceFeatures extract_utterance_features(const AudioClip& clip) {
    const std::vector<Frame> frames = frame_signal(clip);

    UtteranceFeatures out;
    out.values[0] = estimate_pitch(clip);

    std::array<double, UtteranceFeatures::kDim> sums{};
    Spectrum prev;
    for (const Frame& frame : frames) {
        const Spectrum spec = magnitude_spectrum(frame);
        const auto [centroid, spread] = spectral_centroid_spread(spec);

        sums[1] += zcr(frame);
        sums[2] += energy(frame);
        sums[3] += energy_entropy(frame);
        sums[4] += centroid;
        sums[5] += spread;
        sums[6] += frame.index == 0 ? 0.0 : spectral_flux(spec, prev);
        sums[7] += spectral_rolloff(spec);
        sums[8] += spectral_entropy(spec);

        const std::array<double, kNumMfcc> coeffs = mfcc(frame);
        for (int j = 0; j < kNumMfcc; ++j) sums[9 + j] += coeffs[j];

        prev = spec;
    }

    for (int i = 1; i < UtteranceFeatures::kDim; ++i) {
        out.values[i] = sums[i] / static_cast<double>(frames.size());
    }
    return out;
}

}  // namespace emofuse
