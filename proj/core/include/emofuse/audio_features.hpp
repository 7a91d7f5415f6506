#ifndef EMOFUSE_AUDIO_FEATURES_HPP
#define EMOFUSE_AUDIO_FEATURES_HPP

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "emofuse/signal_io.hpp"

namespace emofuse {

// Short-time analysis parameters: 30 ms frames at 16 kHz with 50% overlap,
// analyzed through a Hamming window and a 512-point transform.
constexpr int kSampleRate = 16000;
constexpr int kFrameLength = 480;
constexpr int kFrameHop = 240;
constexpr int kFftSize = 512;
constexpr int kSpectrumBins = kFftSize / 2 + 1;  // bins 0..256
constexpr int kEntropySubframes = 10;
constexpr int kNumMfcc = 13;
constexpr int kNumMelFilters = 26;

// Pitch search covers lags of 26..320 samples (about 50..615 Hz); the first
// normalized-difference dip below 0.7 picks the period.
constexpr int kPitchLagMin = 26;
constexpr int kPitchLagMax = 320;
constexpr double kPitchDipThreshold = 0.7;

/// One fixed-length analysis window of a clip.
struct Frame {
    std::vector<double> samples;  // exactly kFrameLength
    int index = 0;                // ordinal position in the clip
};

/// Magnitude spectrum of one frame. The frequency axis is normalized so
/// that bin n sits at f(n) = n / 256 in [0, 1].
struct Spectrum {
    std::vector<double> magnitudes;  // kSpectrumBins non-negative values

    static double norm_freq(int bin) { return bin / static_cast<double>(kSpectrumBins - 1); }
};

/// Lag-difference function of a signal, raw and normalized by its running mean.
struct DifferenceFunction {
    int lag_min = 0;
    int lag_max = 0;
    std::vector<double> d;       // raw values, index 0 == lag_min
    std::vector<double> d_norm;  // filled by yin_normalize

    double raw(int lag) const { return d[lag - lag_min]; }
    double normalized(int lag) const { return d_norm[lag - lag_min]; }
};

/// Ratios of subframe energy to total energy; sums to 1 when any energy exists.
struct EnergyDistribution {
    std::vector<double> g;
};

/// Per-utterance feature vector: whole-clip pitch followed by the means of
/// the 21 per-frame features.
struct UtteranceFeatures {
    static constexpr int kDim = 22;
    std::array<double, kDim> values{};

    static const std::array<const char*, kDim>& names();
};

/// Splits a clip into frames starting at 0, 240, 480, ...; trailing samples
/// that cannot fill a frame are discarded. Throws TooShort below 480 samples.
std::vector<Frame> frame_signal(const AudioClip& clip);

/// Hamming window, zero-padding to 512 points, and magnitudes of bins 0..256.
Spectrum magnitude_spectrum(const Frame& frame);

/// Sum of squared lag differences d[T] = sum_j (y_j - y_{j+T})^2 over the
/// window W = len - lag_max, for each lag in [lag_min, lag_max].
/// Throws TooShort when the signal is shorter than 2 * lag_max.
DifferenceFunction yin_difference(std::span<const double> signal, int lag_min, int lag_max);

/// Divides each difference value by the running mean of the values up to that
/// lag. A zero running sum yields 1 by convention.
DifferenceFunction yin_normalize(DifferenceFunction df);

/// Fundamental frequency in Hz, or 0 for silence and clips too short to
/// search the full lag range.
double estimate_pitch(const AudioClip& clip);

/// Fraction of adjacent sample pairs with opposite sign (zeros count as
/// non-negative).
double zcr(const Frame& frame);

/// Mean squared amplitude of the frame.
double energy(const Frame& frame);

/// Energy share of each of the 10 equal subframes.
EnergyDistribution subframe_energy_distribution(const Frame& frame);

/// Shannon entropy (base 2) of the subframe energy distribution; 0 for a
/// silent frame.
double energy_entropy(const Frame& frame);

/// Magnitude-weighted mean and second central moment of the normalized
/// frequency axis. A zero spectrum yields (0.5, 0).
std::pair<double, double> spectral_centroid_spread(const Spectrum& spec);

/// Squared difference between the sum-normalized magnitudes of two spectra.
double spectral_flux(const Spectrum& cur, const Spectrum& prev);

/// Normalized frequency below which 90% of the spectral magnitude lies.
double spectral_rolloff(const Spectrum& spec);

/// Spectral energy share of each of 10 contiguous bin groups.
EnergyDistribution spectral_energy_distribution(const Spectrum& spec);

/// Shannon entropy (base 2) of the grouped spectral energy distribution.
double spectral_entropy(const Spectrum& spec);

/// Mel-frequency cepstral coefficients 0..12 of one frame: magnitude
/// spectrum, 26 triangular mel filters over 0..8000 Hz, log energies,
/// orthonormal cosine transform.
std::array<double, kNumMfcc> mfcc(const Frame& frame);

/// Whole-clip feature vector: pitch estimated once on the full signal, every
/// other feature computed per frame and averaged. Throws TooShort below one
/// frame of samples.
UtteranceFeatures extract_utterance_features(const AudioClip& clip);

}  // namespace emofuse

#endif  // EMOFUSE_AUDIO_FEATURES_HPP
