// Shared helpers for the test suites: synthetic signal and image builders,
// minimal WAV/PGM writers, and independent brute-force oracles that the
// library implementations are checked against.
#ifndef EMOFUSE_TESTS_SUPPORT_HPP
#define EMOFUSE_TESTS_SUPPORT_HPP

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "emofuse/signal_io.hpp"

namespace test_support {

// ---------------------------------------------------------------------------
// Scratch directory, removed on destruction.

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("emofuse_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

// ---------------------------------------------------------------------------
// WAV writing. The header fields are parameters so malformed files can be
// produced for the error paths.

struct WavSpec {
    std::uint16_t audio_format = 1;
    std::uint16_t channels = 1;
    std::uint32_t sample_rate = 16000;
    std::uint16_t bits_per_sample = 16;
    // When >= 0, overrides the data chunk's declared size.
    long declared_data_size = -1;
};

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void write_wav(const std::filesystem::path& path, const std::vector<std::int16_t>& samples,
                      const WavSpec& spec = {}) {
    std::vector<std::uint8_t> payload;
    payload.reserve(samples.size() * 2);
    for (const std::int16_t s : samples) put_u16(payload, static_cast<std::uint16_t>(s));

    const std::uint32_t data_size = spec.declared_data_size >= 0
                                        ? static_cast<std::uint32_t>(spec.declared_data_size)
                                        : static_cast<std::uint32_t>(payload.size());
    std::vector<std::uint8_t> bytes;
    bytes.insert(bytes.end(), {'R', 'I', 'F', 'F'});
    put_u32(bytes, 36 + static_cast<std::uint32_t>(payload.size()));
    bytes.insert(bytes.end(), {'W', 'A', 'V', 'E'});
    bytes.insert(bytes.end(), {'f', 'm', 't', ' '});
    put_u32(bytes, 16);
    put_u16(bytes, spec.audio_format);
    put_u16(bytes, spec.channels);
    put_u32(bytes, spec.sample_rate);
    put_u32(bytes, spec.sample_rate * spec.channels * spec.bits_per_sample / 8);
    put_u16(bytes, static_cast<std::uint16_t>(spec.channels * spec.bits_per_sample / 8));
    put_u16(bytes, spec.bits_per_sample);
    bytes.insert(bytes.end(), {'d', 'a', 't', 'a'});
    put_u32(bytes, data_size);
    bytes.insert(bytes.end(), payload.begin(), payload.end());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

inline std::vector<std::int16_t> quantize(const std::vector<double>& samples) {
    std::vector<std::int16_t> out;
    out.reserve(samples.size());
    for (const double s : samples) {
        const double clamped = std::max(-1.0, std::min(1.0, s));
        out.push_back(static_cast<std::int16_t>(
            std::max(-32768.0, std::min(32767.0, std::round(clamped * 32767.0)))));
    }
    return out;
}

// ---------------------------------------------------------------------------
// PGM writing.

inline void write_pgm_p5(const std::filesystem::path& path, const emofuse::GrayImage& img) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
}

inline void write_pgm_p2(const std::filesystem::path& path, const emofuse::GrayImage& img) {
    std::ofstream out(path, std::ios::trunc);
    out << "P2\n" << img.width << " " << img.height << "\n255\n";
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            out << static_cast<int>(img.at(x, y)) << (x + 1 == img.width ? '\n' : ' ');
        }
    }
}

// ---------------------------------------------------------------------------
// Synthetic signals and images.

inline emofuse::AudioClip sine_clip(double freq_hz, double seconds, double amplitude = 0.5) {
    emofuse::AudioClip clip;
    const std::size_t n = static_cast<std::size_t>(seconds * 16000);
    clip.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        clip.samples[i] = amplitude * std::sin(2.0 * M_PI * freq_hz * i / 16000.0);
    }
    return clip;
}

inline emofuse::AudioClip impulse_train_clip(int period, double seconds, double amplitude = 0.8) {
    emofuse::AudioClip clip;
    const std::size_t n = static_cast<std::size_t>(seconds * 16000);
    clip.samples.assign(n, 0.0);
    for (std::size_t i = 0; i < n; i += period) clip.samples[i] = amplitude;
    return clip;
}

inline emofuse::AudioClip noise_clip(double seconds, std::uint32_t seed, double amplitude = 0.5) {
    emofuse::AudioClip clip;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    clip.samples.resize(static_cast<std::size_t>(seconds * 16000));
    for (double& s : clip.samples) s = dist(rng);
    return clip;
}

inline std::vector<double> random_samples(std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> out(n);
    for (double& s : out) s = dist(rng);
    return out;
}

inline emofuse::GrayImage constant_image(int width, int height, std::uint8_t value) {
    emofuse::GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(static_cast<std::size_t>(width) * height, value);
    return img;
}

inline emofuse::GrayImage random_image(int width, int height, std::uint32_t seed) {
    emofuse::GrayImage img = constant_image(width, height, 0);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(dist(rng));
    return img;
}

// ---------------------------------------------------------------------------
// Brute-force oracles, written to be boring and obviously correct.

/// O(N^2) discrete Fourier transform magnitudes of a Hamming-windowed,
/// zero-padded 480-sample frame. Bins 0..256.
inline std::vector<double> dft_magnitudes_oracle(const std::vector<double>& frame) {
    const int fft_size = 512;
    std::vector<double> padded(fft_size, 0.0);
    for (std::size_t n = 0; n < frame.size(); ++n) {
        const double w = 0.54 - 0.46 * std::cos(2.0 * M_PI * n / (frame.size() - 1.0));
        padded[n] = frame[n] * w;
    }
    std::vector<double> magnitudes(fft_size / 2 + 1);
    for (int k = 0; k <= fft_size / 2; ++k) {
        double re = 0.0, im = 0.0;
        for (int n = 0; n < fft_size; ++n) {
            const double angle = -2.0 * M_PI * k * n / fft_size;
            re += padded[n] * std::cos(angle);
            im += padded[n] * std::sin(angle);
        }
        magnitudes[k] = std::sqrt(re * re + im * im);
    }
    return magnitudes;
}

/// Direct double-loop lag difference function.
inline std::vector<double> yin_difference_oracle(const std::vector<double>& signal, int lag_min,
                                                 int lag_max) {
    const std::size_t window = signal.size() - static_cast<std::size_t>(lag_max);
    std::vector<double> d;
    for (int lag = lag_min; lag <= lag_max; ++lag) {
        double sum = 0.0;
        for (std::size_t j = 0; j < window; ++j) {
            sum += (signal[j] - signal[j + lag]) * (signal[j] - signal[j + lag]);
        }
        d.push_back(sum);
    }
    return d;
}

/// Straight-line MFCC: direct DFT, explicit triangular filter loop, explicit
/// cosine sums. Mirrors only the published parameter choices.
inline std::vector<double> mfcc_oracle(const std::vector<double>& frame) {
    const std::vector<double> mags = dft_magnitudes_oracle(frame);

    const int num_filters = 26;
    std::vector<double> edges(num_filters + 2);
    const double mel_top = 2595.0 * std::log10(1.0 + 8000.0 / 700.0);
    for (int i = 0; i < num_filters + 2; ++i) {
        const double mel = mel_top * i / (num_filters + 1);
        edges[i] = 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
    }

    std::vector<double> log_energies(num_filters);
    for (int m = 0; m < num_filters; ++m) {
        double e = 0.0;
        for (std::size_t k = 0; k < mags.size(); ++k) {
            const double f = static_cast<double>(k) * 16000.0 / 512.0;
            double weight = 0.0;
            if (f > edges[m] && f < edges[m + 1]) {
                weight = (f - edges[m]) / (edges[m + 1] - edges[m]);
            } else if (f >= edges[m + 1] && f < edges[m + 2]) {
                weight = (edges[m + 2] - f) / (edges[m + 2] - edges[m + 1]);
            }
            e += weight * mags[k];
        }
        log_energies[m] = std::log(std::max(e, 1e-10));
    }

    std::vector<double> coeffs(13);
    for (int j = 0; j < 13; ++j) {
        double sum = 0.0;
        for (int m = 0; m < num_filters; ++m) {
            sum += log_energies[m] * std::cos(M_PI * j * (2 * m + 1) / (2.0 * num_filters));
        }
        coeffs[j] = (j == 0 ? std::sqrt(1.0 / num_filters) : std::sqrt(2.0 / num_filters)) * sum;
    }
    return coeffs;
}

/// Rectangle sum by plain pixel iteration.
inline std::int64_t rect_sum_oracle(const emofuse::GrayImage& img, int x, int y, int w, int h) {
    std::int64_t sum = 0;
    for (int yy = y; yy < y + h; ++yy) {
        for (int xx = x; xx < x + w; ++xx) sum += img.at(xx, yy);
    }
    return sum;
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Runs fn and reports whether it threw an emofuse::Error with the expected
/// code. Returns the outcome instead of asserting so each suite can wrap it
/// in its own CHECK.
template <typename F>
bool throws_errc(emofuse::Errc expected, F&& fn) {
    try {
        fn();
        return false;
    } catch (const emofuse::Error& e) {
        return e.code() == expected;
    } catch (...) {
        return false;
    }
}

/// Mixed absolute/relative comparison used for the oracle equivalence checks.
inline bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace test_support

#endif  // EMOFUSE_TESTS_SUPPORT_HPP
