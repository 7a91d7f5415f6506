#ifndef EMOFUSE_SIGNAL_IO_HPP
#define EMOFUSE_SIGNAL_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "emofuse/error.hpp"

namespace emofuse {

/// Mono PCM audio at 16 kHz, samples normalized to [-1, 1].
struct AudioClip {
    std::vector<double> samples;
    int sample_rate = 16000;
};

/// 8-bit grayscale image, row-major, top-left origin.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

struct ManifestEntry {
    std::string path;
    std::string label;
};

/// Ordered list of (file path, emotion label) pairs.
struct SampleManifest {
    std::vector<ManifestEntry> entries;
};

/// Reads a RIFF/WAVE file. Accepts only 16-bit integer PCM, mono, 16000 Hz;
/// amplitudes are the raw 16-bit integers divided by 32768.
///
/// Throws Error with NotPcm16, BadRate, BadChannels or Truncated.
AudioClip read_wav(const std::filesystem::path& path);

/// Reads a PGM image (binary P5 or ASCII P2), maxval at most 255.
///
/// Throws Error with BadMagic, BadMaxval or Truncated.
GrayImage read_pgm(const std::filesystem::path& path);

/// Reads a UTF-8 manifest of `path,label` lines. Lines starting with '#'
/// and blank lines are ignored; fields are whitespace-trimmed.
///
/// Throws Error with BadLine or EmptyManifest.
SampleManifest read_manifest(const std::filesystem::path& path);

}  // namespace emofuse

#endif  // EMOFUSE_SIGNAL_IO_HPP
