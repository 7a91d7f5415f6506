#ifndef EMOFUSE_ERROR_HPP
#define EMOFUSE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace emofuse {

/// Every failure condition the library can report. Grouped by module.
enum class Errc {
    // signal_io
    NotPcm16,
    BadRate,
    BadChannels,
    Truncated,
    BadMagic,
    BadMaxval,
    BadLine,
    EmptyManifest,
    // audio_features
    TooShort,
    // face_detect
    ImageTooSmall,
    Parse,
    EmptyStage,
    RectOutOfWindow,
    // lbp_features
    OutOfBounds,
    BadSize,
    // classifiers
    DimMismatch,
    TooFewSamples,
    KTooLarge,
    SingleClass,
    UnknownLabel,
    Io,
    BadVersion,
    Corrupt,
    // fusion
    NoFrames,
    EmptyCounts,
    NoCases,
};

const char* errc_name(Errc code);

/// Exception carrying a machine-checkable error code plus a human message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace emofuse

#endif  // EMOFUSE_ERROR_HPP
