#include "emofuse/error.hpp"

namespace emofuse {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::NotPcm16: return "NotPcm16";
        case Errc::BadRate: return "BadRate";
        case Errc::BadChannels: return "BadChannels";
        case Errc::Truncated: return "Truncated";
        case Errc::BadMagic: return "BadMagic";
        case Errc::BadMaxval: return "BadMaxval";
        case Errc::BadLine: return "BadLine";
        case Errc::EmptyManifest: return "EmptyManifest";
        case Errc::TooShort: return "TooShort";
        case Errc::ImageTooSmall: return "ImageTooSmall";
        case Errc::Parse: return "Parse";
        case Errc::EmptyStage: return "EmptyStage";
        case Errc::RectOutOfWindow: return "RectOutOfWindow";
        case Errc::OutOfBounds: return "OutOfBounds";
        case Errc::BadSize: return "BadSize";
        case Errc::DimMismatch: return "DimMismatch";
        case Errc::TooFewSamples: return "TooFewSamples";
        case Errc::KTooLarge: return "KTooLarge";
        case Errc::SingleClass: return "SingleClass";
        case Errc::UnknownLabel: return "UnknownLabel";
        case Errc::Io: return "Io";
        case Errc::BadVersion: return "BadVersion";
        case Errc::Corrupt: return "Corrupt";
        case Errc::NoFrames: return "NoFrames";
        case Errc::EmptyCounts: return "EmptyCounts";
        case Errc::NoCases: return "NoCases";
    }
    return "Unknown";
}

}  // namespace emofuse
