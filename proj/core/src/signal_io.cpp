#include "emofuse/signal_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>

namespace emofuse {

namespace {

std::vector<std::uint8_t> read_all_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::Truncated, "cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

std::uint16_t le16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

AudioClip read_wav(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_all_bytes(path);
    if (bytes.size() < 12) {
        throw Error(Errc::Truncated, "file too short for a RIFF header: " + path.string());
    }
    if (std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw Error(Errc::NotPcm16, "not a RIFF/WAVE file: " + path.string());
    }

    bool have_fmt = false;
    std::uint16_t audio_format = 0, channels = 0, bits_per_sample = 0;
    std::uint32_t sample_rate = 0;
    std::size_t data_pos = 0, data_size = 0;
    bool have_data = false;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint8_t* p = bytes.data() + pos;
        const std::uint32_t chunk_size = le32(p + 4);
        const std::size_t body = pos + 8;
        if (std::memcmp(p, "fmt ", 4) == 0) {
            if (body + 16 > bytes.size()) {
                throw Error(Errc::Truncated, "fmt chunk truncated: " + path.string());
            }
            audio_format = le16(bytes.data() + body);
            channels = le16(bytes.data() + body + 2);
            sample_rate = le32(bytes.data() + body + 4);
            bits_per_sample = le16(bytes.data() + body + 14);
            have_fmt = true;
        } else if (std::memcmp(p, "data", 4) == 0) {
            data_pos = body;
            data_size = chunk_size;
            have_data = true;
        }
        // Chunks are word-aligned; odd sizes carry one pad byte.
        pos = body + chunk_size + (chunk_size & 1);
    }

    if (!have_fmt || !have_data) {
        throw Error(Errc::Truncated, "missing fmt or data chunk: " + path.string());
    }
    if (audio_format != 1 || bits_per_sample != 16) {
        throw Error(Errc::NotPcm16, "only 16-bit integer PCM is accepted: " + path.string());
    }
    if (channels != 1) {
        throw Error(Errc::BadChannels, "expected mono, got " + std::to_string(channels) +
                                           " channels: " + path.string());
    }
    if (sample_rate != 16000) {
        throw Error(Errc::BadRate, "expected 16000 Hz, got " + std::to_string(sample_rate) +
                                       " Hz: " + path.string());
    }
    if (data_pos + data_size > bytes.size() || (data_size & 1) != 0) {
        throw Error(Errc::Truncated, "data chunk exceeds file payload: " + path.string());
    }
    if (data_size == 0) {
        throw Error(Errc::Truncated, "empty data chunk: " + path.string());
    }

    AudioClip clip;
    clip.sample_rate = 16000;
    clip.samples.resize(data_size / 2);
    for (std::size_t i = 0; i < clip.samples.size(); ++i) {
        const auto raw = static_cast<std::int16_t>(le16(bytes.data() + data_pos + 2 * i));
        clip.samples[i] = raw / 32768.0;
    }
    return clip;
}

namespace {

// Pulls the next whitespace-delimited token from a PGM header, skipping
// '#' comments that run to end of line.
bool next_pgm_token(const std::vector<std::uint8_t>& bytes, std::size_t& pos, std::string& token) {
    token.clear();
    while (pos < bytes.size()) {
        const char c = static_cast<char>(bytes[pos]);
        if (c == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else {
            break;
        }
    }
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
           bytes[pos] != '#') {
        token.push_back(static_cast<char>(bytes[pos++]));
    }
    return !token.empty();
}

long parse_pgm_int(const std::string& token, const std::filesystem::path& path) {
    try {
        std::size_t used = 0;
        const long value = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw Error(Errc::BadMagic, "malformed PGM header token '" + token + "': " + path.string());
    }
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = read_all_bytes(path);

    std::size_t pos = 0;
    std::string magic;
    if (!next_pgm_token(bytes, pos, magic) || (magic != "P2" && magic != "P5")) {
        throw Error(Errc::BadMagic, "expected P2 or P5 magic: " + path.string());
    }
    const bool binary = magic == "P5";

    std::string tok;
    if (!next_pgm_token(bytes, pos, tok)) throw Error(Errc::Truncated, "missing width: " + path.string());
    const long width = parse_pgm_int(tok, path);
    if (!next_pgm_token(bytes, pos, tok)) throw Error(Errc::Truncated, "missing height: " + path.string());
    const long height = parse_pgm_int(tok, path);
    if (!next_pgm_token(bytes, pos, tok)) throw Error(Errc::Truncated, "missing maxval: " + path.string());
    const long maxval = parse_pgm_int(tok, path);

    if (width <= 0 || height <= 0) {
        throw Error(Errc::BadMagic, "non-positive dimensions: " + path.string());
    }
    if (maxval < 1 || maxval > 255) {
        throw Error(Errc::BadMaxval, "maxval " + std::to_string(maxval) +
                                         " outside 1..255: " + path.string());
    }

    GrayImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    img.pixels.reserve(count);

    if (binary) {
        // Exactly one whitespace byte separates the header from the payload.
        if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
            throw Error(Errc::Truncated, "missing payload separator: " + path.string());
        }
        ++pos;
        if (pos + count > bytes.size()) {
            throw Error(Errc::Truncated, "P5 payload short: " + path.string());
        }
        img.pixels.assign(bytes.begin() + pos, bytes.begin() + pos + count);
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            if (!next_pgm_token(bytes, pos, tok)) {
                throw Error(Errc::Truncated, "P2 payload short: " + path.string());
            }
            const long value = parse_pgm_int(tok, path);
            if (value < 0 || value > maxval) {
                throw Error(Errc::BadMaxval, "pixel value " + std::to_string(value) +
                                                 " outside 0..maxval: " + path.string());
            }
            img.pixels.push_back(static_cast<std::uint8_t>(value));
        }
    }
    return img;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

SampleManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::Truncated, "cannot open " + path.string());
    }

    SampleManifest manifest;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;

        const std::size_t commas = static_cast<std::size_t>(
            std::count(stripped.begin(), stripped.end(), ','));
        const std::size_t comma = stripped.find(',');
        if (commas != 1) {
            throw Error(Errc::BadLine, "line " + std::to_string(line_no) + " has " +
                                           std::to_string(commas + 1) +
                                           " fields, expected 2: " + path.string());
        }
        ManifestEntry entry;
        entry.path = trim(stripped.substr(0, comma));
        entry.label = trim(stripped.substr(comma + 1));
        if (entry.path.empty() || entry.label.empty()) {
            throw Error(Errc::BadLine,
                        "line " + std::to_string(line_no) + " has an empty field: " + path.string());
        }
        manifest.entries.push_back(std::move(entry));
    }
    if (manifest.entries.empty()) {
        throw Error(Errc::EmptyManifest, "no entries in " + path.string());
    }
    return manifest;
}

}  // namespace emofuse
