#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "emofuse/signal_io.hpp"
#include "support/test_support.hpp"

using namespace emofuse;
namespace ts = test_support;

TEST_CASE("read_wav accepts a valid 16 kHz mono PCM16 file") {
    ts::TempDir dir("wav");
    std::vector<std::int16_t> samples(480);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = static_cast<std::int16_t>((i % 200) - 100);
    }
    ts::write_wav(dir.file("ok.wav"), samples);

    const AudioClip clip = read_wav(dir.file("ok.wav"));
    CHECK(clip.sample_rate == 16000);
    CHECK(clip.samples.size() == 480);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(clip.samples[i] == samples[i] / 32768.0);
    }
}

TEST_CASE("read_wav maps full-scale negative to exactly -1") {
    ts::TempDir dir("wav");
    ts::write_wav(dir.file("fs.wav"), {-32768, 32767, 0});
    const AudioClip clip = read_wav(dir.file("fs.wav"));
    CHECK(clip.samples[0] == -1.0);
    CHECK(clip.samples[1] == 32767.0 / 32768.0);
    CHECK(clip.samples[1] < 1.0);
    CHECK(clip.samples[2] == 0.0);
}

TEST_CASE("read_wav rejects the formats the pipeline cannot use") {
    ts::TempDir dir("wav");
    const std::vector<std::int16_t> samples(64, 1000);

    ts::write_wav(dir.file("rate.wav"), samples, {.sample_rate = 44100});
    CHECK(ts::throws_errc(Errc::BadRate, [&] { read_wav(dir.file("rate.wav")); }));

    ts::write_wav(dir.file("stereo.wav"), samples, {.channels = 2});
    CHECK(ts::throws_errc(Errc::BadChannels, [&] { read_wav(dir.file("stereo.wav")); }));

    ts::write_wav(dir.file("float.wav"), samples, {.audio_format = 3});
    CHECK(ts::throws_errc(Errc::NotPcm16, [&] { read_wav(dir.file("float.wav")); }));

    ts::write_wav(dir.file("bits.wav"), samples, {.bits_per_sample = 8});
    CHECK(ts::throws_errc(Errc::NotPcm16, [&] { read_wav(dir.file("bits.wav")); }));

    ts::write_wav(dir.file("trunc.wav"), samples, {.declared_data_size = 1024});
    CHECK(ts::throws_errc(Errc::Truncated, [&] { read_wav(dir.file("trunc.wav")); }));

    std::ofstream(dir.file("junk.wav")) << "JUNKJUNKJUNKJUNK";
    CHECK(ts::throws_errc(Errc::NotPcm16, [&] { read_wav(dir.file("junk.wav")); }));
}

TEST_CASE("read_wav round trip stays within the quantization bound") {
    ts::TempDir dir("wav");
    const AudioClip original = ts::noise_clip(0.05, 7);
    ts::write_wav(dir.file("rt.wav"), ts::quantize(original.samples));

    const AudioClip decoded = read_wav(dir.file("rt.wav"));
    REQUIRE(decoded.samples.size() == original.samples.size());
    for (std::size_t i = 0; i < decoded.samples.size(); ++i) {
        CHECK(std::abs(decoded.samples[i] - original.samples[i]) <= 1.0 / 32768.0);
    }
}

TEST_CASE("read_pgm parses ASCII and binary variants") {
    ts::TempDir dir("pgm");
    std::ofstream(dir.file("a.pgm")) << "P2\n2 2\n255\n0 10\n20 30\n";
    const GrayImage img = read_pgm(dir.file("a.pgm"));
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 10, 20, 30});

    SUBCASE("header comments are ignored") {
        std::ofstream(dir.file("c.pgm")) << "P2\n# a comment\n2 2\n# another\n255\n0 10 20 30\n";
        CHECK(read_pgm(dir.file("c.pgm")).pixels == img.pixels);
    }
}

TEST_CASE("read_pgm error paths") {
    ts::TempDir dir("pgm");

    std::ofstream(dir.file("magic.pgm")) << "P6\n2 2\n255\n0 1 2 3";
    CHECK(ts::throws_errc(Errc::BadMagic, [&] { read_pgm(dir.file("magic.pgm")); }));

    {
        std::ofstream out(dir.file("maxval.pgm"), std::ios::binary);
        out << "P5\n2 2\n65535\n";
        out.write("\0\0\0\0\0\0\0\0", 8);
    }
    CHECK(ts::throws_errc(Errc::BadMaxval, [&] { read_pgm(dir.file("maxval.pgm")); }));

    {
        std::ofstream out(dir.file("short.pgm"), std::ios::binary);
        out << "P5\n2 2\n255\n";
        out.write("abc", 3);
    }
    CHECK(ts::throws_errc(Errc::Truncated, [&] { read_pgm(dir.file("short.pgm")); }));
}

TEST_CASE("P2 and P5 renderings of one image decode identically") {
    ts::TempDir dir("pgm");
    for (std::uint32_t seed : {1u, 2u, 3u}) {
        const GrayImage img = ts::random_image(9, 5, seed);
        ts::write_pgm_p2(dir.file("x.pgm"), img);
        ts::write_pgm_p5(dir.file("y.pgm"), img);
        const GrayImage a = read_pgm(dir.file("x.pgm"));
        const GrayImage b = read_pgm(dir.file("y.pgm"));
        CHECK(a.width == b.width);
        CHECK(a.height == b.height);
        CHECK(a.pixels == b.pixels);
    }
}

TEST_CASE("read_manifest parses path,label lines") {
    ts::TempDir dir("man");
    std::ofstream(dir.file("m.csv")) << "# training set\n"
                                        "a.wav,happy\n"
                                        "  b.wav , sad  \n"
                                        "\n";
    const SampleManifest manifest = read_manifest(dir.file("m.csv"));
    REQUIRE(manifest.entries.size() == 2);
    CHECK(manifest.entries[0].path == "a.wav");
    CHECK(manifest.entries[0].label == "happy");
    CHECK(manifest.entries[1].path == "b.wav");
    CHECK(manifest.entries[1].label == "sad");
}

TEST_CASE("read_manifest error paths") {
    ts::TempDir dir("man");

    std::ofstream(dir.file("comments.csv")) << "# only\n# comments\n";
    CHECK(ts::throws_errc(Errc::EmptyManifest, [&] { read_manifest(dir.file("comments.csv")); }));

    std::ofstream(dir.file("extra.csv")) << "a.wav,happy,extra\n";
    CHECK(ts::throws_errc(Errc::BadLine, [&] { read_manifest(dir.file("extra.csv")); }));

    std::ofstream(dir.file("one.csv")) << "no-comma-here\n";
    CHECK(ts::throws_errc(Errc::BadLine, [&] { read_manifest(dir.file("one.csv")); }));
}

TEST_CASE("readers are pure: identical bytes give identical values") {
    ts::TempDir dir("pure");
    ts::write_wav(dir.file("p.wav"), ts::quantize(ts::noise_clip(0.03, 11).samples));
    ts::write_pgm_p5(dir.file("p.pgm"), ts::random_image(6, 6, 12));

    const AudioClip c1 = read_wav(dir.file("p.wav"));
    const AudioClip c2 = read_wav(dir.file("p.wav"));
    CHECK(c1.samples == c2.samples);

    const GrayImage i1 = read_pgm(dir.file("p.pgm"));
    const GrayImage i2 = read_pgm(dir.file("p.pgm"));
    CHECK(i1.pixels == i2.pixels);
}
