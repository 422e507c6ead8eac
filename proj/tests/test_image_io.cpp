#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <string>

#include "histoseg/error.hpp"
#include "histoseg/image_io.hpp"
#include "histoseg/segment.hpp"
#include "support/synthetic.hpp"

#ifdef HISTOSEG_HAVE_PNG
#include <png.h>
#endif

namespace histoseg {
namespace {

using testing::TempDir;

void write_file(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

Errc load_error(const std::filesystem::path& p) {
    try {
        (void)load_gray(p);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected load of " << p << " to fail";
    return Errc::invalid_argument;
}

TEST(ImageTest, RejectsInconsistentBuffers) {
    EXPECT_THROW(GrayImage(2, 2, std::vector<std::uint8_t>(3)), Error);
    EXPECT_THROW(GrayImage(0, 2, std::vector<std::uint8_t>{}), Error);
    EXPECT_THROW(BinaryImage(1, 2, std::vector<std::uint8_t>{0, 2}), Error);
}

TEST(ImageIoTest, ReadsAsciiPgmWithComments) {
    TempDir dir;
    write_file(dir / "a.pgm", "P2\n# comment\n2 2\n# another\n255\n0 10\n20 255\n");
    const auto img = load_gray(dir / "a.pgm");
    EXPECT_EQ(img, GrayImage(2, 2, {0, 10, 20, 255}));
}

TEST(ImageIoTest, ReadsBinaryPgm) {
    TempDir dir;
    write_file(dir / "b.pgm", std::string("P5 3 1 255\n") + std::string("\x00\x7f\xff", 3));
    EXPECT_EQ(load_gray(dir / "b.pgm"), GrayImage(3, 1, {0, 127, 255}));
}

TEST(ImageIoTest, RescalesSmallMaxval) {
    TempDir dir;
    write_file(dir / "c.pgm", "P2 3 1 1\n0 1 1\n");
    EXPECT_EQ(load_gray(dir / "c.pgm"), GrayImage(3, 1, {0, 255, 255}));
}

TEST(ImageIoTest, ConvertsPpmThroughLuma) {
    TempDir dir;
    write_file(dir / "c.ppm", "P3 2 1 255\n255 255 255  100 50 200\n");
    EXPECT_EQ(load_gray(dir / "c.ppm"), GrayImage(2, 1, {255, 82}));
}

TEST(ImageIoTest, LumaOfWhiteAndKnownColour) {
    EXPECT_EQ(luma(255, 255, 255), 255);
    // 0.299*100 + 0.587*50 + 0.114*200 = 82.05
    EXPECT_EQ(luma(100, 50, 200), 82);
    // 0.114*250 = 28.5 exactly; halves round up
    EXPECT_EQ(luma(0, 0, 250), 29);
}

TEST(ImageIoTest, LumaOfGrayIsIdentity) {
    for (int v = 0; v < 256; ++v) {
        const auto u = static_cast<std::uint8_t>(v);
        EXPECT_EQ(luma(u, u, u), u);
    }
}

TEST(ImageIoTest, ReportsErrorsDistinctly) {
    TempDir dir;
    EXPECT_EQ(load_error(dir / "missing.pgm"), Errc::file_not_found);

    write_file(dir / "hdr.pgm", "P2\nx 2\n255\n");
    EXPECT_EQ(load_error(dir / "hdr.pgm"), Errc::malformed_header);

    write_file(dir / "deep.pgm", "P2 1 1 65535\n1000\n");
    EXPECT_EQ(load_error(dir / "deep.pgm"), Errc::unsupported_bit_depth);

    write_file(dir / "p4.pbm", "P4 1 1\n\x80");
    EXPECT_EQ(load_error(dir / "p4.pbm"), Errc::unsupported_format);

    write_file(dir / "short.pgm", "P5 4 4 255\nabc");
    EXPECT_EQ(load_error(dir / "short.pgm"), Errc::io_error);

    write_file(dir / "huge.pgm", "P5 16384 16384 255\n");
    EXPECT_EQ(load_error(dir / "huge.pgm"), Errc::image_too_large);
}

TEST(ImageIoTest, SaveBinaryWritesZeroAnd255) {
    TempDir dir;
    save_binary(BinaryImage(1, 2, {0, 1}), dir / "bin.pgm");
    std::ifstream in(dir / "bin.pgm", std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(bytes, std::string("P5\n1 2\n255\n") + std::string("\x00\xff", 2));

    save_binary(BinaryImage(3, 1, std::uint8_t{1}), dir / "ones.pgm");
    EXPECT_EQ(load_gray(dir / "ones.pgm"), GrayImage(3, 1, std::uint8_t{255}));
}

TEST(ImageIoTest, BinaryRoundTripThroughRebinarize) {
    TempDir dir;
    std::mt19937_64 rng(testing::seed_from_env(11));
    std::uniform_real_distribution<double> th(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto bin = testing::random_binary(17, 9, 0.4, rng);
        save_binary(bin, dir / "rt.pgm");
        const auto back = load_gray(dir / "rt.pgm");
        double t = th(rng);
        while (t == 0.0) t = th(rng);
        EXPECT_EQ(binarize(back, t), bin);
    }
}

#ifdef HISTOSEG_HAVE_PNG
void write_png(const std::filesystem::path& p, int w, int h, std::uint32_t format,
               const std::vector<std::uint8_t>& data) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(w);
    image.height = static_cast<png_uint_32>(h);
    image.format = format;
    ASSERT_TRUE(png_image_write_to_file(&image, p.string().c_str(), 0, data.data(), 0, nullptr));
}

TEST(ImageIoTest, ReadsGrayAndRgbPng) {
    TempDir dir;
    write_png(dir / "g.png", 2, 2, PNG_FORMAT_GRAY, {0, 10, 20, 255});
    EXPECT_EQ(load_gray(dir / "g.png"), GrayImage(2, 2, {0, 10, 20, 255}));

    write_png(dir / "c.png", 2, 1, PNG_FORMAT_RGB, {255, 255, 255, 100, 50, 200});
    EXPECT_EQ(load_gray(dir / "c.png"), GrayImage(2, 1, {255, 82}));
}

TEST(ImageIoTest, RejectsSixteenBitPng) {
    TempDir dir;
    std::vector<std::uint16_t> wide{0, 1000, 2000, 65535};
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = 2;
    image.height = 2;
    image.format = PNG_FORMAT_LINEAR_Y;
    ASSERT_TRUE(png_image_write_to_file(&image, (dir / "w.png").string().c_str(), 0, wide.data(),
                                        0, nullptr));
    EXPECT_EQ(load_error(dir / "w.png"), Errc::unsupported_bit_depth);
}
#endif

}  // namespace
}  // namespace histoseg
