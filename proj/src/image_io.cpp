#include "histoseg/image_io.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "histoseg/error.hpp"

#ifdef HISTOSEG_HAVE_PNG
#include <png.h>
#endif

namespace histoseg {

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    // Integer weights in thousandths keep half-up rounding exact.
    const unsigned scaled = 299u * r + 587u * g + 114u * b;
    return static_cast<std::uint8_t>((scaled + 500u) / 1000u);
}

namespace {

enum class PnmKind { gray_ascii, gray_binary, rgb_ascii, rgb_binary };

// Whitespace and '#' comments may appear anywhere between header tokens.
void skip_separators(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string ignored;
            std::getline(in, ignored);
        } else if (c != EOF && std::isspace(c)) {
            in.get();
        } else {
            return;
        }
    }
}

long read_header_int(std::istream& in, const char* what) {
    skip_separators(in);
    std::string digits;
    while (std::isdigit(in.peek())) digits.push_back(static_cast<char>(in.get()));
    if (digits.empty() || digits.size() > 9) {
        throw Error(Errc::malformed_header, std::string("bad or missing ") + what + " in PNM header");
    }
    return std::stol(digits);
}

std::uint8_t rescale(long v, long maxval) {
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>((v * 255 * 2 + maxval) / (2 * maxval));
}

}  // namespace

GrayImage read_pnm(std::istream& in) {
    std::array<char, 2> magic{};
    if (!in.read(magic.data(), 2) || magic[0] != 'P') {
        throw Error(Errc::unsupported_format, "not a PNM stream");
    }
    PnmKind kind{};
    switch (magic[1]) {
        case '2': kind = PnmKind::gray_ascii; break;
        case '5': kind = PnmKind::gray_binary; break;
        case '3': kind = PnmKind::rgb_ascii; break;
        case '6': kind = PnmKind::rgb_binary; break;
        default:
            throw Error(Errc::unsupported_format,
                        std::string("unsupported PNM variant P") + magic[1]);
    }
    if (const int c = in.peek(); c != '#' && !std::isspace(c)) {
        throw Error(Errc::malformed_header, "missing separator after PNM magic");
    }

    const long width = read_header_int(in, "width");
    const long height = read_header_int(in, "height");
    const long maxval = read_header_int(in, "maxval");
    if (width < 1 || height < 1) throw Error(Errc::malformed_header, "PNM dimensions must be positive");
    if (maxval < 1) throw Error(Errc::malformed_header, "PNM maxval must be positive");
    if (maxval > 255) {
        throw Error(Errc::unsupported_bit_depth,
                    "maxval " + std::to_string(maxval) + " needs more than 8 bits per sample");
    }
    const auto pixel_count = static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
    if (pixel_count > kMaxPixels) {
        throw Error(Errc::image_too_large, "image has " + std::to_string(pixel_count) +
                                               " pixels, limit is " + std::to_string(kMaxPixels));
    }

    const bool rgb = kind == PnmKind::rgb_ascii || kind == PnmKind::rgb_binary;
    const std::size_t channels = rgb ? 3 : 1;
    std::vector<std::uint8_t> samples(static_cast<std::size_t>(pixel_count) * channels);

    if (kind == PnmKind::gray_binary || kind == PnmKind::rgb_binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (!std::isspace(in.get())) throw Error(Errc::malformed_header, "missing separator before raster");
        in.read(reinterpret_cast<char*>(samples.data()), static_cast<std::streamsize>(samples.size()));
        if (static_cast<std::size_t>(in.gcount()) != samples.size()) {
            throw Error(Errc::io_error, "truncated PNM raster");
        }
        for (auto& s : samples) {
            if (s > maxval) throw Error(Errc::io_error, "sample exceeds maxval");
            s = rescale(s, maxval);
        }
    } else {
        for (auto& s : samples) {
            skip_separators(in);
            std::string digits;
            while (std::isdigit(in.peek())) digits.push_back(static_cast<char>(in.get()));
            if (digits.empty()) throw Error(Errc::io_error, "truncated or invalid ASCII raster");
            const long v = digits.size() > 3 ? maxval + 1 : std::stol(digits);
            if (v > maxval) throw Error(Errc::io_error, "sample exceeds maxval");
            s = rescale(v, maxval);
        }
    }

    if (!rgb) return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(samples));

    std::vector<std::uint8_t> gray(static_cast<std::size_t>(pixel_count));
    for (std::size_t i = 0; i < gray.size(); ++i) {
        gray[i] = luma(samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]);
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(gray));
}

bool png_supported() noexcept {
#ifdef HISTOSEG_HAVE_PNG
    return true;
#else
    return false;
#endif
}

namespace {

#ifdef HISTOSEG_HAVE_PNG
GrayImage read_png(const std::filesystem::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
        throw Error(Errc::malformed_header, std::string("PNG decode failed: ") + image.message);
    }
    struct Guard {
        png_image* img;
        ~Guard() { png_image_free(img); }
    } guard{&image};

    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        throw Error(Errc::unsupported_bit_depth, "16-bit PNG is not supported");
    }
    if (image.format & (PNG_FORMAT_FLAG_ALPHA | PNG_FORMAT_FLAG_COLORMAP)) {
        throw Error(Errc::unsupported_format, "only 8-bit gray or RGB PNG is supported");
    }
    const std::uint64_t pixel_count = std::uint64_t{image.width} * image.height;
    if (pixel_count > kMaxPixels) throw Error(Errc::image_too_large, "PNG exceeds the pixel limit");

    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        throw Error(Errc::io_error, std::string("PNG decode failed: ") + image.message);
    }
    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    if (!color) return GrayImage(w, h, std::move(buffer));

    std::vector<std::uint8_t> gray(static_cast<std::size_t>(pixel_count));
    for (std::size_t i = 0; i < gray.size(); ++i) {
        gray[i] = luma(buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]);
    }
    return GrayImage(w, h, std::move(gray));
}
#endif

}  // namespace

GrayImage load_gray(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(Errc::file_not_found, "cannot open " + path.string() + ": no such file");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path.string());

    std::array<unsigned char, 8> signature{};
    in.read(reinterpret_cast<char*>(signature.data()), signature.size());
    const auto got = static_cast<std::size_t>(in.gcount());
    in.clear();
    in.seekg(0);

    constexpr std::array<unsigned char, 8> png_sig{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (got == png_sig.size() && signature == png_sig) {
#ifdef HISTOSEG_HAVE_PNG
        in.close();
        return read_png(path);
#else
        throw Error(Errc::unsupported_format, "PNG support was not compiled in");
#endif
    }
    if (got < 2 || signature[0] != 'P') {
        throw Error(Errc::unsupported_format, path.string() + " is neither PNM nor PNG");
    }
    return read_pnm(in);
}

void write_pgm(const GrayImage& img, std::ostream& out) {
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    const auto px = img.pixels();
    out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
}

void save_gray(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
    write_pgm(img, out);
    out.flush();
    if (!out) throw Error(Errc::io_error, "write failed for " + path.string());
}

void save_binary(const BinaryImage& img, const std::filesystem::path& path) {
    save_gray(img.render(), path);
}

}  // namespace histoseg
