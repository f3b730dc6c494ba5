#include "asym/image.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "asym/kernels.hpp"

namespace asym {

namespace {

[[noreturn]] void decode_fail(std::size_t offset, const std::string& what) {
    raise(errc::decode_error, what + " (byte offset " + std::to_string(offset) + ")");
}

struct HeaderScanner {
    const std::string& bytes;
    std::size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            const char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int(const char* what) {
        skip_space_and_comments();
        if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9')
            decode_fail(pos, std::string("expected ") + what);
        long v = 0;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1000000000L)
                decode_fail(pos, std::string("unreasonable ") + what);
            ++pos;
        }
        return v;
    }
};

} // namespace

PnmImage decode_pnm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        decode_fail(0, "not a PNM file");
    const char kind = bytes[1];
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
        decode_fail(1, std::string("unsupported PNM type P") + kind);
    const bool ascii = kind == '2' || kind == '3';
    const bool color = kind == '3' || kind == '6';

    HeaderScanner hs{bytes, 2};
    const long width = hs.next_int("width");
    const long height = hs.next_int("height");
    const long maxval = hs.next_int("maxval");
    if (width <= 0 || height <= 0)
        decode_fail(hs.pos, "non-positive dimensions");
    if (maxval != 255)
        decode_fail(hs.pos, "maxval must be 255, got " + std::to_string(maxval));

    const std::size_t values =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * (color ? 3 : 1);
    std::vector<std::uint8_t> data;
    data.reserve(values);

    if (ascii) {
        std::size_t pos = hs.pos;
        while (data.size() < values) {
            HeaderScanner vs{bytes, pos};
            vs.skip_space_and_comments();
            if (vs.pos >= bytes.size())
                decode_fail(vs.pos, "truncated ASCII payload, got " +
                                        std::to_string(data.size()) + " of " +
                                        std::to_string(values) + " values");
            const long v = vs.next_int("sample value");
            if (v > 255)
                decode_fail(pos, "sample value exceeds maxval");
            data.push_back(static_cast<std::uint8_t>(v));
            pos = vs.pos;
        }
    } else {
        // exactly one whitespace byte after maxval, then the raster
        if (hs.pos >= bytes.size() ||
            (bytes[hs.pos] != '\n' && bytes[hs.pos] != ' ' && bytes[hs.pos] != '\t' &&
             bytes[hs.pos] != '\r'))
            decode_fail(hs.pos, "missing whitespace before binary payload");
        const std::size_t start = hs.pos + 1;
        if (bytes.size() - start < values)
            decode_fail(bytes.size(), "truncated payload, got " +
                                          std::to_string(bytes.size() - start) + " of " +
                                          std::to_string(values) + " bytes");
        data.assign(bytes.begin() + static_cast<long>(start),
                    bytes.begin() + static_cast<long>(start + values));
    }

    if (color) {
        RgbImage img;
        img.width = static_cast<int>(width);
        img.height = static_cast<int>(height);
        img.pixels = std::move(data);
        return img;
    }
    GrayImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    img.pixels = std::move(data);
    return img;
}

std::string encode_pnm(const GrayImage& img) {
    std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                      "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

std::string encode_pnm(const RgbImage& img) {
    std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                      "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

PnmImage read_pnm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(errc::invalid_input, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return decode_pnm(ss.str());
}

void write_pnm_file(const std::string& path, const PnmImage& img) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(errc::invalid_input, "cannot write " + path);
    const std::string bytes = std::visit([](const auto& i) { return encode_pnm(i); }, img);
    out.write(bytes.data(), static_cast<long>(bytes.size()));
}

GrayImage to_gray(const RgbImage& img) {
    GrayImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.resize(img.pixel_count());
    kernels::rgb_to_gray_u8(img.pixels.data(), out.pixels.data(), img.pixel_count());
    return out;
}

std::uint64_t l1_norm(const RgbImage& a, const RgbImage& b) {
    if (a.width != b.width || a.height != b.height)
        raise(errc::image_mismatch, "image dimensions differ");
    return kernels::sum_abs_diff_u8(a.pixels.data(), b.pixels.data(), a.pixels.size());
}

RgbImage color_correct(const RgbImage& fitted, const RgbImage& original) {
    if (fitted.width != original.width || fitted.height != original.height)
        raise(errc::image_mismatch, "image dimensions differ");

    std::uint64_t sum_f[3], sum_o[3];
    kernels::channel_sums_rgb_u8(fitted.pixels.data(), fitted.pixel_count(), sum_f);
    kernels::channel_sums_rgb_u8(original.pixels.data(), original.pixel_count(), sum_o);

    const double n = static_cast<double>(fitted.pixel_count());
    RgbImage out;
    out.width = fitted.width;
    out.height = fitted.height;
    out.pixels.resize(fitted.pixels.size());

    // channels are interleaved, so shift each channel through a strided pass
    for (int ch = 0; ch < 3; ++ch) {
        const long delta = std::lround(static_cast<double>(sum_o[ch]) / n -
                                       static_cast<double>(sum_f[ch]) / n);
        for (std::size_t i = static_cast<std::size_t>(ch); i < fitted.pixels.size(); i += 3) {
            long v = fitted.pixels[i] + delta;
            if (v < 0)
                v = 0;
            else if (v > 255)
                v = 255;
            out.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return out;
}

double masked_mean(const GrayImage& img) {
    if (img.mask.empty()) {
        if (img.pixels.empty())
            raise(errc::empty_region, "image has no pixels");
        return static_cast<double>(kernels::sum_u8(img.pixels.data(), img.pixels.size())) /
               static_cast<double>(img.pixels.size());
    }
    const std::uint64_t count = kernels::sum_u8(img.mask.data(), img.mask.size());
    if (count == 0)
        raise(errc::empty_region, "mask selects no pixels");
    const std::uint64_t sum =
        kernels::masked_sum_u8(img.pixels.data(), img.mask.data(), img.pixels.size());
    return static_cast<double>(sum) / static_cast<double>(count);
}

GrayImage brightness_normalize(const GrayImage& src, const GrayImage& ref) {
    const double shift = masked_mean(ref) - masked_mean(src);
    const int delta = static_cast<int>(std::lround(shift));

    GrayImage out;
    out.width = src.width;
    out.height = src.height;
    out.mask = src.mask;
    out.pixels.resize(src.pixels.size());
    kernels::shift_clamp_u8(src.pixels.data(), out.pixels.data(), src.pixels.size(), delta);
    return out;
}

std::optional<double> sample_bilinear(const GrayImage& img, double fx, double fy) {
    if (!(fx >= 0.0) || !(fy >= 0.0) || !(fx <= img.width - 1.0) || !(fy <= img.height - 1.0))
        return std::nullopt;
    int x0 = static_cast<int>(std::floor(fx));
    int y0 = static_cast<int>(std::floor(fy));
    if (x0 > img.width - 2)
        x0 = img.width - 2;
    if (y0 > img.height - 2)
        y0 = img.height - 2;
    if (img.width == 1)
        x0 = 0;
    if (img.height == 1)
        y0 = 0;
    const int x1 = img.width == 1 ? 0 : x0 + 1;
    const int y1 = img.height == 1 ? 0 : y0 + 1;

    if (!img.valid_at(x0, y0) || !img.valid_at(x1, y0) || !img.valid_at(x0, y1) ||
        !img.valid_at(x1, y1))
        return std::nullopt;

    const double ax = fx - x0;
    const double ay = fy - y0;
    const double top = img.at(x0, y0) * (1.0 - ax) + img.at(x1, y0) * ax;
    const double bot = img.at(x0, y1) * (1.0 - ax) + img.at(x1, y1) * ax;
    return top * (1.0 - ay) + bot * ay;
}

} // namespace asym
