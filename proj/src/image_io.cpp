// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "chromafix/errors.hpp"

namespace chromafix {

namespace {

struct FileHandle {
    std::FILE* f = nullptr;
    explicit FileHandle(const std::filesystem::path& path, const char* mode)
        : f(std::fopen(path.string().c_str(), mode)) {}
    ~FileHandle() {
        if (f)
            std::fclose(f);
    }
    FileHandle(const FileHandle&) = delete;
    FileHandle& operator=(const FileHandle&) = delete;
};

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    PngReader() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png)
            info = png_create_info_struct(png);
    }
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    PngWriter() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png)
            info = png_create_info_struct(png);
    }
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

}  // namespace

ImageBuffer load_png(const std::filesystem::path& path) {
    FileHandle file(path, "rb");
    if (!file.f)
        throw IoError("cannot open image file: " + path.string());

    PngReader ctx;
    if (!ctx.png || !ctx.info)
        throw IoError("libpng initialization failed");

    std::vector<png_byte> raster;
    std::vector<png_bytep> rows;

    if (setjmp(png_jmpbuf(ctx.png)))
        throw IoError("failed to decode PNG: " + path.string());

    png_init_io(ctx.png, file.f);
    png_read_info(ctx.png, ctx.info);

    const png_uint_32 width = png_get_image_width(ctx.png, ctx.info);
    const png_uint_32 height = png_get_image_height(ctx.png, ctx.info);
    const int depth = png_get_bit_depth(ctx.png, ctx.info);
    const int color_type = png_get_color_type(ctx.png, ctx.info);

    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(ctx.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8)
        png_set_expand_gray_1_2_4_to_8(ctx.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(ctx.png);
    if (color_type & PNG_COLOR_MASK_ALPHA)
        png_set_strip_alpha(ctx.png);
    if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS)) {
        png_set_tRNS_to_alpha(ctx.png);
        png_set_strip_alpha(ctx.png);
    }
    png_read_update_info(ctx.png, ctx.info);

    const int out_depth = png_get_bit_depth(ctx.png, ctx.info);
    const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
    raster.resize(rowbytes * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y)
        rows[y] = raster.data() + y * rowbytes;
    png_read_image(ctx.png, rows.data());
    png_read_end(ctx.png, nullptr);

    ImageBuffer img =
        ImageBuffer::make(static_cast<int>(width), static_cast<int>(height),
                          out_depth == 16 ? 12 : 8);
    std::size_t di = 0;
    for (png_uint_32 y = 0; y < height; ++y) {
        const png_bytep row = rows[y];
        if (out_depth == 16) {
            for (std::size_t i = 0; i < 3 * width; ++i) {
                // PNG stores 16-bit samples most significant byte first.
                const std::uint16_t v16 =
                    static_cast<std::uint16_t>((row[2 * i] << 8) | row[2 * i + 1]);
                img.data[di++] = static_cast<std::uint16_t>(v16 >> 4);  // left-aligned 12-bit
            }
        } else {
            for (std::size_t i = 0; i < 3 * width; ++i)
                img.data[di++] = row[i];
        }
    }
    return img;
}

void save_png(const ImageBuffer& img, const std::filesystem::path& path) {
    if (img.data.size() != 3 * img.pixel_count())
        throw std::invalid_argument("save_png: inconsistent buffer size");

    FileHandle file(path, "wb");
    if (!file.f)
        throw IoError("cannot create image file: " + path.string());

    PngWriter ctx;
    if (!ctx.png || !ctx.info)
        throw IoError("libpng initialization failed");

    const bool wide = img.bit_depth == 12;
    std::vector<png_byte> raster;
    std::vector<png_bytep> rows;
    const std::size_t rowbytes = static_cast<std::size_t>(img.width) * 3 * (wide ? 2 : 1);
    raster.resize(rowbytes * img.height);
    rows.resize(img.height);
    std::size_t si = 0;
    for (int y = 0; y < img.height; ++y) {
        png_bytep row = raster.data() + static_cast<std::size_t>(y) * rowbytes;
        rows[y] = row;
        if (wide) {
            for (int i = 0; i < 3 * img.width; ++i) {
                const std::uint16_t v16 = static_cast<std::uint16_t>(img.data[si++] << 4);
                row[2 * i] = static_cast<png_byte>(v16 >> 8);
                row[2 * i + 1] = static_cast<png_byte>(v16 & 0xff);
            }
        } else {
            for (int i = 0; i < 3 * img.width; ++i)
                row[i] = static_cast<png_byte>(img.data[si++]);
        }
    }

    if (setjmp(png_jmpbuf(ctx.png)))
        throw IoError("failed to encode PNG: " + path.string());

    png_init_io(ctx.png, file.f);
    png_set_IHDR(ctx.png, ctx.info, img.width, img.height, wide ? 16 : 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);
    png_write_image(ctx.png, rows.data());
    png_write_end(ctx.png, nullptr);
}

ImageBuffer load_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open image file: " + path.string());

    auto next_token = [&in, &path]() -> std::string {
        std::string token;
        int c;
        while ((c = in.get()) != EOF) {
            if (c == '#') {  // comment to end of line
                while ((c = in.get()) != EOF && c != '\n') {
                }
                continue;
            }
            if (std::isspace(c)) {
                if (!token.empty())
                    return token;
                continue;
            }
            token.push_back(static_cast<char>(c));
        }
        if (token.empty())
            throw IoError("truncated PPM header: " + path.string());
        return token;
    };

    if (next_token() != "P6")
        throw IoError("not a binary PPM file: " + path.string());
    const int width = std::stoi(next_token());
    const int height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (width < 1 || height < 1)
        throw IoError("bad PPM dimensions: " + path.string());
    if (maxval != 255)
        throw IoError("only 8-bit PPM supported: " + path.string());

    ImageBuffer img = ImageBuffer::make(width, height, 8);
    std::vector<char> bytes(3 * img.pixel_count());
    in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
        throw IoError("truncated PPM data: " + path.string());
    for (std::size_t i = 0; i < bytes.size(); ++i)
        img.data[i] = static_cast<std::uint8_t>(bytes[i]);
    return img;
}

void save_ppm(const ImageBuffer& img, const std::filesystem::path& path) {
    if (img.bit_depth != 8)
        throw std::invalid_argument("save_ppm: 8-bit images only");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot create image file: " + path.string());
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    std::vector<char> bytes(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i)
        bytes[i] = static_cast<char>(static_cast<std::uint8_t>(img.data[i]));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("failed writing PPM: " + path.string());
}

ImageBuffer load_image(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".png")
        return load_png(path);
    if (ext == ".ppm")
        return load_ppm(path);
    throw IoError("unsupported image format: " + path.string());
}

void save_image(const ImageBuffer& img, const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".png")
        return save_png(img, path);
    if (ext == ".ppm")
        return save_ppm(img, path);
    throw IoError("unsupported image format: " + path.string());
}

}  // namespace chromafix
