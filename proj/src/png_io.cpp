#include "gavo/png_io.hpp"

#include <cstdio>
#include <memory>

#include <png.h>

#include "gavo/errors.hpp"

namespace gavo {

namespace {

struct FileCloser
{
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_handler(png_structp, png_const_charp message)
{
  throw UnsupportedPixelFormat(std::string("libpng: ") + message);
}

void png_warning_handler(png_structp, png_const_charp) {}

class PngReader
{
public:
  explicit PngReader(const std::string& path) : path_(path)
  {
    file_.reset(std::fopen(path.c_str(), "rb"));
    if (!file_)
      throw MissingFile(path);

    png_byte signature[8];
    if (std::fread(signature, 1, 8, file_.get()) != 8 || png_sig_cmp(signature, 0, 8))
      throw UnsupportedPixelFormat(path + ": not a PNG file");

    png_ = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler,
                                  png_warning_handler);
    info_ = png_create_info_struct(png_);
    png_init_io(png_, file_.get());
    png_set_sig_bytes(png_, 8);
  }

  ~PngReader() { png_destroy_read_struct(&png_, &info_, nullptr); }

  PngReader(const PngReader&) = delete;
  PngReader& operator=(const PngReader&) = delete;

  // Separate from the constructor so the destructor runs if libpng throws.
  void read_info() { png_read_info(png_, info_); }

  int width() const { return static_cast<int>(png_get_image_width(png_, info_)); }
  int height() const { return static_cast<int>(png_get_image_height(png_, info_)); }
  int bit_depth() const { return png_get_bit_depth(png_, info_); }
  int color_type() const { return png_get_color_type(png_, info_); }
  const std::string& path() const { return path_; }

  std::vector<png_byte> read_rows()
  {
    png_read_update_info(png_, info_);
    const std::size_t stride = png_get_rowbytes(png_, info_);
    std::vector<png_byte> buffer(stride * static_cast<std::size_t>(height()));
    std::vector<png_bytep> rows(static_cast<std::size_t>(height()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      rows[r] = buffer.data() + r * stride;
    png_read_image(png_, rows.data());
    png_read_end(png_, nullptr);
    return buffer;
  }

  png_structp handle() { return png_; }

private:
  std::string path_;
  FilePtr file_;
  png_structp png_ = nullptr;
  png_infop info_ = nullptr;
};

class PngWriter
{
public:
  explicit PngWriter(const std::string& path)
  {
    file_.reset(std::fopen(path.c_str(), "wb"));
    if (!file_)
      throw Error("cannot open for writing: " + path);
    png_ = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler,
                                   png_warning_handler);
    info_ = png_create_info_struct(png_);
    png_init_io(png_, file_.get());
  }

  ~PngWriter() { png_destroy_write_struct(&png_, &info_); }

  PngWriter(const PngWriter&) = delete;
  PngWriter& operator=(const PngWriter&) = delete;

  void write(int width, int height, int bit_depth, int color_type,
             std::vector<png_byte>& buffer, std::size_t stride)
  {
    png_set_IHDR(png_, info_, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), bit_depth, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png_, info_);
    for (int r = 0; r < height; ++r)
      png_write_row(png_, buffer.data() + static_cast<std::size_t>(r) * stride);
    png_write_end(png_, nullptr);
  }

private:
  FilePtr file_;
  png_structp png_ = nullptr;
  png_infop info_ = nullptr;
};

}  // namespace

Rgb8Image read_png_rgb8(const std::string& path)
{
  PngReader reader(path);
  reader.read_info();
  const int ct = reader.color_type();
  if (reader.bit_depth() != 8 ||
      (ct != PNG_COLOR_TYPE_RGB && ct != PNG_COLOR_TYPE_RGB_ALPHA))
    throw UnsupportedPixelFormat(path + ": expected 8-bit RGB");
  if (ct == PNG_COLOR_TYPE_RGB_ALPHA)
    png_set_strip_alpha(reader.handle());

  Rgb8Image image;
  image.width = reader.width();
  image.height = reader.height();
  const auto buffer = reader.read_rows();
  image.data.assign(buffer.begin(), buffer.end());
  return image;
}

Gray16Image read_png_gray16(const std::string& path)
{
  PngReader reader(path);
  reader.read_info();
  if (reader.bit_depth() != 16 || reader.color_type() != PNG_COLOR_TYPE_GRAY)
    throw UnsupportedPixelFormat(path + ": expected 16-bit grayscale");

  Gray16Image image;
  image.width = reader.width();
  image.height = reader.height();
  const auto buffer = reader.read_rows();
  image.data.resize(buffer.size() / 2);
  // PNG samples are big-endian.
  for (std::size_t i = 0; i < image.data.size(); ++i)
    image.data[i] = static_cast<std::uint16_t>((buffer[2 * i] << 8) | buffer[2 * i + 1]);
  return image;
}

void write_png_rgb8(const std::string& path, const Rgb8Image& image)
{
  std::vector<png_byte> buffer(image.data.begin(), image.data.end());
  PngWriter(path).write(image.width, image.height, 8, PNG_COLOR_TYPE_RGB, buffer,
                        static_cast<std::size_t>(image.width) * 3);
}

void write_png_gray16(const std::string& path, const Gray16Image& image)
{
  std::vector<png_byte> buffer(image.data.size() * 2);
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    buffer[2 * i] = static_cast<png_byte>(image.data[i] >> 8);
    buffer[2 * i + 1] = static_cast<png_byte>(image.data[i] & 0xff);
  }
  PngWriter(path).write(image.width, image.height, 16, PNG_COLOR_TYPE_GRAY, buffer,
                        static_cast<std::size_t>(image.width) * 2);
}

}  // namespace gavo
