#include <lfc/image_io.hpp>

#include <lfc/error.hpp>

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <vector>

namespace lfc {
namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path &path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

RgbView from_interleaved(int width, int height, const std::vector<std::uint8_t> &rgb) {
  RgbView view(width, height);
  for (std::size_t i = 0; i < view.pixel_count(); ++i) {
    for (int c = 0; c < 3; ++c) {
      view.plane(c)[i] = rgb[3 * i + c];
    }
  }
  return view;
}

std::vector<std::uint8_t> to_interleaved(const RgbView &view) {
  std::vector<std::uint8_t> rgb(3 * view.pixel_count());
  for (std::size_t i = 0; i < view.pixel_count(); ++i) {
    for (int c = 0; c < 3; ++c) {
      rgb[3 * i + c] = view.plane(c)[i];
    }
  }
  return rgb;
}

RgbView read_png(const fs::path &path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
    throw Error("cannot read PNG " + path.string() + ": " + image.message);
  }
  if ((image.format & PNG_FORMAT_FLAG_LINEAR) != 0) {
    png_image_free(&image);
    throw Error("unsupported bit depth (only 8-bit images): " + path.string());
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr) == 0) {
    throw Error("cannot decode PNG " + path.string() + ": " + image.message);
  }
  return from_interleaved(static_cast<int>(image.width), static_cast<int>(image.height), buffer);
}

void write_png(const fs::path &path, const RgbView &view) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(view.width());
  image.height = static_cast<png_uint_32>(view.height());
  image.format = PNG_FORMAT_RGB;
  const auto rgb = to_interleaved(view);
  if (png_image_write_to_file(&image, path.c_str(), 0, rgb.data(), 0, nullptr) == 0) {
    throw Error("cannot write PNG " + path.string() + ": " + image.message);
  }
}

// Next whitespace-delimited header token, skipping '#' comments.
std::string ppm_token(std::istream &in) {
  std::string token;
  int ch = 0;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch) != 0) {
      if (!token.empty()) {
        break;
      }
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

RgbView read_ppm(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  if (ppm_token(in) != "P6") {
    throw Error("not a binary PPM (P6): " + path.string());
  }
  int width = 0;
  int height = 0;
  int maxval = 0;
  try {
    width = std::stoi(ppm_token(in));
    height = std::stoi(ppm_token(in));
    maxval = std::stoi(ppm_token(in));
  } catch (const std::exception &) {
    throw Error("malformed PPM header: " + path.string());
  }
  if (width <= 0 || height <= 0) {
    throw Error("malformed PPM header: " + path.string());
  }
  if (maxval != 255) {
    throw Error("unsupported PPM maxval " + std::to_string(maxval) + " (only 8-bit images): " +
                path.string());
  }
  std::vector<std::uint8_t> rgb(3 * static_cast<std::size_t>(width) * height);
  in.read(reinterpret_cast<char *>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (in.gcount() != static_cast<std::streamsize>(rgb.size())) {
    throw Error("truncated PPM: " + path.string());
  }
  return from_interleaved(width, height, rgb);
}

void write_ppm(const fs::path &path, const RgbView &view) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out << "P6\n" << view.width() << ' ' << view.height() << "\n255\n";
  const auto rgb = to_interleaved(view);
  out.write(reinterpret_cast<const char *>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!out) {
    throw Error("cannot write " + path.string());
  }
}

} // namespace

RgbView read_image(const fs::path &path) {
  const auto ext = lower_extension(path);
  if (ext == ".png") {
    return read_png(path);
  }
  if (ext == ".ppm") {
    return read_ppm(path);
  }
  throw Error("unsupported image format: " + path.string());
}

void write_image(const fs::path &path, const RgbView &view) {
  const auto ext = lower_extension(path);
  if (ext == ".png") {
    write_png(path, view);
  } else if (ext == ".ppm") {
    write_ppm(path, view);
  } else {
    throw Error("unsupported image format: " + path.string());
  }
}

NamingScheme parse_naming_scheme(std::string_view name) {
  if (name == "linear") {
    return NamingScheme::Linear;
  }
  if (name == "explicit") {
    return NamingScheme::Explicit;
  }
  throw Error("unknown naming scheme '" + std::string(name) + "' (expected linear|explicit)");
}

std::string_view to_string(NamingScheme scheme) {
  return scheme == NamingScheme::Linear ? "linear" : "explicit";
}

std::string view_file_stem(NamingScheme scheme, ViewIndex idx, int grid_cols) {
  if (scheme == NamingScheme::Linear) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "input_Cam%03d", idx.row * grid_cols + idx.col);
    return buf;
  }
  return std::to_string(idx.row) + "_" + std::to_string(idx.col);
}

LightField load_lightfield(const fs::path &directory, NamingScheme scheme, int grid_rows,
                           int grid_cols) {
  if (grid_rows < 1 || grid_cols < 1) {
    throw Error("grid dimensions must be at least 1x1");
  }
  if (!fs::is_directory(directory)) {
    throw Error("not a directory: " + directory.string());
  }

  std::map<std::string, fs::path> by_stem;
  for (const auto &entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file()) {
      continue;
    }
    const auto ext = lower_extension(entry.path());
    if (ext == ".png" || ext == ".ppm") {
      by_stem.emplace(entry.path().stem().string(), entry.path());
    }
  }

  std::vector<RgbView> views;
  views.reserve(static_cast<std::size_t>(grid_rows) * grid_cols);
  for (int r = 0; r < grid_rows; ++r) {
    for (int c = 0; c < grid_cols; ++c) {
      const auto stem = view_file_stem(scheme, {r, c}, grid_cols);
      const auto it = by_stem.find(stem);
      if (it == by_stem.end()) {
        throw Error("missing view " + to_string(ViewIndex{r, c}) + " (" + stem + ") in " +
                    directory.string());
      }
      views.push_back(read_image(it->second));
      if (views.size() > 1 && !views.back().same_shape(views.front())) {
        throw Error("dimension mismatch: " + it->second.string() + " is " +
                    std::to_string(views.back().width()) + "x" +
                    std::to_string(views.back().height()) + ", expected " +
                    std::to_string(views.front().width()) + "x" +
                    std::to_string(views.front().height()));
      }
    }
  }
  return LightField(grid_rows, grid_cols, std::move(views));
}

void save_lightfield(const fs::path &directory, const LightField &lf, NamingScheme scheme) {
  fs::create_directories(directory);
  for (int r = 0; r < lf.grid_rows(); ++r) {
    for (int c = 0; c < lf.grid_cols(); ++c) {
      write_image(directory / (view_file_stem(scheme, {r, c}, lf.grid_cols()) + ".png"),
                  lf.view_at({r, c}));
    }
  }
}

} // namespace lfc
