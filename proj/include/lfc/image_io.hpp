#pragma once

#include <lfc/lightfield.hpp>

#include <filesystem>
#include <string_view>

namespace lfc {

/// Reads an 8-bit PNG or binary PPM (P6). Gray and palette PNGs are expanded
/// to RGB, alpha is dropped; 16-bit images are rejected.
RgbView read_image(const std::filesystem::path &path);

/// Writes PNG or PPM depending on the file extension.
void write_image(const std::filesystem::path &path, const RgbView &view);

/// How view files inside a dataset directory are named.
enum class NamingScheme {
  Linear,   ///< input_Cam{NNN}, row-major linear index, zero-padded to 3 digits
  Explicit, ///< {row}_{col}
};

NamingScheme parse_naming_scheme(std::string_view name);
std::string_view to_string(NamingScheme scheme);

/// File stem (no extension) for a view under the given scheme.
std::string view_file_stem(NamingScheme scheme, ViewIndex idx, int grid_cols);

/// Loads a dense light field from a directory of .png/.ppm files.
LightField load_lightfield(const std::filesystem::path &directory, NamingScheme scheme,
                           int grid_rows, int grid_cols);

/// Writes every view as PNG using the given naming scheme.
void save_lightfield(const std::filesystem::path &directory, const LightField &lf,
                     NamingScheme scheme = NamingScheme::Explicit);

} // namespace lfc
