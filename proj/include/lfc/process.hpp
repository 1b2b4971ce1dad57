#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace lfc {

/// Replaces every "{key}" in `tmpl` with its value. Unknown placeholders are
/// left untouched.
std::string expand_template(std::string tmpl, const std::map<std::string, std::string> &values);

struct ProcessResult {
  int exit_code{};
  std::string output; ///< combined stdout + stderr
};

/// Runs `command` through /bin/sh, capturing its output in `log_file`.
ProcessResult run_shell(const std::string &command, const std::filesystem::path &log_file);

/// Uniquely named scratch directory, removed with its contents on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &prefix,
                   const std::filesystem::path &root = std::filesystem::temp_directory_path());
  ~TempDir();

  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  [[nodiscard]] const std::filesystem::path &path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
};

} // namespace lfc
