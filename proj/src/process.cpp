#include <lfc/process.hpp>

#include <lfc/error.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace lfc {
namespace fs = std::filesystem;

std::string expand_template(std::string tmpl, const std::map<std::string, std::string> &values) {
  for (const auto &[key, value] : values) {
    const auto placeholder = "{" + key + "}";
    for (auto pos = tmpl.find(placeholder); pos != std::string::npos;
         pos = tmpl.find(placeholder, pos + value.size())) {
      tmpl.replace(pos, placeholder.size(), value);
    }
  }
  return tmpl;
}

namespace {

std::string shell_quote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

} // namespace

ProcessResult run_shell(const std::string &command, const fs::path &log_file) {
  const auto wrapped = "(" + command + ") > " + shell_quote(log_file.string()) + " 2>&1";
  const int status = std::system(wrapped.c_str());
  ProcessResult result;
  if (status == -1) {
    result.exit_code = -1;
  } else if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  }
  std::ifstream in(log_file);
  std::ostringstream text;
  text << in.rdbuf();
  result.output = text.str();
  return result;
}

TempDir::TempDir(const std::string &prefix, const fs::path &root) {
  static std::atomic<unsigned> counter{0};
  static const auto salt = std::random_device{}();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = root / (prefix + "-" + std::to_string(::getpid()) + "-" +
                             std::to_string(salt) + "-" + std::to_string(counter++));
    if (fs::create_directories(candidate)) {
      path_ = std::move(candidate);
      return;
    }
  }
  throw Error("cannot create temporary directory under " + root.string());
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

} // namespace lfc
