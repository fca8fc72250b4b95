#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "trendrec/model.hpp"

namespace testutil {

namespace fs = std::filesystem;

// Scoped temporary directory under the system temp root.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (fs::temp_directory_path() / "trendrec-test-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data())) throw std::runtime_error("mkdtemp failed");
    path_ = buf.data();
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

inline std::string hex_address(char fill) {
  return "0x" + std::string(40, fill);
}

inline trendrec::Trend make_trend(std::string source, std::string name,
                                  std::optional<std::int64_t> volume,
                                  trendrec::UtcTime captured_at,
                                  std::vector<std::string> sample_texts = {}) {
  trendrec::Trend t;
  t.source = std::move(source);
  t.name_raw = name;
  t.name_norm = trendrec::normalize_trend_name(name);
  t.volume = volume;
  t.captured_at = captured_at;
  t.location = "UK";
  t.sample_texts = std::move(sample_texts);
  return t;
}

inline void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testutil
