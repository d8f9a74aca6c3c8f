#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "gcdd/byte_sequence.hpp"
#include "gcdd/random.hpp"

namespace testing_support {

inline gcdd::ByteSequence random_bytes(gcdd::Rng &rng, std::size_t n, unsigned alphabet = 256) {
  std::vector<std::uint8_t> b(n);
  for (auto &v : b)
    v = static_cast<std::uint8_t>(rng.integer(0, alphabet - 1));
  return gcdd::ByteSequence(std::move(b));
}

inline gcdd::ByteSequence repeat(std::string_view unit, std::size_t n) {
  std::vector<std::uint8_t> b;
  for (std::size_t i = 0; i < n; ++i)
    b.push_back(static_cast<std::uint8_t>(unit[i % unit.size()]));
  return gcdd::ByteSequence(std::move(b));
}

inline std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::filesystem::path &p, const std::string &text) {
  std::ofstream(p, std::ios::binary) << text;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("gcdd-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::string operator/(const std::string &name) const { return (path_ / name).string(); }

private:
  std::filesystem::path path_;
};

} // namespace testing_support
