#ifndef SMTKIT_TESTS_SUPPORT_H_
#define SMTKIT_TESTS_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace smtkit::testing {

// Small helpers around a seeded engine for the hand-rolled generators.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  double real() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  bool coin(double p = 0.5) { return real() < p; }

  // w0, w1, ... drawn uniformly from a vocabulary of `vocab` words.
  std::string word(std::size_t vocab, const std::string& prefix = "w") {
    return prefix + std::to_string(uniform(0, vocab - 1));
  }
  std::vector<std::string> sentence(std::size_t min_len, std::size_t max_len, std::size_t vocab,
                                    const std::string& prefix = "w") {
    std::vector<std::string> out(uniform(min_len, max_len));
    for (auto& w : out) w = word(vocab, prefix);
    return out;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("smtkit_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(file(name), std::ios::binary) << content;
    return file(name);
  }
  static std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace smtkit::testing

#endif  // SMTKIT_TESTS_SUPPORT_H_
