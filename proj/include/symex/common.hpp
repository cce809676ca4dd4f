#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace symex {

// Raised when an input document, config or artifact violates its contract.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// UTF-8. All character offsets in the data model are unicode code points,
// never bytes, so umlauts stay unambiguous across encodings.

bool utf8_valid(const std::string& s);
// Throws ValidationError on malformed input.
std::u32string utf8_decode(const std::string& s);
std::string utf8_encode(const std::u32string& s);
std::size_t utf8_length(const std::string& s);
// Substring by code-point range [start, end).
std::string utf8_substr(const std::string& s, std::size_t start, std::size_t end);

// ---------------------------------------------------------------------------
// Deterministic RNG. Distributions are hand-rolled on top of mt19937_64 so a
// seed yields the same stream on every platform and standard library.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  std::size_t uniform_index(std::size_t n);  // [0, n)
  double uniform01();                        // [0, 1)
  double normal(double mean, double stddev);
  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

  // Stable sub-stream seed for (seed, salt), e.g. per-epoch sampling seeds.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const std::string& data);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::string iso8601_now();

}  // namespace symex
