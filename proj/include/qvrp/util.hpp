#pragma once

#include <charconv>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qvrp {

// Raised when a request exceeds a configured resource bound (qubit cap,
// enumeration limit). The CLI maps this to exit code 2.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised on malformed input files. The message carries file/position context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent child seed from one master seed and a stream tag.
// Every random consumer in the pipeline gets its own tag so a single --seed
// reproduces the whole run.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
  uint64_t s = master ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
  splitmix64(s);
  return splitmix64(s);
}

// Seeded generator with a platform-independent uniform double in [0,1).
// std::uniform_real_distribution is implementation-defined, so the mantissa
// is filled by hand.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// Bit i of the basis index is variable i, rendered as character i
// (left to right) of the bitstring.
inline std::string bits_to_string(uint64_t index, int n) {
  std::string s(static_cast<size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((index >> i) & 1ULL) s[static_cast<size_t>(i)] = '1';
  }
  return s;
}

inline std::vector<int> string_to_bits(const std::string& s) {
  std::vector<int> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring may contain only '0' and '1', got '" +
                                  std::string(1, c) + "'");
    }
    bits.push_back(c == '1' ? 1 : 0);
  }
  return bits;
}

inline uint64_t bits_to_index(const std::vector<int>& bits) {
  uint64_t idx = 0;
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) idx |= 1ULL << i;
  }
  return idx;
}

// Shortest round-trip decimal rendering, used by the CSV emitters.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace qvrp
