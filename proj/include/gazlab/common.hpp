#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gazlab {

// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: config fields, unknown names, out-of-range arguments.
// The CLI maps this to exit code 2; every other Error maps to 3.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed content inside an otherwise readable file.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// UTF-8 <-> Unicode scalar values. Decoding rejects invalid sequences.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view text);
std::string utf8_encode(char32_t c);

// Stable 64-bit FNV-1a, independent of platform and std::hash.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64(std::u32string_view text);  // hashes the UTF-8 encoding

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt);

// mt19937_64 output is fully specified by the standard; the std distributions
// are not, so the mappings below are done by hand.
double uniform_unit(std::mt19937_64& rng);                          // [0, 1)
double uniform_in(std::mt19937_64& rng, double lo, double hi);      // [lo, hi)
std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound);  // [0, bound)

// Shortest round-trip decimal rendering of a double (for CSV output).
std::string format_double(double v);

}  // namespace gazlab
