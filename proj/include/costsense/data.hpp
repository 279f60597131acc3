#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "costsense/sparse_vector.hpp"

namespace costsense {

/// Any failure surfaced by the library (bad configuration, bad input file).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed LIBSVM input. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One labeled sample. Features are stored 0-based; on disk they are 1-based.
struct Example {
  int label = 1;  // +1 or -1
  SparseVector features;

  bool operator==(const Example&) const = default;
};

struct Dataset {
  std::vector<Example> examples;
  std::int32_t d = 0;
  std::size_t t_pos = 0;
  std::size_t t_neg = 0;

  std::size_t size() const { return examples.size(); }
};

/// Parses "<label> <index>:<value> ...". Text after '#' is ignored. Labels
/// "+1", "1" (any numeric token equal to 1) map to +1 and -1 maps to -1;
/// everything else is rejected.
Example parse_libsvm_line(std::string_view line, std::size_t line_no = 0);

/// Inverse of parse_libsvm_line, printing values in shortest round-trip form.
std::string to_libsvm_line(const Example& e);

/// Divides the features by their Euclidean norm. Throws Error on a zero vector.
Example normalize(const Example& e);

/// Reads, parses and normalizes every nonblank line. d is the largest index
/// in the file unless d_override is given (it must not be smaller).
Dataset load_dataset(const std::filesystem::path& path,
                     std::optional<std::int32_t> d_override = std::nullopt);

/// Builds a Dataset from already-parsed examples (no normalization).
Dataset make_dataset(std::vector<Example> examples,
                     std::optional<std::int32_t> d_override = std::nullopt);

/// Shuffles 0..n-1 with the seeded permutation, then deals contiguous chunks:
/// the first n % k folds get one extra element. Requires 2 <= k <= n.
std::vector<std::vector<std::size_t>> split_folds(std::size_t n, std::size_t k,
                                                  std::uint64_t seed);

inline std::vector<std::vector<std::size_t>> split_folds(const Dataset& ds, std::size_t k,
                                                         std::uint64_t seed) {
  return split_folds(ds.size(), k, seed);
}

}  // namespace costsense
