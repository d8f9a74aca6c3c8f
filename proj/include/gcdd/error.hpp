#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcdd {

// Invalid arguments or configuration supplied by a caller. The CLI maps it
// to exit code 2.
class usage_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input data or a failed computation. The CLI maps it to exit
// code 1.
class data_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A pairwise evaluation failed while assembling a dissimilarity matrix.
class pair_error : public data_error {
public:
  pair_error(std::size_t i, std::size_t j, const std::string &what)
      : data_error("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                   "): " + what),
        first_(i), second_(j) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

private:
  std::size_t first_;
  std::size_t second_;
};

} // namespace gcdd
