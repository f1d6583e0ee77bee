#pragma once

#include <stdexcept>
#include <string>

namespace lawpca {

/// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a valid result. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double off_diagonal_norm, int sweeps)
      : NumericalError(what), off_diagonal_norm_(off_diagonal_norm), sweeps_(sweeps) {}

  double off_diagonal_norm() const noexcept { return off_diagonal_norm_; }
  int sweeps() const noexcept { return sweeps_; }

 private:
  double off_diagonal_norm_;
  int sweeps_;
};

}  // namespace lawpca
