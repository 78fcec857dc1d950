#pragma once

#include <stdexcept>
#include <string>

namespace sfg {

// Error taxonomy shared by the whole toolkit. The CLI maps config_error to
// exit code 1 and every other failure to exit code 2.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to an operation (dimension mismatch, unknown vertex id,
// negative radius, ...).
class parameter_error : public error {
 public:
  using error::error;
};

// Requested sample would exceed the configured point budget.
class capacity_error : public error {
 public:
  using error::error;
};

// A statistical estimate cannot be formed from the given data.
class estimation_error : public error {
 public:
  using error::error;
};

// The requested quantity is almost surely infinite for these parameters.
class infinite_mean_error : public error {
 public:
  using error::error;
};

// Malformed experiment configuration or input file.
class config_error : public error {
 public:
  using error::error;
};

}  // namespace sfg
