#pragma once

#include <stdexcept>
#include <string>

namespace ingham {

// Failure classes. The CLI maps each one onto a fixed exit status.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a table's limit or the configured memory guard.
class capacity_error : public error {
public:
  using error::error;
};

// Argument outside the documented domain of an operation.
class argument_error : public error {
public:
  using error::error;
};

// Euler factor 1 - f(p) p^-sigma vanished.
class singular_factor_error : public error {
public:
  using error::error;
};

// Quadrature or series did not reach the requested tolerance.
class convergence_error : public error {
public:
  using error::error;
};

// Malformed spec, coefficient file, grid or report.
class parse_error : public error {
public:
  using error::error;
};

// File could not be read or written.
class io_error : public error {
public:
  using error::error;
};

namespace detail {

template <class Error = argument_error>
inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(what);
}

}  // namespace detail
}  // namespace ingham
