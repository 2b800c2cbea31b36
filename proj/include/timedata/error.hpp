#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace timedata {

/// Base of every exception thrown by the toolkit.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the operation's domain (negative progress, beta >= 1, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// Quantities with incompatible units met at an operation boundary.
class dimension_error : public error {
 public:
  using error::error;
};

/// A denominator that must be nonzero was zero.
class division_error : public error {
 public:
  using error::error;
};

/// Result would leave a representable range (e.g. a timestamp before midnight).
class range_error : public error {
 public:
  using error::error;
};

/// More items than slots to hold them.
class capacity_error : public error {
 public:
  using error::error;
};

/// A type invariant was broken by the inputs.
class invariant_error : public error {
 public:
  using error::error;
};

class file_error : public error {
 public:
  file_error(const std::string& path, const std::string& what)
      : error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class chart_error : public error {
 public:
  using error::error;
};

}  // namespace timedata
