#pragma once

#include <stdexcept>
#include <string>

namespace surfpat {

// Error categories. The C API maps these one-to-one onto sp_status codes.
enum class ErrorKind {
  invalid_argument,
  parse,
  topology,
  degenerate_geometry,
  dimension_mismatch,
  non_convergence,
  numerical,
  domain,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) throw Error(kind, msg);
}

}  // namespace surfpat
