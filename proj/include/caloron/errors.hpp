#pragma once

#include <stdexcept>
#include <string>

namespace caloron {

enum class ErrorKind {
  invalid_input,
  unsupported,
  singular_point,
  not_in_alcove,
  gluing_infeasible,
  resonance,
  abelianization,
  numerical
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::singular_point: return "singular-point";
    case ErrorKind::not_in_alcove: return "not-in-alcove";
    case ErrorKind::gluing_infeasible: return "gluing-infeasible";
    case ErrorKind::resonance: return "resonance";
    case ErrorKind::abelianization: return "abelianization-failure";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace caloron
