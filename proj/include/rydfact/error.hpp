#pragma once

#include <stdexcept>
#include <string>

namespace rydfact {

enum class ErrorKind {
  invalid_instance,
  width_error,
  invalid_argument,
  fully_dead_diagram,
  too_many_entry_nodes,
  too_large,
  clause_too_large,
  odd_wire_length,
  missing_edge,
  out_of_range,
  length_mismatch,
  parse_error,
  io_error,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind), detail_(what) {}
  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace rydfact
