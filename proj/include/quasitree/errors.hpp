#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quasitree {

enum class errc {
  malformed_token,
  duplicate_end,
  missing_end,
  index_out_of_range,
  needs_i_less_than_j,
  size_cap_exceeded,
  overflow,
  singular_pivot_block,
  edge_not_present,
  malformed_ribbon_graph,
  not_connected,
  not_a_quasi_tree,
  improper_system,
  subset_out_of_ground,
  internal_error,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Carries the byte offset of the offending token so callers can print a
// caret diagnostic against the original input.
class ParseError : public Error {
 public:
  ParseError(errc code, const std::string& what, std::size_t offset)
      : Error(code, what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// A claimed spanning quasi-tree failed the boundary-component check.
class NotAQuasiTreeError : public Error {
 public:
  NotAQuasiTreeError(const std::string& what, int boundary_components)
      : Error(errc::not_a_quasi_tree, what), boundary_components_(boundary_components) {}
  int boundary_components() const noexcept { return boundary_components_; }

 private:
  int boundary_components_;
};

// Process exit codes used by the CLI, one per error class.
inline int exit_code_for(errc code) {
  switch (code) {
    case errc::malformed_token:
    case errc::duplicate_end:
    case errc::missing_end:
    case errc::malformed_ribbon_graph:
      return 2;
    case errc::size_cap_exceeded:
      return 3;
    case errc::overflow:
      return 4;
    case errc::not_connected:
      return 5;
    case errc::not_a_quasi_tree:
      return 6;
    default:
      return 1;
  }
}

}  // namespace quasitree
