#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crgeom {

enum class Errc {
  division_by_zero,
  dimension_mismatch,
  parse_error,
  domain_error,
  non_real,
  degenerate,
  non_polynomial_dual_frame,
  inadmissible_coframe,
  degree_bound_exceeded,
  convention_violation,
  torsion_unsupported,
  unexpected_curvature,
  adaptation_failed,
  precondition,
  numeric_breach,
  pole_crossed,
  step_too_large,
  internal,
};

const char* errc_name(Errc code);

/// Base exception for everything the library reports.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Lexical or syntax error; offset is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& msg)
      : Error(Errc::parse_error, msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace crgeom
