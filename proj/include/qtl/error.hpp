#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (formulas, teams, tables, covers, rationals).
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
  explicit ParseError(const std::string& msg) : Error(msg), position(0) {}
  std::size_t position;
};

/// Symbol-out-of-domain, domain mismatch, empty domain.
struct DomainError : Error {
  using Error::Error;
};

/// A component's formula mentions symbols outside its support, or a formula's
/// support family is not dominated by the team's support.
struct SupportError : Error {
  using Error::Error;
};

/// Restriction to a symbol set no row domain contains.
struct RestrictionError : Error {
  using Error::Error;
};

/// Cover not dominated by the team support, cover/table mismatch, or a
/// formula's variables fitting no (or conflicting) cover sets.
struct CoverError : Error {
  using Error::Error;
};

/// Probability table invariant violations (range, normalization, shape).
struct TableError : Error {
  using Error::Error;
};

/// Operation requires a multi-team (constant row domains).
struct NotMultiTeamError : Error {
  using Error::Error;
};

/// A configured enumeration / search cap was exceeded.
struct ResourceError : Error {
  using Error::Error;
};

/// A runtime invariant of a construction failed; indicates a bug or an
/// inconsistent witness, never bad user input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace qtl
