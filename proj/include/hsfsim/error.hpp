// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace hsfsim {

/// Base for every error raised by the library. The CLI maps subclasses of
/// this type to exit code 2 and InvariantError to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate geometry: zero-area panels, zero-length directions.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Coefficient lookup outside the tabulated coverage (no extrapolation).
class TableRangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed coefficient table asset.
class TableFormatError : public Error {
 public:
  using Error::Error;
};

class SupercellError : public Error {
 public:
  enum class Kind { Specular, Evanescent, OrderSign };

  SupercellError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Scene validation/ingestion failure. `where()` is a JSON pointer into the
/// offending document (or a tile id list for tessellation problems).
class SceneError : public Error {
 public:
  enum class Kind { Schema, Units, Tessellation, DuplicateId, OutOfRoom, UnknownTile, Io };

  SceneError(Kind kind, std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), kind_(kind), where_(std::move(where)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& where() const noexcept { return where_; }

 private:
  Kind kind_;
  std::string where_;
};

/// Internal consistency check failed; indicates a bug rather than bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsfsim
