#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "planecycles/plane.hpp"

namespace planecycles {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Canonical plane file:
///
///   plane <kind> order <q> points <P> lines <L>
///   classes <q+1>                 (affine only)
///   class <i>: <line ids>         (affine only, q+1 rows)
///   line <id>: <sorted point ids>
///
/// LF line endings, single spaces, no comments, no trailing whitespace.
std::string canonical_text(const Plane& plane);

/// Parses plane text without checking the plane axioms. Comments start with
/// '#', blank lines are ignored.
Plane parse_plane(std::string_view text);

/// Parses and validates against the declared kind (throws AxiomViolation).
Plane read_plane(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

Plane load_plane(const std::filesystem::path& path);
void save_plane(const Plane& plane, const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

}  // namespace planecycles
