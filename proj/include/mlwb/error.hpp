#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlwb {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Lexer/parser failure; pos is a 0-based character offset into the input.
struct ParseError : Error {
  ParseError(std::size_t pos, const std::string& what)
      : Error("parse error at position " + std::to_string(pos) + ": " + what),
        pos(pos) {}
  std::size_t pos;
};

// A combinatorial guard tripped (frame enumeration or valuation sweep).
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

}  // namespace mlwb
