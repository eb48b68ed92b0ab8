#pragma once

#include <stdexcept>
#include <string>

namespace lsa {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by the zero scalar") {}
};

struct DegreeOverflow : Error {
  explicit DegreeOverflow(int deg, int limit)
      : Error("intermediate polynomial degree " + std::to_string(deg) +
              " exceeds limit " + std::to_string(limit)) {}
};

struct UnknownVariable : Error {
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'") {}
};

struct ParseError : Error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : Error("parse error at position " + std::to_string(pos) + ": " + msg),
        position(pos) {}
};

struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& msg) : Error("shape mismatch: " + msg) {}
};

struct DegreeError : Error {
  explicit DegreeError(const std::string& msg) : Error(msg) {}
};

struct NotAlternating : Error {
  explicit NotAlternating(const std::string& msg) : Error("not alternating: " + msg) {}
};

struct InvalidStructure : Error {
  explicit InvalidStructure(const std::string& msg) : Error("invalid structure: " + msg) {}
};

struct Degenerate : Error {
  explicit Degenerate(const std::string& msg) : Error("degenerate: " + msg) {}
};

struct NotCocycle : Error {
  explicit NotCocycle(const std::string& msg) : Error("not a 2-cocycle: " + msg) {}
};

struct SEquationFailed : Error {
  std::string witness;
  explicit SEquationFailed(const std::string& w)
      : Error("S-equation [[H,H]] = 0 fails at " + w), witness(w) {}
};

struct NotFlat : Error {
  explicit NotFlat(const std::string& msg) : Error("connection not flat: " + msg) {}
};

struct NotTorsionFree : Error {
  explicit NotTorsionFree(const std::string& msg)
      : Error("connection not torsion-free: " + msg) {}
};

struct RankDeficient : Error {
  explicit RankDeficient(const std::string& msg) : Error("rank deficient: " + msg) {}
};

struct InputError : Error {
  explicit InputError(const std::string& msg) : Error(msg) {}
};

}  // namespace lsa
