#pragma once

#include <stdexcept>
#include <string>

namespace coord {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
  std::size_t pos;
  ParseError(std::size_t p, const std::string& what)
      : Error("parse error at " + std::to_string(p) + ": " + what), pos(p) {}
};

struct ValidationError : Error {
  using Error::Error;
};

struct EmptyComplementError : Error {
  using Error::Error;
};

struct FinalStageError : Error {
  using Error::Error;
};

struct UnsupportedPlayerCountError : Error {
  using Error::Error;
};

struct NotChoiceMatchingError : Error {
  using Error::Error;
};

struct LimitExceededError : Error {
  using Error::Error;
};

struct NotSimilarityInvariantError : Error {
  using Error::Error;
};

struct SingularSystemError : Error {
  using Error::Error;
};

struct ChainNotClosedError : Error {
  using Error::Error;
};

struct TableMissError : Error {
  using Error::Error;
};

struct NoConvergenceError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

}  // namespace coord
