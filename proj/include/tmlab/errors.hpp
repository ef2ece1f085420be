#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tmlab {

// Base class for domain errors. Every subclass carries a stable message
// prefix so CLI diagnostics stay greppable.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInputSymbol : public Error {
 public:
  InvalidInputSymbol(std::uint32_t symbol, std::uint32_t input_symbols)
      : Error("invalid input symbol: " + std::to_string(symbol) + " (input alphabet has " +
              std::to_string(input_symbols) + " symbols)") {}
};

class AlreadyHalted : public Error {
 public:
  AlreadyHalted() : Error("already halted: configuration is in a final state") {}
};

class IllegalCharacter : public Error {
 public:
  IllegalCharacter(char c, std::size_t position)
      : Error(std::string("illegal character: '") + c + "' at position " +
              std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class IllegalDigit : public Error {
 public:
  IllegalDigit(char c, std::size_t position)
      : Error(std::string("illegal digit: '") + c + "' at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class RankOutOfRange : public Error {
 public:
  explicit RankOutOfRange(std::uint64_t rank)
      : Error("rank out of range: input rank " + std::to_string(rank) +
              " but the input alphabet is empty") {}
};

class InsufficientDigits : public Error {
 public:
  explicit InsufficientDigits(std::string detail)
      : Error("insufficient digits: " + std::move(detail)) {}
};

class NotHalting : public Error {
 public:
  explicit NotHalting(std::uint64_t input)
      : Error("not halting: input " + std::to_string(input) + " did not halt within fuel"),
        input_(input) {}
  std::uint64_t input() const { return input_; }

 private:
  std::uint64_t input_;
};

class UnknownExperiment : public Error {
 public:
  explicit UnknownExperiment(const std::string& id) : Error("unknown experiment: " + id) {}
};

}  // namespace tmlab
