#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xg {

/// A symbol outside the declared alphabet.
class AlphabetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax error in presentation or word text; `position` is a byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A search or enumeration ran out of its configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coset enumeration exceeded its coset budget.
class CosetOverflow : public BudgetError {
 public:
  explicit CosetOverflow(std::size_t budget)
      : BudgetError("coset enumeration exceeded " + std::to_string(budget) +
                    " cosets; increase budget or shrink instance"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// An element-set algorithm was asked to materialise a group above the guard.
class GuardError : public BudgetError {
 public:
  GuardError(const std::string& what, std::size_t guard)
      : BudgetError(what + " (order guard " + std::to_string(guard) + ")"),
        guard_(guard) {}
  std::size_t guard() const noexcept { return guard_; }

 private:
  std::size_t guard_;
};

/// A machine-checked structural identity failed. Indicates a bug.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace xg
