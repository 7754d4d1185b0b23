#pragma once

#include <stdexcept>
#include <string>

namespace morse {

/// Argument outside the mathematical domain of an operation (log of a
/// non-positive number, integrand with a non-positive radicand, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Index outside what a table or series was built for.
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// An exact identity that must hold by construction did not.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Request above an enumeration budget.
class BudgetError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A (tree, permutation) pair that no Morse tree encodes to.
class NotInImageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Text that does not follow one of the serialization formats.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace morse
