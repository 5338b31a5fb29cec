#pragma once

#include <stdexcept>
#include <string>

namespace pfaffcheck {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two polynomials whose variable lists cannot be embedded into one another.
class context_mismatch : public error {
 public:
  using error::error;
};

/// Evaluation or substitution did not cover a variable that occurs.
class missing_variable : public error {
 public:
  explicit missing_variable(const std::string& name)
      : error("missing assignment for variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class dimension_mismatch : public error {
 public:
  using error::error;
};

class not_square : public dimension_mismatch {
 public:
  using dimension_mismatch::dimension_mismatch;
};

/// A structural constraint on an h-perp point was violated (skewness, trace, ...).
class constraint_violation : public error {
 public:
  constraint_violation(const std::string& invariant, const std::string& detail)
      : error("constraint violated [" + invariant + "]: " + detail), invariant_(invariant) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

class not_symmetric : public error {
 public:
  using error::error;
};

class singular_system : public error {
 public:
  using error::error;
};

class symbolic_input : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  using error::error;
};

/// The B-side determinant of a case is not the square of a polynomial.
class not_a_perfect_square : public error {
 public:
  not_a_perfect_square(const std::string& case_name, unsigned n, const std::string& witness)
      : error("determinant for " + case_name + " n=" + std::to_string(n) + " is not a perfect square: " + witness),
        case_name_(case_name),
        n_(n),
        witness_(witness) {}
  const std::string& case_name() const noexcept { return case_name_; }
  unsigned n() const noexcept { return n_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string case_name_;
  unsigned n_;
  std::string witness_;
};

/// Raised when an exact division that must succeed does not. Indicates a bug.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pfaffcheck
