#pragma once

#include <stdexcept>
#include <string>

namespace metaward {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands built over different variable lists.
class RingMismatchError : public Error {
public:
    explicit RingMismatchError(const std::string& what) : Error(what) {}
};

// Substituting 0 into a symbol that appears with negative exponent.
class PoleAtContractionError : public Error {
public:
    explicit PoleAtContractionError(const std::string& what) : Error(what) {}
};

// Derivative requested with respect to a non-differentiable symbol.
class NonDifferentiableError : public Error {
public:
    explicit NonDifferentiableError(const std::string& what) : Error(what) {}
};

// Numeric evaluation outside a family's domain; keeps the violated constraint.
class DomainError : public Error {
public:
    DomainError(const std::string& what, std::string constraint_)
        : Error(what), constraint(std::move(constraint_)) {}
    std::string constraint;
};

// Gradient requested on a non-smooth locus (r = 0 for the modulus families).
class NonDifferentiablePointError : public Error {
public:
    explicit NonDifferentiablePointError(const std::string& what) : Error(what) {}
};

// Generator index below -1, or a kind/family combination that does not exist.
class UnsupportedIndexError : public Error {
public:
    explicit UnsupportedIndexError(const std::string& what) : Error(what) {}
};

// Divergent closed form (nu_sum <= 1/2) or non-convergent quadrature.
class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& what) : Error(what) {}
};

// Incomplete variable assignment handed to eval.
class EvalError : public Error {
public:
    explicit EvalError(const std::string& what) : Error(what) {}
};

// Operator-expression syntax error with 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line_, int col_)
        : Error(what + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
    int line;
    int col;
};

} // namespace metaward
