#ifndef PCLAB_ERRORS_HPP
#define PCLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pclab {

class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

   private:
    std::string kind_;
};

class DivisionByZeroError : public Error {
   public:
    explicit DivisionByZeroError(const std::string& operand)
        : Error("division_by_zero", "division by zero (dividend " + operand + ")") {}
};

class ConductorOverflowError : public Error {
   public:
    ConductorOverflowError(unsigned long conductor, unsigned long phi, unsigned long cap)
        : Error("conductor_overflow",
                "phi(" + std::to_string(conductor) + ") = " + std::to_string(phi) +
                    " exceeds the configured degree cap " + std::to_string(cap)) {}
};

class ArityError : public Error {
   public:
    explicit ArityError(const std::string& what) : Error("arity_mismatch", what) {}
};

class InsufficientDataError : public Error {
   public:
    explicit InsufficientDataError(const std::string& what) : Error("insufficient_data", what) {}
};

class LengthError : public Error {
   public:
    explicit LengthError(const std::string& what) : Error("length", what) {}
};

class UnsupportedFieldError : public Error {
   public:
    explicit UnsupportedFieldError(const std::string& what) : Error("unsupported_field", what) {}
};

class InvalidDenominatorError : public Error {
   public:
    explicit InvalidDenominatorError(const std::string& what)
        : Error("invalid_denominator", what) {}
};

class VerificationError : public Error {
   public:
    explicit VerificationError(const std::string& what) : Error("verification_failure", what) {}
};

class ParseError : public Error {
   public:
    ParseError(int line, int column, const std::string& message, std::string expected = "")
        : Error("syntax",
                std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                    (expected.empty() ? "" : " (expected " + expected + ")")),
          line_(line),
          column_(column),
          expected_(std::move(expected)) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& expected() const noexcept { return expected_; }

   private:
    int line_;
    int column_;
    std::string expected_;
};

class SemanticError : public Error {
   public:
    explicit SemanticError(const std::string& what) : Error("semantic", what) {}
};

}  // namespace pclab

#endif
