#pragma once

#include <stdexcept>
#include <string>

namespace charsum {

/// Base class for all charsum errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments or state that violates a documented precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

// finite_field
class NotPrime : public DomainError {
public:
    explicit NotPrime(long long p) : DomainError("not prime: " + std::to_string(p)) {}
};
class FieldTooLarge : public DomainError {
public:
    explicit FieldTooLarge(long long q) : DomainError("field size exceeds cap: " + std::to_string(q)) {}
};
class FieldTooSmall : public DomainError {
public:
    explicit FieldTooSmall(long long q)
        : DomainError("field too small (no nontrivial multiplicative characters): q = " + std::to_string(q)) {}
};
class DivisionByZero : public DomainError {
public:
    DivisionByZero() : DomainError("division by zero field element") {}
};

// characters
class EvalAtZero : public DomainError {
public:
    EvalAtZero() : DomainError("multiplicative character evaluated at zero") {}
};
class SizeOutOfRange : public DomainError {
public:
    explicit SizeOutOfRange(const std::string& what) : DomainError(what) {}
};

// dft_engine
class LengthMismatch : public DomainError {
public:
    explicit LengthMismatch(std::size_t a, std::size_t b)
        : DomainError("sequence lengths differ: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

// exp_sums
class ProductTrivial : public DomainError {
public:
    ProductTrivial()
        : DomainError("every character and their product must be nontrivial here") {}
};
class ZeroArgument : public DomainError {
public:
    ZeroArgument() : DomainError("sum argument must be a unit") {}
};
class PrecisionCapExceeded : public Error {
public:
    explicit PrecisionCapExceeded(const std::string& what) : Error(what) {}
};
class TrivialTwist : public DomainError {
public:
    TrivialTwist() : DomainError("twisted moment sum requires a nontrivial character") {}
};

// invariant_dims
class CongruenceViolated : public DomainError {
public:
    explicit CongruenceViolated(const std::string& what) : DomainError(what) {}
};
class Unclassified : public DomainError {
public:
    Unclassified(long long p, long long n)
        : DomainError("no monodromy group classified for p = " + std::to_string(p) +
                      ", n = " + std::to_string(n)) {}
};

// discrepancy
class NotOnCircle : public DomainError {
public:
    explicit NotOnCircle(double modulus)
        : DomainError("point modulus deviates from 1 beyond 1e-6: |z| = " + std::to_string(modulus)) {}
};
class TupleBudgetExceeded : public Error {
public:
    explicit TupleBudgetExceeded(unsigned long long count, unsigned long long cap)
        : Error("tuple enumeration needs " + std::to_string(count) + " tuples, cap is " +
                std::to_string(cap)) {}
};

// cli_report
class ConfigInvalid : public DomainError {
public:
    explicit ConfigInvalid(const std::string& what) : DomainError("config invalid: " + what) {}
};

} // namespace charsum
