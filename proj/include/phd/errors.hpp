#pragma once

#include <stdexcept>
#include <string>

namespace phd {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument is outside the documented domain (n < 2, Im z <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A kernel was evaluated at its singular point (z = 0, z = zeta).
class SingularityError : public Error {
public:
    using Error::Error;
};

/// The singular part was requested on the shell |z+i| = |zeta+i|, where the
/// modified kernel falls back to the unmodified one.
class BranchError : public Error {
public:
    using Error::Error;
};

/// Exact arithmetic exceeded its configured size budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature ran out of budget before reaching its tolerance.
class ToleranceNotMet : public Error {
public:
    ToleranceNotMet(const std::string& what, double achieved, double requested)
        : Error(what + " (achieved error estimate " + std::to_string(achieved) +
                ", requested " + std::to_string(requested) + ")"),
          achieved_(achieved),
          requested_(requested) {}

    double achieved() const noexcept { return achieved_; }
    double requested() const noexcept { return requested_; }

private:
    double achieved_;
    double requested_;
};

/// Malformed problem file. Carries the 1-based line (0 when unknown) and the
/// offending field name.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, std::string field)
        : Error(format(what, line, field)), line_(line), field_(std::move(field)) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& what, int line, const std::string& field) {
        std::string msg = what;
        if (!field.empty()) msg += " [field '" + field + "']";
        if (line > 0) msg += " at line " + std::to_string(line);
        return msg;
    }

    int line_;
    std::string field_;
};

/// Well-formed input that violates a cross-field invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace phd
