#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mixpde {

/// Base for all library errors; kind() carries a stable machine-readable name.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class OutOfDomain : public Error {
public:
    explicit OutOfDomain(const std::string& w) : Error("OutOfDomain", w) {}
};

class BadParameter : public Error {
public:
    explicit BadParameter(const std::string& w) : Error("BadParameter", w) {}
};

class BadInterval : public Error {
public:
    explicit BadInterval(const std::string& w) : Error("BadInterval", w) {}
};

class SingularPoint : public Error {
public:
    explicit SingularPoint(const std::string& w) : Error("SingularPoint", w) {}
};

class QuadratureUnderResolved : public Error {
public:
    explicit QuadratureUnderResolved(const std::string& w) : Error("QuadratureUnderResolved", w) {}
};

class IntervalEscapesData : public Error {
public:
    explicit IntervalEscapesData(const std::string& w) : Error("IntervalEscapesData", w) {}
};

class SeriesDiverged : public Error {
public:
    explicit SeriesDiverged(const std::string& w) : Error("SeriesDiverged", w) {}
};

class StencilOutOfDomain : public Error {
public:
    explicit StencilOutOfDomain(const std::string& w) : Error("StencilOutOfDomain", w) {}
};

class NoConvergence : public Error {
public:
    explicit NoConvergence(const std::string& w) : Error("NoConvergence", w) {}
};

/// One violated parameter inequality, e.g. {"H", -1.0, "> 0"}.
struct ConstraintViolation {
    std::string parameter;
    double value = 0.0;
    std::string required;

    std::string to_string() const {
        return parameter + " = " + std::to_string(value) + " violates " + required;
    }
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<ConstraintViolation> v)
        : Error("ConstraintViolation", join(v)), violations_(std::move(v)) {}
    const std::vector<ConstraintViolation>& violations() const noexcept { return violations_; }

protected:
    ValidationError(std::string kind, std::vector<ConstraintViolation> v)
        : Error(std::move(kind), join(v)), violations_(std::move(v)) {}

private:
    static std::string join(const std::vector<ConstraintViolation>& v) {
        std::string s;
        for (const auto& c : v) {
            if (!s.empty()) s += "; ";
            s += c.to_string();
        }
        return s;
    }
    std::vector<ConstraintViolation> violations_;
};

class GoursatMismatch : public ValidationError {
public:
    explicit GoursatMismatch(std::vector<ConstraintViolation> v)
        : ValidationError("GoursatMismatch", std::move(v)) {}
};

}  // namespace mixpde
