#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace zetaspec {

// Every failure carries a stable name so callers (and the CLI) can report the
// originating condition without parsing message text.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

struct SyntaxError : Error {
    explicit SyntaxError(const std::string& w) : Error("SyntaxError", w) {}
};
struct NegativeExponent : Error {
    explicit NegativeExponent(const std::string& w) : Error("NegativeExponent", w) {}
};
struct VarOutOfRange : Error {
    explicit VarOutOfRange(const std::string& w) : Error("VarOutOfRange", w) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& w) : Error("DimensionMismatch", w) {}
};
struct ConstantPolynomial : Error {
    explicit ConstantPolynomial(const std::string& w) : Error("ConstantPolynomial", w) {}
};
struct ZeroPoint : Error {
    explicit ZeroPoint(const std::string& w) : Error("ZeroPoint", w) {}
};
struct TopVanishes : Error {
    explicit TopVanishes(const std::string& w) : Error("TopVanishes", w) {}
};
struct MahlerViolation : Error {
    explicit MahlerViolation(const std::string& w) : Error("MahlerViolation", w) {}
};
struct PoleAt : Error {
    PoleAt(double s0_value, const std::string& s0_repr)
        : Error("PoleAt", "pole candidate at s = " + s0_repr), s0(s0_value) {}
    double s0;
};
struct NotACandidate : Error {
    explicit NotACandidate(const std::string& w) : Error("NotACandidate", w) {}
};
struct NotConvergent : Error {
    explicit NotConvergent(const std::string& w) : Error("NotConvergent", w) {}
};
struct InterpolationIllConditioned : Error {
    explicit InterpolationIllConditioned(const std::string& w)
        : Error("InterpolationIllConditioned", w) {}
};

}  // namespace zetaspec
