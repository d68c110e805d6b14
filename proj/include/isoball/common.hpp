#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace isoball {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Thrown when a numeric precondition fails inside an operation; carries the
// name of the rejecting operation so callers (and the CLI) can report it.
class NumericRejection : public std::runtime_error {
public:
    NumericRejection(std::string op, const std::string& what)
        : std::runtime_error(op + ": " + what), op_(std::move(op)) {}

    const std::string& op() const { return op_; }

private:
    std::string op_;
};

inline double sqr(double x) { return x * x; }
inline double abs2(cplx z) { return std::norm(z); }

}  // namespace isoball
