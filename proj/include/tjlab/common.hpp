#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tjlab {

using cplx = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr cplx kI{0.0, 1.0};

inline constexpr const char* kVersion = "0.4.1";

/// Invalid input: out-of-domain parameters, poles of a map, bad sizes.
class DomainError : public std::invalid_argument {
   public:
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
   public:
    ConvergenceError(const std::string& msg, double final_residual)
        : std::runtime_error(msg), residual_(final_residual) {}
    double residual() const noexcept { return residual_; }

   private:
    double residual_;
};

/// Result inconsistent with an internal invariant (e.g. a complex energy).
class ConsistencyError : public std::runtime_error {
   public:
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
   public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

}  // namespace tjlab
