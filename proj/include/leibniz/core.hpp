#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace leibniz {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Default tolerances shared across modules.
inline constexpr double kIdentityTol = 1e-9;
inline constexpr double kRankTol = 1e-9;
inline constexpr double kCriticalityTol = 1e-8;
inline constexpr double kTypeTol = 1e-6;
inline constexpr int kMaxDenominator = 100;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidBracket : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

class ZeroBracket : public Error {
 public:
  ZeroBracket() : Error("zero bracket has no projective class") {}
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotDerivation : public Error {
 public:
  using Error::Error;
};

class IrrationalType : public Error {
 public:
  using Error::Error;
};

class DegenerateType : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class UnknownEntry : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace leibniz
