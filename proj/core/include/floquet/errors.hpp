#pragma once

#include <stdexcept>
#include <string>

namespace floquet {

// Base for all toolkit failures so callers can distinguish "the numbers
// violated a contract" from configuration mistakes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad run description (file missing, malformed fields, inconsistent sizes).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// A declared coefficient class is violated by the actual coefficients.
class ClassViolation : public Error {
 public:
  explicit ClassViolation(const std::string& what) : Error(what) {}
};

// Requested time step exceeds the phase-resolution safety bound.
class StepSizeTooLarge : public Error {
 public:
  explicit StepSizeTooLarge(const std::string& what) : Error(what) {}
};

// Matrix handed to exp_skew is not anti-selfadjoint within tolerance.
class NotSkew : public Error {
 public:
  explicit NotSkew(const std::string& what) : Error(what) {}
};

// Matrix expected to be unitary fails its defect check.
class NotUnitary : public Error {
 public:
  explicit NotUnitary(const std::string& what) : Error(what) {}
};

// Gram system of the middle-block columns is numerically singular.
class SingularGram : public Error {
 public:
  explicit SingularGram(const std::string& what) : Error(what) {}
};

// Middle block does not fit the truncation (N > K/3).
class BlockTooLarge : public Error {
 public:
  explicit BlockTooLarge(const std::string& what) : Error(what) {}
};

// Middle block too small for the orthogonalization envelopes to close.
class NTooSmall : public Error {
 public:
  explicit NTooSmall(const std::string& what) : Error(what) {}
};

// Bound-check region selects no entries.
class EmptyRegion : public Error {
 public:
  explicit EmptyRegion(const std::string& what) : Error(what) {}
};

// Empirical convolution constant keeps drifting when the range doubles.
class DivergentTail : public Error {
 public:
  explicit DivergentTail(const std::string& what) : Error(what) {}
};

}  // namespace floquet
