#pragma once

#include <stdexcept>
#include <string>

namespace raregt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Profile / measure construction.
class EmptyProfile : public Error { using Error::Error; };
class NormalizationError : public Error { using Error::Error; };
class GranularityError : public Error { using Error::Error; };
class SupportMismatch : public Error { using Error::Error; };

// Sampling.
class LengthMismatch : public Error { using Error::Error; };
class AlphabetMismatch : public Error { using Error::Error; };

// Estimators.
class EmptyClass : public Error { using Error::Error; };
class Unsupported : public Error { using Error::Error; };
class OrderOverflow : public Error { using Error::Error; };

// Oracle.
class InternalMismatch : public Error { using Error::Error; };

// Configuration files and experiment specs.
class ConfigError : public Error { using Error::Error; };

}  // namespace raregt
