#pragma once

#include <stdexcept>
#include <string>

namespace opspread {

/// Shape or size disagreement between operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input failed a Hermiticity tolerance.
struct HermiticityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Eigenvalue below the admissible floor.
struct PositivityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Trace differs from the required value beyond tolerance.
struct TraceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Matrix failed a unitarity tolerance.
struct UnitarityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Kraus set failed the completeness relation.
struct CompletenessError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Scalar argument outside its admissible range.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed config or serialized document; message carries line info.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace opspread
