#pragma once

#include <stdexcept>

namespace paqs {

// Common base so callers can catch the whole family at an API boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State mass leaks past the basis cutoff (or a joint basis exceeds the cap).
struct TruncationOverflow : Error { using Error::Error; };
// Moment order beyond the supported factorial-weighted range.
struct OrderTooLarge : Error { using Error::Error; };
// A normal-moment ladder is missing entries required by the reordering sum.
struct MissingMoment : Error { using Error::Error; };
// Conditioning on an event of (numerically) zero probability.
struct ZeroProbability : Error { using Error::Error; };
// A witness that is a 0/0 form for the given state/order.
struct UndefinedWitness : Error { using Error::Error; };
// Parameter combination carved out of a closed form's domain.
struct DomainError : Error { using Error::Error; };
// Geometry that makes a printed formula singular (e.g. T = 0 prefactors).
struct DegenerateGeometry : Error { using Error::Error; };
// Out-of-range or inconsistent user input.
struct InvalidParameter : Error { using Error::Error; };
// Filesystem failures (unwritable output and the like).
struct IoError : Error { using Error::Error; };

} // namespace paqs
