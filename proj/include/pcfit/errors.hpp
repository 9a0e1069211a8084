#pragma once

#include <stdexcept>
#include <string>

namespace pcfit {

/// Base class for all pcfit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// series
struct NonPositiveLevel : Error { using Error::Error; };
struct TooShort : Error { using Error::Error; };
struct YearOutOfRange : Error { using Error::Error; };
struct BadWindow : Error { using Error::Error; };
struct InsufficientOverlap : Error { using Error::Error; };
struct ZeroVariance : Error { using Error::Error; };
struct UnitMismatch : Error { using Error::Error; };

// ingest
struct ParseError : Error { using Error::Error; };
struct DuplicateSeriesId : Error { using Error::Error; };
struct UnknownUnit : Error { using Error::Error; };
struct MissingSeries : Error { using Error::Error; };
struct NonConsecutiveYears : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct BadSpec : Error { using Error::Error; };

// segfit
struct DegeneratePredictor : Error { using Error::Error; };
struct WindowTooShort : Error { using Error::Error; };
struct EmptyGrid : Error { using Error::Error; };
struct CollinearPredictors : Error { using Error::Error; };

// econtests
struct RangeMismatch : Error { using Error::Error; };
struct SingularMoments : Error { using Error::Error; };

// forecast
struct MissingPredictorYears : Error { using Error::Error; };

}  // namespace pcfit
