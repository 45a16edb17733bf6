#pragma once

#include <stdexcept>
#include <string>

namespace qgeom {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(long expected, long actual)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(actual)) {}
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// The canonical geodesic phase is undefined for orthogonal endpoints.
class OrthogonalEndpoints : public Error {
public:
    using Error::Error;
};

/// Energy variance below the stationarity threshold; dimensionless
/// coefficients are 0/0.
class StationaryState : public Error {
public:
    using Error::Error;
};

class DegeneratePlane : public Error {
public:
    using Error::Error;
};

class OrthogonalStates : public Error {
public:
    using Error::Error;
};

class ZeroProjection : public Error {
public:
    using Error::Error;
};

class NonPositiveValues : public Error {
public:
    using Error::Error;
};

/// Too few curve points above the noise floor to fit a scaling law.
class FlatCurve : public Error {
public:
    using Error::Error;
};

} // namespace qgeom
