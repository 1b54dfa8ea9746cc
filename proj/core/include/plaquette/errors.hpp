#pragma once

#include <stdexcept>
#include <string>

namespace plaquette {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration / precondition violations (bad parameters, unnormalized state).
struct InvalidParams : Error {
    using Error::Error;
};

// analytic_state / analytic_center called with U != 0.
struct NonlinearUnsupported : Error {
    using Error::Error;
};

// A frequency ratio is undefined (beta = 0).
struct DegenerateFrequency : Error {
    using Error::Error;
};

// orbit_period asked for a quasi-periodic classification.
struct NotPeriodic : Error {
    using Error::Error;
};

// Conservation diagnostics exceeded the configured tolerance (dt too large).
struct ToleranceExceeded : Error {
    using Error::Error;
};

// Amplitudes left the finite range during integration.
struct NonFinite : Error {
    using Error::Error;
};

// reduce() on a state whose upper or lower site pair is unoccupied.
struct EmptyPair : Error {
    using Error::Error;
};

// critical_interaction() at zero initial imbalance (formula diverges).
struct ZeroImbalance : Error {
    using Error::Error;
};

// Time averaging over an empty or zero-length window.
struct EmptyWindow : Error {
    using Error::Error;
};

}  // namespace plaquette
