#pragma once

#include <stdexcept>
#include <string>

namespace kklab {

/// Root of the library's exception hierarchy.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input could not be read or written.
struct io_error : error {
    using error::error;
};

/// Malformed input text (config files, CSV); carries line/key context in the message.
struct parse_error : error {
    using error::error;
};

/// Structurally valid input that violates a documented constraint.
struct validation_error : error {
    using error::error;
};

/// A numerical operation left its admissible regime.
struct numerical_error : error {
    using error::error;
};

/// Time step violated a stability bound (non-finite values appeared).
struct stability_violation : numerical_error {
    using numerical_error::numerical_error;
};

/// Evolved state left the admissible box.
struct state_space_exit : numerical_error {
    using numerical_error::numerical_error;
};

/// Adaptive quadrature could not reach the requested tolerance in budget.
struct quadrature_failure : numerical_error {
    using numerical_error::numerical_error;
};

/// Wave-curve construction not single-valued for the given flux law / states.
struct admissibility_violation : numerical_error {
    using numerical_error::numerical_error;
};

/// Root bracketing failed in a wave-fan inversion.
struct root_not_bracketed : numerical_error {
    using numerical_error::numerical_error;
};

/// Trajectory snapshots too sparse for a time-quadrature consumer.
struct insufficient_cadence : numerical_error {
    using numerical_error::numerical_error;
};

/// Two fields of different lengths where equal lengths are required.
struct length_mismatch : error {
    using error::error;
};

/// Process exit code for an escaped library error: 2 for numerical failures,
/// 3 for I/O failures, 1 for anything usage-shaped (parse, validation, ...).
inline int exit_code_for(const error& e) {
    if (dynamic_cast<const numerical_error*>(&e)) return 2;
    if (dynamic_cast<const io_error*>(&e)) return 3;
    return 1;
}

} // namespace kklab
