#pragma once

#include <stdexcept>
#include <string>

namespace vfde {

/// Newton hit its iteration cap or produced a non-finite iterate; cut dt and retry.
class NewtonDivergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A converged state fell below zero beyond the clamp tolerance.
class NonphysicalState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested radius lies outside the computational domain.
class DomainExceeded : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Bracket expansion on the shooting parameter failed.
class NoBracket : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The shooting map A(λ) was observed to be non-monotone on the bracket.
class NonMonotoneShooting : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The profile's far-field amplitude cannot be read from this curve.
class Undershoot : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vfde
