// Exception types for the theta13 library. Each maps to one failure mode
// of a numerical contract; all derive from Theta13Error so callers can
// catch the whole family at once.

#ifndef THETA13_ERRORS_HPP
#define THETA13_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace theta13 {

struct Theta13Error : std::runtime_error {
    explicit Theta13Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPositiveDefinite : Theta13Error {
    explicit NotPositiveDefinite(const std::string& msg) : Theta13Error(msg) {}
};

struct NotHalfInteger : Theta13Error {
    explicit NotHalfInteger(const std::string& msg) : Theta13Error(msg) {}
};

struct EpsTooSmall : Theta13Error {
    explicit EpsTooSmall(const std::string& msg) : Theta13Error(msg) {}
};

struct EtaNotInKernel : Theta13Error {
    explicit EtaNotInKernel(const std::string& msg) : Theta13Error(msg) {}
};

struct NotLatticeVector : Theta13Error {
    explicit NotLatticeVector(const std::string& msg) : Theta13Error(msg) {}
};

struct RankAmbiguous : Theta13Error {
    explicit RankAmbiguous(const std::string& msg) : Theta13Error(msg) {}
};

struct ComponentResidualTooLarge : Theta13Error {
    explicit ComponentResidualTooLarge(const std::string& msg) : Theta13Error(msg) {}
};

// Carries the raw |theta_A| magnitudes at the sixteen 2-torsion points so a
// caller can still report them when the on/off classification is refused.
struct SeparationFailure : Theta13Error {
    std::vector<double> raw_magnitudes;
    SeparationFailure(const std::string& msg, std::vector<double> raw)
        : Theta13Error(msg), raw_magnitudes(std::move(raw)) {}
};

struct BoundaryZero : Theta13Error {
    explicit BoundaryZero(const std::string& msg) : Theta13Error(msg) {}
};

struct QuadratureStall : Theta13Error {
    explicit QuadratureStall(const std::string& msg) : Theta13Error(msg) {}
};

struct NewtonDivergence : Theta13Error {
    explicit NewtonDivergence(const std::string& msg) : Theta13Error(msg) {}
};

struct SamplingExhausted : Theta13Error {
    explicit SamplingExhausted(const std::string& msg) : Theta13Error(msg) {}
};

struct InvalidInput : Theta13Error {
    explicit InvalidInput(const std::string& msg) : Theta13Error(msg) {}
};

} // namespace theta13

#endif
