#pragma once

#include <stdexcept>
#include <string>

namespace schmidt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A strategy gives up gracefully; run_game truncates the transcript.
struct StrategyAbort : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// The declared uniform-perfectness constant failed at a (center, radius) pair.
struct NoWitness : Error {
    using Error::Error;
};

// Constructive disjoint-ball search exhausted its candidates.
struct NotFound : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct RegimeUnsupported : Error {
    using Error::Error;
};

struct PrecisionExhausted : Error {
    using Error::Error;
};

struct NotPlayable : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

// target_chaser invoked with the target outside the opening ball.
struct TargetOutside : StrategyAbort {
    using StrategyAbort::StrategyAbort;
};

// banach_bob_avoid found both candidate balls blocked (impossible for beta < 1/3).
struct NoLegalCandidate : Error {
    using Error::Error;
};

} // namespace schmidt
