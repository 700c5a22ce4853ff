#pragma once

#include <stdexcept>

namespace dbas {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// core_seq
struct RowNotOneHot : Error { using Error::Error; };
struct LengthNotMultipleOfThree : Error { using Error::Error; };
struct InternalStop : Error { using Error::Error; };

// oracles
struct ShapeMismatch : Error { using Error::Error; };
struct NegativeWidth : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };

// genmodels
struct AllWeightsZero : Error { using Error::Error; };
struct RaggedLengths : Error { using Error::Error; };

// engine
struct EmptyScores : Error { using Error::Error; };
struct DegenerateWeights : Error { using Error::Error; };
struct BudgetTooSmall : Error { using Error::Error; };
struct SpaceTooLarge : Error { using Error::Error; };

// baselines / bench
struct EmptyTrainingSet : Error { using Error::Error; };
struct InsufficientPopulation : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };

// anything that is a caller bug rather than a modeled failure
struct InvalidArgument : Error { using Error::Error; };

// file / config problems surfaced by the CLI
struct IoError : Error { using Error::Error; };

}  // namespace dbas
