#pragma once

#include <stdexcept>
#include <string>

namespace hanabench {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- engine ---
struct InvalidPlayerCount : Error {
    using Error::Error;
};
struct NotYourTurn : Error {
    using Error::Error;
};
struct GameOver : Error {
    using Error::Error;
};
struct IllegalAction : Error {
    using Error::Error;  // message names the violated rule
};

// --- reply parsing ---
struct ParseError : Error {
    using Error::Error;
};
struct NoJsonFound : ParseError {
    using ParseError::ParseError;
};
struct SchemaMismatch : ParseError {
    using ParseError::ParseError;
};
struct ValueOutOfRange : ParseError {
    using ParseError::ParseError;
};

// --- llm client ---
struct ProviderError : Error {
    using Error::Error;
};
struct AuthError : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};

// --- judge ---
struct JudgeParseFailure : Error {
    using Error::Error;
};

// --- analysis ---
struct DegenerateVariance : Error {
    using Error::Error;
};

// --- orchestrator ---
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace hanabench
