#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace omega {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
    std::size_t line;
    std::size_t column;
};

/// Well-formed input whose meaning is unsupported or inconsistent.
struct SemanticError : Error {
    enum class Kind {
        UndeclaredState,
        NonBuchiAcceptance,
        StateBasedAcceptance,
        UnsupportedLabel,
        UnknownName,
        UnknownField,
        AlphabetMismatch,
        IncompleteAutomaton,
        SubStochasticPair,
        InvalidArgument,
    };
    SemanticError(Kind kind, const std::string& what) : Error(what), kind(kind) {}
    Kind kind;
};

struct ValidationError : Error {
    explicit ValidationError(std::vector<std::string> diagnostics);
    std::vector<std::string> diagnostics;
};

struct ConvergenceError : Error {
    ConvergenceError(double residual, std::size_t iterations);
    double residual;
    std::size_t iterations;
};

}  // namespace omega
