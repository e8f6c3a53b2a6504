#pragma once

#include <stdexcept>
#include <string>

namespace pctlab {

/// Raised when caller-supplied input is malformed or outside an operation's
/// domain: unparsable text, ill-formed files, arguments violating a
/// documented precondition. Maps to exit code 2 in the command line tool.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal consistency condition fails: a constructed chain
/// is not stochastic, a derived constant leaves its admissible range, an
/// iteration cap is exhausted. Maps to exit code 3 in the command line tool.
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pctlab
