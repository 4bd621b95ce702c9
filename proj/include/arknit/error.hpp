#pragma once

#include <stdexcept>
#include <string>

namespace arknit {

// Single exception type for all domain and input errors.  The CLI maps it to
// exit code 1; anything escaping as a different exception type is a bug.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

// Internal invariant checks.  These guard algebraic identities that are
// supposed to hold by construction (witness equations, d^2 = 0 after
// elimination, ...).  A failure indicates a bug, not bad user input, but we
// still surface it as Error so callers can report it cleanly.
inline void check_internal(bool cond, const std::string& msg) {
    if (!cond) throw Error("internal invariant violated: " + msg);
}

} // namespace arknit
