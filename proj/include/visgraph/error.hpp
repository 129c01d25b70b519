#ifndef VISGRAPH_ERROR_HPP
#define VISGRAPH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace visgraph {

enum class ErrorKind {
    invalid_argument,  // caller passed a bad parameter (r = 0, node out of range, ...)
    invalid_input,     // data violates a domain invariant (non-finite value, empty table, ...)
    parse,             // malformed file content
    io,                // filesystem failure
    resource,          // request exceeds a configured budget
    invariant          // internal consistency check failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::io: return "I/O error";
    case ErrorKind::resource: return "resource limit";
    case ErrorKind::invariant: return "invariant violation";
    }
    return "error";
}

// Process exit code used by the command-line tool for each error kind.
inline int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::resource: return 2;
    case ErrorKind::invalid_input:
    case ErrorKind::parse: return 3;
    case ErrorKind::io: return 4;
    case ErrorKind::invariant: return 5;
    }
    return 5;
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace visgraph

#endif  // VISGRAPH_ERROR_HPP
