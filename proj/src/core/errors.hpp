#ifndef LDPC_CORE_ERRORS_HPP
#define LDPC_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ldpc {

// Error categories; the C API maps these 1:1 onto status codes.
enum class ErrorKind {
    Parse,       // malformed input text
    Validation,  // structurally valid input violating a contract
    Range,       // index or parameter out of range
    Io,          // file system failure
    Singular,    // parity part of the lifted matrix is not invertible
    Infeasible,  // search cannot proceed (no legal candidates, nothing converges)
    Internal
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace ldpc

#endif
