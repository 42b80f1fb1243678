#pragma once

#include <stdexcept>
#include <string>

namespace pets {

enum class ErrorKind {
    parse,         // malformed input text or unknown names
    niceness,      // axiom system is not nice
    derivation,    // derivation rejected by the checker
    incompatible,  // maxapprx / consistency violation
    extent,        // tuple extent mismatch
    certification, // soundness inequality or audit failed
    scope,         // enumeration cap exceeded, bad configuration
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace pets
