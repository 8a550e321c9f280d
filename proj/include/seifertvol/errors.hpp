#pragma once

#include <stdexcept>
#include <string>

namespace seifertvol {

// A mathematical precondition failed (CLI exit status 1).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or unreadable input (CLI exit status 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace seifertvol
