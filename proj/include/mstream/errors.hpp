#pragma once

#include <stdexcept>
#include <string>

namespace mstream {

// Bad user input: malformed files, invalid parameters, unknown ids.
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A checked internal postcondition failed (e.g. the kernel returned by
// deferred acceptance does not verify). Signals an implementation bug,
// never bad input. CLI exit code 3.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

// An exhaustive-enumeration guard tripped. CLI exit code 4.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mstream
