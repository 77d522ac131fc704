// Exception hierarchy shared by the whole library.
//
// invalid_input    : malformed or inconsistent user data (parse errors,
//                    mismatched ranks, non-composable interfaces).  CLI exit 1.
// certification_error : an internal witness check failed (a computed relation
//                    is not Lagrangian, a representation is not unitary, ...).
//                    These indicate a bug or unsatisfiable input and map to
//                    CLI exit 2.
#pragma once

#include <stdexcept>
#include <string>

namespace magnus {

class invalid_input : public std::runtime_error {
public:
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

class certification_error : public std::runtime_error {
public:
    explicit certification_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace magnus
