#pragma once

#include <stdexcept>
#include <string>

namespace ahsc {

// Evaluation hit a pole of a meromorphic quantity (Gamma, c_zeta, a mode of
// the scattering matrix, ...).
class pole_error : public std::runtime_error {
public:
    explicit pole_error(const std::string& what) : std::runtime_error(what) {}
};

// A series or quadrature failed to reach the requested tolerance within its
// iteration budget.  Never downgraded to a silent inaccuracy.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the domain of an operation (d <= 0, x <= 0, bad index, ...).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace ahsc
