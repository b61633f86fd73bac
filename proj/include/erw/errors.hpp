#pragma once

#include <stdexcept>
#include <string>

namespace erw {

// Requested quantity is mathematically infinite (e.g. G_d^{*n}(0) with d <= 2n).
class divergence_error : public std::domain_error {
public:
    explicit divergence_error(const std::string& what) : std::domain_error(what) {}
};

// Enumeration or iteration budget exceeded; the message names the bound.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Tolerance not reached within the iteration budget; carries the best value found.
class precision_error : public std::runtime_error {
public:
    precision_error(const std::string& what, double best_value, double best_error)
        : std::runtime_error(what), best_value(best_value), best_error(best_error) {}
    double best_value;
    double best_error;
};

}  // namespace erw
