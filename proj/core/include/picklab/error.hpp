#pragma once

#include <stdexcept>
#include <string>

namespace picklab {

enum class Errc {
    dimension,
    domain,
    divergence,
    numeric,
    regularity,
    argument,
    budget,
    shape,
    path,
    map,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Thrown when a truncation or enumeration would exceed the work cap; carries
// the tail bound that was reachable within budget.
class BudgetError : public Error {
public:
    BudgetError(const std::string& what, double achieved_bound)
        : Error(Errc::budget, what), achieved_bound_(achieved_bound) {}
    double achieved_bound() const noexcept { return achieved_bound_; }

private:
    double achieved_bound_;
};

}  // namespace picklab
