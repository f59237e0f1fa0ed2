#pragma once

#include <stdexcept>
#include <string>

namespace ergm {

// Invalid input: malformed graphs, motifs, ERGM specifications or run configs.
class SpecError : public std::invalid_argument {
public:
    explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

// A well-formed request that the numerics refuse to answer: singular
// closed forms, critical regimes, estimators outside their domain.
class NumericalRefusal : public std::runtime_error {
public:
    explicit NumericalRefusal(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ergm
