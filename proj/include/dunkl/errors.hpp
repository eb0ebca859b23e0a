#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

// Argument outside the domain of an operation (negative multiplicity, q < 1, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Kernel requested at a time where it has no pointwise meaning.
class SingularTimeError : public std::domain_error {
public:
    SingularTimeError(double t, double distance)
        : std::domain_error("singular time t=" + std::to_string(t) +
                            " (distance to singular set " + std::to_string(distance) + ")"),
          t_(t), distance_(distance) {}

    [[nodiscard]] double time() const noexcept { return t_; }
    [[nodiscard]] double distance() const noexcept { return distance_; }

private:
    double t_;
    double distance_;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dunkl
