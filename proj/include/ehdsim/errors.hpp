#ifndef EHDSIM_ERRORS_HPP
#define EHDSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ehd {

/// Invalid layout geometry (overlapping regularization spheres, coincident heads, ...).
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: solver residual not met, step-size contract violated, bad bracket.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration file / schema violation. Carries a line number when known (0 = n/a).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ehd

#endif // EHDSIM_ERRORS_HPP
