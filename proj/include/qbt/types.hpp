#ifndef QBT_TYPES_HPP
#define QBT_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace qbt {

using cx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Base class for all failures raised by the toolkit.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Linear solve rejected: condition estimate above the threshold.
class IllConditionedError : public Error {
  public:
    IllConditionedError(const std::string& what, double cond_estimate)
        : Error(what), cond(cond_estimate) {}
    double cond;
};

/// A spectral point fell on (or too close to) an eigenvalue of a reference
/// realization.
class NearEigenvalueError : public Error {
  public:
    NearEigenvalueError(const std::string& what, cx nearest_eigenvalue)
        : Error(what), nearest(nearest_eigenvalue) {}
    cx nearest;
};

/// A boundary multiplier collided with a Weyl value (eigenvalue hit); carries
/// the offending Fourier mode.
class ModeCollisionError : public Error {
  public:
    ModeCollisionError(const std::string& what, int mode_index)
        : Error(what), mode(mode_index) {}
    int mode;
};

/// Root scan asked over an interval containing reference-operator spectrum.
class IntervalSplitError : public Error {
  public:
    IntervalSplitError(const std::string& what, double eigenvalue_inside)
        : Error(what), inside(eigenvalue_inside) {}
    double inside;
};

/// Case-file schema violation.
class SchemaError : public Error {
  public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

} // namespace qbt

#endif
