#pragma once

#include <stdexcept>
#include <string>

namespace coalesce
{
//! Input violates a documented precondition (bad domain, malformed payload).
class ValidationError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! A numerical contract (quadrature tolerance, conditioning) was not met.
class NumericalError : public std::runtime_error
{
  public:
    NumericalError(const std::string& what, double estimate = 0.0)
        : std::runtime_error(what), estimate_(estimate)
    {
    }

    //! Best available value or error estimate at the point of failure.
    double estimate() const noexcept { return estimate_; }

  private:
    double estimate_;
};

}  // namespace coalesce
