#pragma once

#include <stdexcept>
#include <string>

namespace pulab {

/// A precondition on the caller's inputs does not hold.
class InvalidInput : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// A malformed body-spec document; `field` is a JSON pointer to the culprit.
class SpecError : public InvalidInput
{
  public:
    SpecError(std::string field, std::string const& what)
        : InvalidInput(field + ": " + what), field_(std::move(field))
    {
    }

    std::string const& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// An estimator's normalising quantity came out as zero.
class DegenerateBody : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Rejection sampling ran out of attempts.
class SamplingBudgetExhausted : public std::runtime_error
{
  public:
    SamplingBudgetExhausted(std::string const& what, double acceptance_rate)
        : std::runtime_error(what), acceptance_rate_(acceptance_rate)
    {
    }

    double acceptance_rate() const noexcept { return acceptance_rate_; }

  private:
    double acceptance_rate_;
};

}  // namespace pulab
