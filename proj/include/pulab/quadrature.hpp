#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "pulab/error.hpp"

namespace pulab {

/// Composite Simpson rule on [a, b] with an even number of intervals.
template <class F>
double composite_simpson(F const& f, double a, double b, std::size_t intervals)
{
    if (intervals < 2 || intervals % 2 != 0) {
        throw InvalidInput("composite Simpson needs an even number >= 2 of intervals");
    }
    double const h = (b - a) / static_cast<double>(intervals);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < intervals; ++i) {
        double const v = f(a + h * static_cast<double>(i));
        (i % 2 ? odd : even) += v;
    }
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

struct Integral
{
    double value = 0.0;
    double bracket = 0.0;

    Integral& operator+=(Integral const& o)
    {
        value += o.value;
        bracket += o.bracket;
        return *this;
    }
};

/// Simpson value with bracket |S(intervals) - S(intervals / 2)|, about 15
/// times the true error for smooth integrands, plus a round-off floor.
template <class F>
Integral simpson_with_bracket(F const& f, double a, double b, std::size_t intervals)
{
    if (intervals < 4 || intervals % 4 != 0) {
        throw InvalidInput("bracketed Simpson needs intervals divisible by 4");
    }
    double const fine = composite_simpson(f, a, b, intervals);
    double const coarse = composite_simpson(f, a, b, intervals / 2);
    double const roundoff = 8.0 * std::numeric_limits<double>::epsilon() *
                            std::abs(fine) * std::sqrt(static_cast<double>(intervals));
    return {fine, std::abs(fine - coarse) + roundoff};
}

}  // namespace pulab
