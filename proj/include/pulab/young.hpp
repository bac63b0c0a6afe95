#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pulab/error.hpp"

namespace pulab {

/// A Young function: convex, nondecreasing on [0, inf) with f(0) = 0.
///
/// Two representations are supported: the power t^p (p >= 1) and a
/// piecewise-linear convex function given by knots (t, f(t)) starting at
/// (0, 0).  Beyond the last knot the last slope is extended linearly, which
/// must be strictly positive so that every Orlicz ball is bounded.
class YoungFunction
{
  public:
    enum class Kind { Power, PiecewiseLinear };

    struct Knot
    {
        double t;
        double value;
        bool operator==(Knot const&) const = default;
    };

    static YoungFunction power(double p)
    {
        if (!std::isfinite(p) || p < 1.0) {
            throw InvalidInput("Young power exponent must be finite and >= 1");
        }
        YoungFunction f;
        f.kind_ = Kind::Power;
        f.exponent_ = p;
        return f;
    }

    static YoungFunction piecewise_linear(std::vector<Knot> knots)
    {
        if (knots.size() < 2) {
            throw InvalidInput("piecewise-linear Young function needs >= 2 knots");
        }
        if (knots.front().t != 0.0 || knots.front().value != 0.0) {
            throw InvalidInput("first knot must be (0, 0)");
        }
        double prev_slope = 0.0;
        for (std::size_t i = 1; i < knots.size(); ++i) {
            auto const& a = knots[i - 1];
            auto const& b = knots[i];
            if (!std::isfinite(b.t) || !std::isfinite(b.value)) {
                throw InvalidInput("knots must be finite");
            }
            if (!(b.t > a.t)) {
                throw InvalidInput("knot abscissae must be strictly increasing");
            }
            double const slope = (b.value - a.value) / (b.t - a.t);
            if (slope < prev_slope) {
                throw InvalidInput(
                    "knot slopes must be nonnegative and nondecreasing (convexity)");
            }
            prev_slope = slope;
        }
        if (!(prev_slope > 0.0)) {
            throw InvalidInput("last knot slope must be positive (bounded ball)");
        }
        YoungFunction f;
        f.kind_ = Kind::PiecewiseLinear;
        f.knots_ = std::move(knots);
        return f;
    }

    Kind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return exponent_; }
    std::vector<Knot> const& knots() const noexcept { return knots_; }

    double operator()(double t) const noexcept
    {
        if (kind_ == Kind::Power) {
            if (exponent_ == 1.0) return t;
            if (exponent_ == 2.0) return t * t;
            if (exponent_ == 3.0) return t * t * t;
            return std::pow(t, exponent_);
        }
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](double v, Knot const& k) { return v < k.t; });
        if (it == knots_.end()) {
            --it;
        }
        auto const& hi = *it;
        auto const& lo = *(it - 1);
        double const slope = (hi.value - lo.value) / (hi.t - lo.t);
        return lo.value + slope * (t - lo.t);
    }

    /// Smallest representable R with f(R) >= level, by bisection.
    double inverse(double level) const
    {
        if (!(level >= 0.0)) {
            throw InvalidInput("Young inverse needs a nonnegative level");
        }
        double lo = 0.0;
        double hi = 1.0;
        while ((*this)(hi) < level) {
            lo = hi;
            hi *= 2.0;
        }
        for (int iter = 0; iter < 2000; ++iter) {
            double const mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            ((*this)(mid) < level ? lo : hi) = mid;
        }
        return hi;
    }

    bool operator==(YoungFunction const&) const = default;

  private:
    YoungFunction() = default;

    Kind kind_ = Kind::Power;
    double exponent_ = 1.0;
    std::vector<Knot> knots_;
};

}  // namespace pulab
