#pragma once

// Concave profiles f : [0, L] -> [0, inf), f(0) = 1, nonincreasing and
// concave, and the integral inequality
//
//   (n-1)/n * ( int_0^L f^{n-2} )^2  >=  int_0^L x f^{n-2},   n >= 3,
//
// evaluated by composite Simpson quadrature.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "pulab/error.hpp"
#include "pulab/quadrature.hpp"

namespace pulab {

class ConcaveProfile
{
  public:
    enum class Kind { Affine, Power, PiecewiseLinear };

    struct Knot
    {
        double x;
        double value;
    };

    /// f(x) = 1 - alpha x / L, alpha in [0, 1].
    static ConcaveProfile affine(double alpha, double length = 1.0)
    {
        if (!(alpha >= 0.0 && alpha <= 1.0)) {
            throw InvalidInput("affine profile needs alpha in [0, 1]");
        }
        ConcaveProfile p(Kind::Affine, length);
        p.parameter_ = alpha;
        return p;
    }

    /// f(x) = (1 - x / L)^beta, beta in (0, 1].
    static ConcaveProfile power(double beta, double length = 1.0)
    {
        if (!(beta > 0.0 && beta <= 1.0)) {
            throw InvalidInput("power profile needs beta in (0, 1]");
        }
        ConcaveProfile p(Kind::Power, length);
        p.parameter_ = beta;
        return p;
    }

    /// Knots from (0, 1) to (L, f(L)) with nonincreasing, nonpositive slopes.
    static ConcaveProfile piecewise_linear(std::vector<Knot> knots)
    {
        if (knots.size() < 2) {
            throw InvalidInput("piecewise-linear profile needs >= 2 knots");
        }
        if (knots.front().x != 0.0 || knots.front().value != 1.0) {
            throw InvalidInput("piecewise-linear profile must start at (0, 1)");
        }
        double prev = 0.0;
        for (std::size_t i = 1; i < knots.size(); ++i) {
            auto const& a = knots[i - 1];
            auto const& b = knots[i];
            if (!(b.x > a.x) || !std::isfinite(b.x) || !std::isfinite(b.value)) {
                throw InvalidInput("profile knots must be finite with increasing x");
            }
            if (b.value < 0.0) {
                throw InvalidInput("profile values must be nonnegative");
            }
            double const slope = (b.value - a.value) / (b.x - a.x);
            if (slope > prev) {
                std::ostringstream os;
                os << "profile is not concave and nonincreasing at knot " << i
                   << " (slope " << slope << " after " << prev << ")";
                throw InvalidInput(os.str());
            }
            prev = slope;
        }
        ConcaveProfile p(Kind::PiecewiseLinear, knots.back().x);
        p.knots_ = std::move(knots);
        return p;
    }

    Kind kind() const noexcept { return kind_; }
    double length() const noexcept { return length_; }
    double parameter() const noexcept { return parameter_; }
    std::vector<Knot> const& knots() const noexcept { return knots_; }

    double operator()(double x) const noexcept
    {
        switch (kind_) {
            case Kind::Affine: return 1.0 - parameter_ * x / length_;
            case Kind::Power: return std::pow(std::max(0.0, 1.0 - x / length_), parameter_);
            case Kind::PiecewiseLinear: break;
        }
        auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](double v, Knot const& k) { return v < k.x; });
        if (it == knots_.end()) return knots_.back().value;
        auto const& hi = *it;
        auto const& lo = *(it - 1);
        return lo.value + (hi.value - lo.value) * (x - lo.x) / (hi.x - lo.x);
    }

  private:
    ConcaveProfile(Kind kind, double length) : kind_(kind), length_(length)
    {
        if (!(length > 0.0) || !std::isfinite(length)) {
            throw InvalidInput("profile domain length must be finite and > 0");
        }
    }

    Kind kind_;
    double length_;
    double parameter_ = 0.0;
    std::vector<Knot> knots_;
};

struct LemmaGap
{
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double bracket = 0.0;
};

namespace detail {

inline double ipow(double base, std::size_t e)
{
    double r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline std::size_t round_to_multiple_of_4(double v)
{
    auto const k = static_cast<std::size_t>(std::ceil(v / 4.0));
    return 4 * std::max<std::size_t>(k, 1);
}

}  // namespace detail

/// (n-1)/n (int f^{n-2})^2 - int x f^{n-2}, with a quadrature bracket.
///
/// Piecewise-linear profiles are integrated panel-by-panel on their knots.
/// Power profiles use the substitution x = L (1 - s^q), which removes the
/// endpoint singularity of (1 - x/L)^{beta (n-2)}.
inline LemmaGap lemma1_gap(ConcaveProfile const& profile, std::size_t n, std::size_t grid)
{
    if (n < 3) throw InvalidInput("lemma1_gap needs n >= 3");
    if (grid < 64) throw InvalidInput("lemma1_gap needs grid >= 64");

    std::size_t const m = n - 2;
    double const L = profile.length();
    Integral mass;
    Integral moment;

    switch (profile.kind()) {
        case ConcaveProfile::Kind::Affine: {
            auto f0 = [&](double x) { return detail::ipow(profile(x), m); };
            auto f1 = [&](double x) { return x * detail::ipow(profile(x), m); };
            std::size_t const k = detail::round_to_multiple_of_4(static_cast<double>(grid));
            mass = simpson_with_bracket(f0, 0.0, L, k);
            moment = simpson_with_bracket(f1, 0.0, L, k);
            break;
        }
        case ConcaveProfile::Kind::Power: {
            double const gamma = profile.parameter() * static_cast<double>(m);
            double const q = std::max(1.0, std::ceil(4.0 / (gamma + 1.0)));
            // Integrand in s: L q s^{q (gamma + 1) - 1}, times x for the moment.
            double const expo = q * (gamma + 1.0) - 1.0;
            auto f0 = [&](double s) { return L * q * std::pow(s, expo); };
            auto f1 = [&](double s) {
                return L * (1.0 - std::pow(s, q)) * L * q * std::pow(s, expo);
            };
            std::size_t const k = detail::round_to_multiple_of_4(static_cast<double>(grid));
            mass = simpson_with_bracket(f0, 0.0, 1.0, k);
            moment = simpson_with_bracket(f1, 0.0, 1.0, k);
            break;
        }
        case ConcaveProfile::Kind::PiecewiseLinear: {
            auto const& knots = profile.knots();
            for (std::size_t i = 1; i < knots.size(); ++i) {
                double const a = knots[i - 1].x;
                double const b = knots[i].x;
                auto f0 = [&](double x) { return detail::ipow(profile(x), m); };
                auto f1 = [&](double x) { return x * detail::ipow(profile(x), m); };
                std::size_t const k = detail::round_to_multiple_of_4(
                    static_cast<double>(grid) * (b - a) / L);
                mass += simpson_with_bracket(f0, a, b, k);
                moment += simpson_with_bracket(f1, a, b, k);
            }
            break;
        }
    }

    double const w = (static_cast<double>(n) - 1.0) / static_cast<double>(n);
    LemmaGap out;
    out.lhs = w * mass.value * mass.value;
    out.rhs = moment.value;
    out.gap = out.lhs - out.rhs;
    out.bracket = w * (2.0 * std::abs(mass.value) * mass.bracket + mass.bracket * mass.bracket) +
                  moment.bracket;
    return out;
}

/// Both sides of the inequality for f(x) = 1 - alpha x on [0, 1]:
///   lhs = (1 - (1-alpha)^{n-1})^2 / (alpha^2 n (n-1))
///   rhs = [ (1 - (1-alpha)^{n-1}) / (n-1) - (1 - (1-alpha)^n) / n ] / alpha^2
/// alpha = 0 returns the limits ((n-1)/n, 1/2).
inline std::pair<double, double> affine_profile_closed_form(double alpha, std::size_t n)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InvalidInput("affine_profile_closed_form needs alpha in [0, 1]");
    }
    if (n < 3) throw InvalidInput("affine_profile_closed_form needs n >= 3");
    auto const dn = static_cast<double>(n);
    if (alpha == 0.0) {
        return {(dn - 1.0) / dn, 0.5};
    }
    double const c = 1.0 - alpha;
    double const a1 = 1.0 - detail::ipow(c, n - 1);
    double const a0 = 1.0 - detail::ipow(c, n);
    double const a2 = alpha * alpha;
    return {a1 * a1 / (a2 * dn * (dn - 1.0)), (a1 / (dn - 1.0) - a0 / dn) / a2};
}

}  // namespace pulab
