#pragma once

// Permutationally invariant unconditional (PU) convex bodies.
//
// A BodySpec is a closed description of one of four families.  All of them
// are closed under coordinate sign flips and permutations, contain the
// origin, and are bounded by an axis-aligned cube of radius bounding_radius().

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pulab/error.hpp"
#include "pulab/report.hpp"
#include "pulab/rng.hpp"
#include "pulab/young.hpp"

namespace pulab {

using Point = std::vector<double>;

/// An lp exponent p in [1, inf]; infinity is a distinct state, not a float.
class Exponent
{
  public:
    static Exponent finite(double p)
    {
        if (!std::isfinite(p) || p < 1.0) {
            throw InvalidInput("lp exponent must be finite and >= 1 (or infinity)");
        }
        return Exponent(p, false);
    }
    static Exponent infinity() noexcept { return Exponent(0.0, true); }

    bool is_infinite() const noexcept { return infinite_; }
    double value() const noexcept { return value_; }

    bool operator==(Exponent const&) const = default;

  private:
    Exponent(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

enum class Family { Cube, LpBall, OrliczBall, EqualityCase };

inline std::string_view to_string(Family f) noexcept
{
    switch (f) {
        case Family::Cube: return "cube";
        case Family::LpBall: return "lp_ball";
        case Family::OrliczBall: return "orlicz";
        case Family::EqualityCase: return "equality_case";
    }
    return "?";
}

/// [-L, L]^n
struct CubeParams
{
    double half_side;
    bool operator==(CubeParams const&) const = default;
};

/// { x : sum |x_i|^p <= r^p }
struct LpBallParams
{
    Exponent p;
    double radius;
    bool operator==(LpBallParams const&) const = default;
};

/// { x : sum f(|x_i|) <= level }.  The level is the ambient dimension of
/// the ball before any projection and is kept fixed under projection.
struct OrliczParams
{
    YoungFunction young;
    double level;
    bool operator==(OrliczParams const&) const = default;
};

/// The cube [-L, L]^n with a pyramid of apex distance a on every facet.
struct EqualityCaseParams
{
    double half_side;
    double apex;
    bool operator==(EqualityCaseParams const&) const = default;
};

class BodySpec
{
  public:
    using Params = std::variant<CubeParams, LpBallParams, OrliczParams,
                                EqualityCaseParams>;

    static BodySpec cube(std::size_t dim, double half_side)
    {
        require_positive(half_side, "cube half-side L");
        return BodySpec(dim, CubeParams{half_side});
    }

    static BodySpec lp_ball(std::size_t dim, Exponent p, double radius)
    {
        require_positive(radius, "lp-ball radius r");
        return BodySpec(dim, LpBallParams{p, radius});
    }

    /// Orlicz ball with the defining level equal to the dimension.
    static BodySpec orlicz_ball(std::size_t dim, YoungFunction f)
    {
        return orlicz_ball(dim, std::move(f), static_cast<double>(dim));
    }

    static BodySpec orlicz_ball(std::size_t dim, YoungFunction f, double level)
    {
        require_positive(level, "Orlicz level");
        return BodySpec(dim, OrliczParams{std::move(f), level});
    }

    /// Requires L < a < 2L; outside that window the union is not convex.
    static BodySpec equality_case(std::size_t dim, double half_side, double apex)
    {
        require_positive(half_side, "equality-case half-side L");
        require_positive(apex, "equality-case apex a");
        if (!(half_side < apex && apex < 2.0 * half_side)) {
            std::ostringstream os;
            os << "equality-case body needs L < a < 2L (got L=" << half_side
               << ", a=" << apex << ")";
            throw InvalidInput(os.str());
        }
        return BodySpec(dim, EqualityCaseParams{half_side, apex});
    }

    Family family() const noexcept { return static_cast<Family>(params_.index()); }
    std::size_t dim() const noexcept { return dim_; }
    Params const& params() const noexcept { return params_; }

    template <class T>
    T const& as() const
    {
        return std::get<T>(params_);
    }

    /// Same family and parameters in another dimension.
    BodySpec with_dim(std::size_t dim) const { return BodySpec(dim, params_); }

    bool operator==(BodySpec const&) const = default;

    /// Equality-case construction without the convexity window; only for
    /// negative-control tests of the convexity spot check.
    static BodySpec unchecked_equality_case(std::size_t dim, double half_side,
                                            double apex)
    {
        return BodySpec(dim, EqualityCaseParams{half_side, apex});
    }

  private:
    BodySpec(std::size_t dim, Params params) : dim_(dim), params_(std::move(params))
    {
        if (dim_ == 0) {
            throw InvalidInput("body dimension must be >= 1");
        }
    }

    static void require_positive(double v, char const* what)
    {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidInput(std::string(what) + " must be finite and > 0");
        }
    }

    std::size_t dim_;
    Params params_;
};

namespace detail {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline bool lp_contains(LpBallParams const& b, std::span<double const> x) noexcept
{
    double const r = b.radius;
    if (b.p.is_infinite()) {
        for (double v : x) {
            if (std::abs(v) > r) return false;
        }
        return true;
    }
    double const p = b.p.value();
    double sum = 0.0;
    if (p == 1.0) {
        for (double v : x) sum += std::abs(v);
        return sum <= r;
    }
    if (p == 2.0) {
        for (double v : x) sum += v * v;
        return sum <= r * r;
    }
    for (double v : x) sum += std::pow(std::abs(v), p);
    return sum <= std::pow(r, p);
}

inline bool equality_case_contains(EqualityCaseParams const& b,
                                   std::span<double const> x) noexcept
{
    double const L = b.half_side;
    double const a = b.apex;
    std::size_t above = 0;
    std::size_t index = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) > L) {
            ++above;
            index = i;
        }
    }
    if (above == 0) return true;
    if (above > 1) return false;
    double const top = std::abs(x[index]);
    if (top > a) return false;
    // Cross-section of the pyramid over facet x_index = L at height top.
    double const half_width = L * (a - top) / (a - L);
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (k != index && std::abs(x[k]) > half_width) return false;
    }
    return true;
}

}  // namespace detail

/// Membership without the dimension check; for inner loops.
inline bool contains_unchecked(BodySpec const& body, std::span<double const> x) noexcept
{
    return std::visit(
        detail::overloaded{
            [&](CubeParams const& c) {
                for (double v : x) {
                    if (std::abs(v) > c.half_side) return false;
                }
                return true;
            },
            [&](LpBallParams const& b) { return detail::lp_contains(b, x); },
            [&](OrliczParams const& o) {
                double sum = 0.0;
                for (double v : x) sum += o.young(std::abs(v));
                return sum <= o.level;
            },
            [&](EqualityCaseParams const& e) {
                return detail::equality_case_contains(e, x);
            }},
        body.params());
}

/// Closed membership: boundary points belong to the body.
inline bool contains(BodySpec const& body, std::span<double const> x)
{
    if (x.size() != body.dim()) {
        std::ostringstream os;
        os << "point has " << x.size() << " coordinates, body has dimension "
           << body.dim();
        throw InvalidInput(os.str());
    }
    return contains_unchecked(body, x);
}

/// Orthogonal projection onto the span of the first k basis vectors.
///
/// Every family is closed under these projections: the cube, lp and Orlicz
/// balls keep their parameters (the Orlicz level stays fixed), and the
/// equality-case body keeps L and a.  In dimension one the equality case is
/// the segment [-a, a].
inline BodySpec project(BodySpec const& body, std::size_t k)
{
    if (k < 1 || k > body.dim()) {
        std::ostringstream os;
        os << "projection dimension " << k << " outside [1, " << body.dim() << "]";
        throw InvalidInput(os.str());
    }
    return body.with_dim(k);
}

/// R with K inside [-R, R]^n; tight for every family.
inline double bounding_radius(BodySpec const& body)
{
    return std::visit(
        detail::overloaded{
            [](CubeParams const& c) { return c.half_side; },
            [](LpBallParams const& b) { return b.radius; },
            [](OrliczParams const& o) { return o.young.inverse(o.level); },
            [](EqualityCaseParams const& e) { return e.apex; }},
        body.params());
}

inline BodySpec equality_case_body(std::size_t n, double half_side, double apex)
{
    return BodySpec::equality_case(n, half_side, apex);
}

/// Checks that a membership predicate is invariant under random sign
/// patterns and coordinate permutations, on points drawn uniformly from
/// [-radius, radius]^dim.  The first counterexample found is reported.
template <class Membership>
ExperimentReport validate_symmetry(Membership const& member, std::size_t dim,
                                   double radius, std::uint64_t trials,
                                   std::uint64_t seed)
{
    if (trials < 1) {
        throw InvalidInput("validate_symmetry needs trials >= 1");
    }
    ExperimentReport report;
    report.name = "validate_symmetry";
    report.seed = seed;
    report.inputs = {{"dim", dim}, {"radius", radius}, {"trials", trials}};

    Philox rng(seed, stream_id(StreamTag::Symmetry, 0));
    Point x(dim);
    Point y(dim);
    std::vector<std::size_t> perm(dim);
    std::uint64_t members = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (auto& v : x) v = uniform(rng, -radius, radius);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        shuffle(rng, std::span<std::size_t>(perm));
        for (std::size_t i = 0; i < dim; ++i) {
            double const sign = (rng() >> 63) ? -1.0 : 1.0;
            y[i] = sign * x[perm[i]];
        }
        bool const in_x = member(std::span<double const>(x));
        bool const in_y = member(std::span<double const>(y));
        members += in_x ? 1 : 0;
        if (in_x != in_y) {
            report.verdict = Verdict::Fail;
            std::ostringstream os;
            os.precision(17);
            os << "counterexample at trial " << t << ": x=(";
            for (std::size_t i = 0; i < dim; ++i) os << (i ? ", " : "") << x[i];
            os << ") member=" << in_x << " but image=(";
            for (std::size_t i = 0; i < dim; ++i) os << (i ? ", " : "") << y[i];
            os << ") member=" << in_y;
            report.notes.push_back(os.str());
            report.add("trials_run", static_cast<double>(t + 1));
            return report;
        }
    }
    report.verdict = Verdict::Pass;
    report.add("trials_run", static_cast<double>(trials));
    report.add("member_fraction", static_cast<double>(members) / trials);
    return report;
}

inline ExperimentReport validate_symmetry(BodySpec const& body, std::uint64_t trials,
                                          std::uint64_t seed)
{
    auto report = validate_symmetry(
        [&](std::span<double const> x) { return contains_unchecked(body, x); },
        body.dim(), bounding_radius(body), trials, seed);
    report.inputs["family"] = std::string(to_string(body.family()));
    return report;
}

}  // namespace pulab
