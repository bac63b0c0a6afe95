#pragma once

// Samplers: exact rejection sampling from the bounding box, hit-and-run
// over the membership oracle, and the exact radial sampler for the density
// exp(-2 (n!)^{1/n} max_i |x_i|).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <vector>

#include "pulab/body.hpp"
#include "pulab/error.hpp"
#include "pulab/rng.hpp"

namespace pulab {

/// Row-major dim x size matrix of sample points.
class PointSet
{
  public:
    explicit PointSet(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }

    std::span<double const> operator[](std::size_t i) const noexcept
    {
        return {data_.data() + i * dim_, dim_};
    }

    void push_back(std::span<double const> x) { data_.insert(data_.end(), x.begin(), x.end()); }
    void reserve(std::size_t points) { data_.reserve(points * dim_); }

    /// Coordinate `axis` of every point.
    std::vector<double> column(std::size_t axis) const
    {
        std::vector<double> out(size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * dim_ + axis];
        return out;
    }

  private:
    std::size_t dim_;
    std::vector<double> data_;
};

/// One point per row, header x1,...,xn.
inline void write_csv(std::ostream& out, PointSet const& points)
{
    auto const old = out.precision(17);
    for (std::size_t k = 0; k < points.dim(); ++k) {
        out << (k ? "," : "") << 'x' << (k + 1);
    }
    out << '\n';
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto const row = points[i];
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
        out << '\n';
    }
    out.precision(old);
}

/// Hit-and-run chain settings.  `steps` is the number of hit-and-run moves
/// making up one chain transition; `thinning` transitions separate recorded
/// states.
struct ChainConfig
{
    std::uint64_t burn_in = 0;
    std::uint64_t thinning = 1;
    std::uint64_t steps = 1;
    std::uint64_t seed = 0;

    void validate() const
    {
        if (thinning < 1) throw InvalidInput("ChainConfig.thinning must be >= 1");
        if (steps < 1) throw InvalidInput("ChainConfig.steps must be >= 1");
    }
};

/// burn_in = 1000 dim, thinning = dim.
inline ChainConfig default_chain_config(std::size_t dim, std::uint64_t seed)
{
    return {1000 * dim, dim, 1, seed};
}

/// Exactly uniform points in K by rejection from [-R, R]^n.
inline PointSet rejection_sample(BodySpec const& body, std::uint64_t count,
                                 std::uint64_t seed, std::uint64_t max_attempts)
{
    if (count < 1) throw InvalidInput("rejection_sample needs count >= 1");
    double const R = bounding_radius(body);
    Philox rng(seed, stream_id(StreamTag::Rejection, 0));
    PointSet out(body.dim());
    out.reserve(count);
    Point x(body.dim());
    std::uint64_t attempts = 0;
    while (out.size() < count) {
        if (attempts == max_attempts) {
            double const rate = attempts ? static_cast<double>(out.size()) / attempts : 0.0;
            std::ostringstream os;
            os << "rejection_sample: budget of " << max_attempts
               << " attempts exhausted with " << out.size() << "/" << count
               << " points accepted (observed acceptance rate " << rate << ")";
            throw SamplingBudgetExhausted(os.str(), rate);
        }
        ++attempts;
        for (auto& v : x) v = uniform(rng, -R, R);
        if (contains_unchecked(body, x)) out.push_back(x);
    }
    return out;
}

/// Hit-and-run Markov chain started at the origin.
///
/// Each move picks, with equal probability, a uniformly random coordinate
/// axis or an isotropic random direction, locates both chord endpoints by
/// bisection against the membership oracle (absolute tolerance 1e-12 R,
/// keeping the inner end) and jumps to a uniform point of the chord.
class HitAndRun
{
  public:
    HitAndRun(BodySpec const& body, ChainConfig const& config)
        : body_(body),
          radius_(bounding_radius(body)),
          rng_(config.seed, stream_id(StreamTag::HitAndRun, 0)),
          x_(body.dim(), 0.0),
          probe_(body.dim()),
          dir_(body.dim()),
          config_(config)
    {
        config_.validate();
        for (std::uint64_t i = 0; i < config_.burn_in; ++i) move();
    }

    /// Advances `thinning` transitions and returns the new state.
    std::span<double const> next()
    {
        for (std::uint64_t t = 0; t < config_.thinning * config_.steps; ++t) move();
        return x_;
    }

    std::span<double const> state() const noexcept { return x_; }

  private:
    void move()
    {
        std::size_t const n = x_.size();
        if (rng_() >> 63) {
            std::fill(dir_.begin(), dir_.end(), 0.0);
            dir_[uniform_index(rng_, n)] = 1.0;
        } else {
            double norm2 = 0.0;
            do {
                norm2 = 0.0;
                for (auto& d : dir_) {
                    d = standard_normal(rng_);
                    norm2 += d * d;
                }
            } while (!(norm2 > 0.0));
            double const inv = 1.0 / std::sqrt(norm2);
            for (auto& d : dir_) d *= inv;
        }
        double const forward = chord_end(1.0);
        double const backward = chord_end(-1.0);
        double const t = uniform(rng_, -backward, forward);
        for (std::size_t i = 0; i < n; ++i) x_[i] += t * dir_[i];
    }

    /// Largest s >= 0 (to tolerance) with x + sign * s * dir inside K.
    double chord_end(double sign)
    {
        std::size_t const n = x_.size();
        // Exit parameter from the bounding box, which lies outside or on K.
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double const d = sign * dir_[i];
            if (d > 0.0) {
                hi = std::min(hi, (radius_ - x_[i]) / d);
            } else if (d < 0.0) {
                hi = std::min(hi, (-radius_ - x_[i]) / d);
            }
        }
        hi = std::max(hi, 0.0);
        if (inside(sign, hi)) return hi;
        double lo = 0.0;
        double const tol = 1e-12 * radius_;
        while (hi - lo > tol) {
            double const mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (inside(sign, mid) ? lo : hi) = mid;
        }
        return lo;
    }

    bool inside(double sign, double s)
    {
        for (std::size_t i = 0; i < x_.size(); ++i) probe_[i] = x_[i] + sign * s * dir_[i];
        return contains_unchecked(body_, probe_);
    }

    BodySpec body_;
    double radius_;
    Philox rng_;
    Point x_;
    Point probe_;
    Point dir_;
    ChainConfig config_;
};

/// Streams `count` chain states to visit(span<const double>).
template <class Visitor>
void hit_and_run_visit(BodySpec const& body, std::uint64_t count, ChainConfig const& config,
                       Visitor&& visit)
{
    HitAndRun chain(body, config);
    for (std::uint64_t i = 0; i < count; ++i) visit(chain.next());
}

inline PointSet hit_and_run(BodySpec const& body, std::uint64_t count,
                            ChainConfig const& config)
{
    PointSet out(body.dim());
    out.reserve(count);
    hit_and_run_visit(body, count, config,
                      [&](std::span<double const> x) { out.push_back(x); });
    return out;
}

/// Rate of the radial Gamma law: 2 (n!)^{1/n}.
inline double max_norm_rate(std::size_t n)
{
    auto const dn = static_cast<double>(n);
    return 2.0 * std::exp(std::lgamma(dn + 1.0) / dn);
}

/// Exact sampler for the density exp(-beta max_i |x_i|), beta = 2 (n!)^{1/n}.
///
/// The max-norm shell of radius r has Lebesgue measure n 2^n r^{n-1} dr and
/// is uniformly covered by the 2n cube facets, so r ~ Gamma(n, beta) and the
/// point is uniform on the boundary of [-r, r]^n given r.
class MaxNormRadialSampler
{
  public:
    explicit MaxNormRadialSampler(std::size_t n) : n_(n), rate_(max_norm_rate(n))
    {
        if (n < 1) throw InvalidInput("max_norm_radial_sampler needs n >= 1");
    }

    std::size_t dim() const noexcept { return n_; }
    double rate() const noexcept { return rate_; }

    template <class Rng>
    void operator()(Rng& rng, std::span<double> out) const
    {
        double const r = gamma_integer_shape(rng, static_cast<unsigned>(n_), rate_);
        std::size_t const face = uniform_index(rng, 2 * n_);
        for (std::size_t k = 0; k < n_; ++k) out[k] = uniform(rng, -r, r);
        out[face / 2] = (face % 2) ? -r : r;
    }

  private:
    std::size_t n_;
    double rate_;
};

inline PointSet max_norm_radial_sampler(std::size_t n, std::uint64_t count,
                                        std::uint64_t seed)
{
    MaxNormRadialSampler sampler(n);
    Philox rng(seed, stream_id(StreamTag::RadialSampler, 0));
    PointSet out(n);
    out.reserve(count);
    Point x(n);
    for (std::uint64_t i = 0; i < count; ++i) {
        sampler(rng, x);
        out.push_back(x);
    }
    return out;
}

}  // namespace pulab
