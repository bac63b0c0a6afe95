#pragma once

// Volumes of PU bodies: closed forms, a midpoint-rule oracle for low
// dimensions, hit-or-miss Monte Carlo over the bounding box and over the
// ordered positive cone, and the normalised slice profile F.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pulab/body.hpp"
#include "pulab/error.hpp"
#include "pulab/rng.hpp"

namespace pulab {

enum class Method { Exact, Quadrature, MonteCarlo };

inline std::string_view to_string(Method m) noexcept
{
    switch (m) {
        case Method::Exact: return "exact";
        case Method::Quadrature: return "quadrature";
        case Method::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

/// A volume with its provenance.  Exact values carry std_error 0; for
/// quadrature std_error holds the conservative discretisation bracket.
struct VolumeEstimate
{
    double value = 0.0;
    double std_error = 0.0;
    Method method = Method::Exact;
    std::uint64_t evaluations = 0;
    std::optional<std::uint64_t> seed;

    bool operator==(VolumeEstimate const&) const = default;
};

inline void to_json(nlohmann::json& j, VolumeEstimate const& v)
{
    j = nlohmann::json::object();
    j["value"] = v.value;
    j["std_error"] = v.std_error;
    j["method"] = std::string(to_string(v.method));
    j["evaluations"] = v.evaluations;
    j["seed"] = v.seed ? nlohmann::json(*v.seed) : nlohmann::json(nullptr);
}

inline void from_json(nlohmann::json const& j, VolumeEstimate& v)
{
    j.at("value").get_to(v.value);
    j.at("std_error").get_to(v.std_error);
    auto const m = j.at("method").get<std::string>();
    if (m == "exact") {
        v.method = Method::Exact;
    } else if (m == "quadrature") {
        v.method = Method::Quadrature;
    } else if (m == "monte_carlo") {
        v.method = Method::MonteCarlo;
    } else {
        throw InvalidInput("unknown volume method '" + m + "'");
    }
    v.evaluations = j.value("evaluations", std::uint64_t{0});
    if (j.contains("seed") && !j["seed"].is_null()) {
        v.seed = j["seed"].get<std::uint64_t>();
    }
}

/// |B_p^n(r)| = (2 r Gamma(1 + 1/p))^n / Gamma(1 + n/p).
inline double lp_ball_volume(std::size_t n, Exponent p, double r)
{
    auto const dn = static_cast<double>(n);
    if (p.is_infinite()) {
        return std::pow(2.0 * r, dn);
    }
    double const base = 2.0 * r * std::tgamma(1.0 + 1.0 / p.value());
    double const direct = std::pow(base, dn) / std::tgamma(1.0 + dn / p.value());
    if (std::isfinite(direct) && direct > 0.0) {
        return direct;
    }
    return std::exp(dn * std::log(base) - std::lgamma(1.0 + dn / p.value()));
}

/// Closed-form volume, or nullopt for families without one (Orlicz balls).
inline std::optional<VolumeEstimate> exact_volume(BodySpec const& body)
{
    auto const n = static_cast<double>(body.dim());
    std::optional<double> value;
    std::visit(detail::overloaded{
                   [&](CubeParams const& c) { value = std::pow(2.0 * c.half_side, n); },
                   [&](LpBallParams const& b) {
                       value = lp_ball_volume(body.dim(), b.p, b.radius);
                   },
                   [&](OrliczParams const&) {},
                   [&](EqualityCaseParams const& e) {
                       value = std::pow(2.0, n) * std::pow(e.half_side, n - 1.0) * e.apex;
                   }},
               body.params());
    if (!value) return std::nullopt;
    return VolumeEstimate{*value, 0.0, Method::Exact, 0, std::nullopt};
}

namespace detail {

inline void require_samples(std::uint64_t samples)
{
    if (samples < 1) {
        throw InvalidInput("Monte Carlo estimators need samples >= 1");
    }
}

/// Hit counts over fixed-size chunks, each chunk on its own stream.
/// `draw(rng, point)` fills a point; the result is the total hit count.
template <class Draw>
std::uint64_t chunked_hits(BodySpec const& body, std::uint64_t samples,
                           std::uint64_t seed, StreamTag tag, Draw const& draw)
{
    std::uint64_t const chunks = (samples + kChunkSize - 1) / kChunkSize;
    std::vector<std::uint64_t> hits(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        Philox rng(seed, stream_id(tag, c));
        Point x(body.dim());
        std::uint64_t const begin = c * kChunkSize;
        std::uint64_t const end = std::min(samples, begin + kChunkSize);
        std::uint64_t h = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
            draw(rng, x);
            h += contains_unchecked(body, x) ? 1 : 0;
        }
        hits[c] = h;
    });
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return total;
}

inline VolumeEstimate hit_or_miss(double region_volume, std::uint64_t hits,
                                  std::uint64_t samples, std::uint64_t seed)
{
    double const q = static_cast<double>(hits) / static_cast<double>(samples);
    return {region_volume * q,
            region_volume * std::sqrt(q * (1.0 - q) / static_cast<double>(samples)),
            Method::MonteCarlo, samples, seed};
}

}  // namespace detail

/// Hit-or-miss over the bounding box [-R, R]^n.
inline VolumeEstimate mc_volume(BodySpec const& body, std::uint64_t samples,
                                std::uint64_t seed)
{
    detail::require_samples(samples);
    double const R = bounding_radius(body);
    auto const hits = detail::chunked_hits(
        body, samples, seed, StreamTag::BoxVolume, [R](Philox& rng, Point& x) {
            for (auto& v : x) v = uniform(rng, -R, R);
        });
    return detail::hit_or_miss(std::pow(2.0 * R, static_cast<double>(body.dim())),
                               hits, samples, seed);
}

/// Volume of K intersected with the ordered cone x_1 >= ... >= x_n >= 0.
///
/// Box samples are folded into the cone (absolute values, sorted
/// descending), giving uniform samples on the ordered part of [0, R]^n whose
/// volume is R^n / n!.  For a PU body 2^n n! times this is |K|.
inline VolumeEstimate ordered_cone_mc_volume(BodySpec const& body, std::uint64_t samples,
                                             std::uint64_t seed)
{
    detail::require_samples(samples);
    double const R = bounding_radius(body);
    auto const hits = detail::chunked_hits(
        body, samples, seed, StreamTag::OrderedCone, [R](Philox& rng, Point& x) {
            for (auto& v : x) v = std::abs(uniform(rng, -R, R));
            std::sort(x.begin(), x.end(), std::greater<>());
        });
    auto const n = static_cast<double>(body.dim());
    double const region = std::exp(n * std::log(R) - std::lgamma(n + 1.0));
    return detail::hit_or_miss(region, hits, samples, seed);
}

/// Midpoint rule on a grid_per_axis^n lattice of the bounding box.
///
/// Only the nonincreasing index tuples of the nonnegative half-axis are
/// visited, each weighted by its number of sign and permutation images;
/// the sum equals the full lattice sum for a PU body.  std_error holds the
/// surface-term bracket (2R)^n * n / grid_per_axis.
inline VolumeEstimate quadrature_volume_low_dim(BodySpec const& body,
                                                std::uint32_t grid_per_axis)
{
    std::size_t const n = body.dim();
    if (n > 4) {
        throw InvalidInput("quadrature_volume_low_dim supports dim <= 4");
    }
    if (grid_per_axis < 8) {
        throw InvalidInput("quadrature_volume_low_dim needs grid_per_axis >= 8");
    }
    double const R = bounding_radius(body);
    double const h = 2.0 * R / grid_per_axis;

    // Distinct |cell centre| values in increasing order, with multiplicity.
    std::vector<double> centre;
    std::vector<double> weight;
    if (grid_per_axis % 2 == 1) {
        centre.push_back(0.0);
        weight.push_back(1.0);
    }
    for (std::uint32_t j = grid_per_axis / 2; j < grid_per_axis; ++j) {
        double const c = -R + (j + 0.5) * h;
        if (c > 0.0) {
            centre.push_back(c);
            weight.push_back(2.0);
        }
    }

    std::vector<double> factorial{1.0, 1.0, 2.0, 6.0, 24.0};
    Point x(n, 0.0);
    std::vector<std::size_t> idx(n, 0);
    double total = 0.0;

    // Enumerate idx[0] >= idx[1] >= ... >= idx[n-1].  When a prefix with the
    // remaining coordinates at their smallest value is outside the body, so
    // is every completion and every larger value at this depth.
    std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t depth,
                                                              std::size_t cap) {
        for (std::size_t j = 0; j <= cap && j < centre.size(); ++j) {
            idx[depth] = j;
            x[depth] = centre[j];
            for (std::size_t k = depth + 1; k < n; ++k) x[k] = centre[0];
            if (!contains_unchecked(body, x)) break;
            if (depth + 1 < n) {
                visit(depth + 1, j);
                continue;
            }
            double w = factorial[n];
            std::size_t run = 1;
            for (std::size_t k = 0; k < n; ++k) {
                w *= weight[idx[k]];
                if (k + 1 < n && idx[k + 1] == idx[k]) {
                    ++run;
                } else {
                    w /= factorial[run];
                    run = 1;
                }
            }
            total += w;
        }
    };
    visit(0, centre.size() - 1);

    auto const dn = static_cast<double>(n);
    double const cell = std::pow(h, dn);
    double const box = std::pow(2.0 * R, dn);
    return {total * cell, box * dn / grid_per_axis, Method::Quadrature,
            static_cast<std::uint64_t>(std::pow(static_cast<double>(grid_per_axis), dn)),
            std::nullopt};
}

/// Sampled values of the normalised ordered-slice function
///
///   F(x) = vol{ y : y_1 >= ... >= y_m >= x, (y, x) in K }
///        / vol{ y : y_1 >= ... >= y_m >= 0, (y, 0) in K },   m = dim K - 1,
///
/// on [0, support_end].  `dim_label` is the ambient n for which K plays the
/// role of K_{n-1}, so m = dim_label - 2.
struct SliceProfile
{
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> std_errors;
    std::size_t dim_label = 0;
    double normalizer = 0.0;
    double normalizer_std_error = 0.0;
    double support_end = 0.0;
};

inline void to_json(nlohmann::json& j, SliceProfile const& p)
{
    j = {{"grid", p.grid},
         {"values", p.values},
         {"std_errors", p.std_errors},
         {"dim_label", p.dim_label},
         {"normalizer", p.normalizer},
         {"normalizer_std_error", p.normalizer_std_error},
         {"support_end", p.support_end}};
}

/// CSV with columns grid,value.
inline void write_csv(std::ostream& out, SliceProfile const& p)
{
    auto const old = out.precision(17);
    out << "grid,value\n";
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        out << p.grid[i] << ',' << p.values[i] << '\n';
    }
    out.precision(old);
}

/// Hit-or-miss estimate of F on grid_points equally spaced heights in
/// [0, R].  Each height uses an independent stream; samples are drawn in
/// [x, R]^m and sorted descending, so the sampled region has volume
/// (R - x)^m / m!.  The profile is truncated at the largest height with a
/// positive estimate.
inline SliceProfile slice_profile(BodySpec const& body, std::size_t n_label,
                                  std::size_t grid_points, std::uint64_t samples_per_point,
                                  std::uint64_t seed)
{
    if (n_label != body.dim() + 1 || n_label < 3) {
        throw InvalidInput("slice_profile needs n_label = dim + 1 >= 3");
    }
    if (grid_points < 2) {
        throw InvalidInput("slice_profile needs grid_points >= 2");
    }
    detail::require_samples(samples_per_point);

    std::size_t const m = n_label - 2;
    double const R = bounding_radius(body);
    std::vector<double> grid(grid_points);
    for (std::size_t j = 0; j < grid_points; ++j) {
        grid[j] = R * static_cast<double>(j) / static_cast<double>(grid_points - 1);
    }

    std::vector<double> estimate(grid_points, 0.0);
    std::vector<double> sigma(grid_points, 0.0);
    parallel_for(grid_points, [&](std::size_t j) {
        double const x = grid[j];
        double const width = R - x;
        if (!(width > 0.0)) return;
        Philox rng(seed, stream_id(StreamTag::SliceProfile, j));
        Point y(m + 1);
        y[m] = x;
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < samples_per_point; ++s) {
            for (std::size_t k = 0; k < m; ++k) y[k] = uniform(rng, x, R);
            std::sort(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m),
                      std::greater<>());
            hits += contains_unchecked(body, y) ? 1 : 0;
        }
        auto const dm = static_cast<double>(m);
        double const region = std::exp(dm * std::log(width) - std::lgamma(dm + 1.0));
        auto const est = detail::hit_or_miss(region, hits, samples_per_point, seed);
        estimate[j] = est.value;
        sigma[j] = est.std_error;
    });

    double const norm = estimate[0];
    double const norm_sigma = sigma[0];
    if (!(norm > 0.0)) {
        throw DegenerateBody("slice_profile: zero estimate at height 0");
    }

    std::size_t last = 0;
    for (std::size_t j = 0; j < grid_points; ++j) {
        if (estimate[j] > 0.0) last = j;
    }

    SliceProfile profile;
    profile.dim_label = n_label;
    profile.normalizer = norm;
    profile.normalizer_std_error = norm_sigma;
    profile.support_end = grid[last];
    for (std::size_t j = 0; j <= last; ++j) {
        profile.grid.push_back(grid[j]);
        if (j == 0) {
            profile.values.push_back(1.0);
            profile.std_errors.push_back(0.0);
            continue;
        }
        double const f = estimate[j] / norm;
        double const rel_j = sigma[j] / norm;
        double const rel_0 = f * norm_sigma / norm;
        profile.values.push_back(f);
        profile.std_errors.push_back(std::sqrt(rel_j * rel_j + rel_0 * rel_0));
    }
    return profile;
}

}  // namespace pulab
