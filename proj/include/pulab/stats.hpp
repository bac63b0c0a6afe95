#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "pulab/error.hpp"
#include "pulab/rng.hpp"

namespace pulab::stats {

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
template <class Cdf>
double ks_statistic(std::vector<double> sample, Cdf const& cdf)
{
    if (sample.empty()) throw InvalidInput("ks_statistic on an empty sample");
    std::sort(sample.begin(), sample.end());
    auto const n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double const f = cdf(sample[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

/// One-sample KS critical value at level alpha (0.01 or 0.05) with
/// Stephens' finite-sample correction.
inline double ks_critical_value(std::size_t n, double alpha)
{
    double c = 0.0;
    if (alpha == 0.01) {
        c = 1.6276;
    } else if (alpha == 0.05) {
        c = 1.3581;
    } else {
        throw InvalidInput("ks_critical_value supports alpha = 0.01 or 0.05");
    }
    double const rn = std::sqrt(static_cast<double>(n));
    return c / (rn + 0.12 + 0.11 / rn);
}

/// P(X <= x) for X ~ Gamma(shape, rate) with integer shape.
inline double gamma_cdf(double x, unsigned shape, double rate)
{
    if (x <= 0.0) return 0.0;
    double const y = rate * x;
    double term = 1.0;
    double sum = 1.0;
    for (unsigned k = 1; k < shape; ++k) {
        term *= y / k;
        sum += term;
    }
    return -std::expm1(-y + std::log(sum));
}

/// Non-overlapping-block bootstrap standard errors.
///
/// Each block is a summary that supports `+=`; a resample concatenates
/// blocks drawn with replacement and evaluates `stat` on the pooled summary.
/// `stat` returns a vector of statistics; one standard error per entry is
/// returned.  Resampling whole blocks keeps the estimate honest for
/// autocorrelated (Markov chain) input.
template <class Block, class Stat>
std::vector<double> block_bootstrap_se(std::span<Block const> blocks, std::uint64_t resamples,
                                       std::uint64_t seed, Stat const& stat)
{
    if (blocks.empty() || resamples < 2) {
        throw InvalidInput("bootstrap needs blocks and >= 2 resamples");
    }
    Philox rng(seed, stream_id(StreamTag::Bootstrap, 0));
    std::vector<double> sum;
    std::vector<double> sum_sq;
    for (std::uint64_t r = 0; r < resamples; ++r) {
        Block pooled = blocks[uniform_index(rng, blocks.size())];
        for (std::size_t b = 1; b < blocks.size(); ++b) {
            pooled += blocks[uniform_index(rng, blocks.size())];
        }
        std::vector<double> const values = stat(pooled);
        if (sum.empty()) {
            sum.assign(values.size(), 0.0);
            sum_sq.assign(values.size(), 0.0);
        }
        for (std::size_t k = 0; k < values.size(); ++k) {
            sum[k] += values[k];
            sum_sq[k] += values[k] * values[k];
        }
    }
    auto const R = static_cast<double>(resamples);
    std::vector<double> se(sum.size());
    for (std::size_t k = 0; k < se.size(); ++k) {
        double const mean = sum[k] / R;
        double const var = std::max(0.0, (sum_sq[k] - R * mean * mean) / (R - 1.0));
        se[k] = std::sqrt(var);
    }
    return se;
}

/// Counts of a fixed list of events plus the total, for one block.
struct EventCounts
{
    std::uint64_t total = 0;
    std::vector<std::uint64_t> hits;

    explicit EventCounts(std::size_t events = 0) : hits(events, 0) {}

    EventCounts& operator+=(EventCounts const& other)
    {
        total += other.total;
        for (std::size_t k = 0; k < hits.size(); ++k) hits[k] += other.hits[k];
        return *this;
    }

    double frequency(std::size_t k) const
    {
        return static_cast<double>(hits[k]) / static_cast<double>(total);
    }
};

/// Running means and co-moment of a pair (Welford / Chan et al. merge).
/// A constant input leaves its co-moment exactly zero.
struct CoMoment
{
    double count = 0.0;
    double mean_x = 0.0;
    double mean_y = 0.0;
    double comoment = 0.0;

    void push(double x, double y)
    {
        count += 1.0;
        double const dx = x - mean_x;
        mean_x += dx / count;
        mean_y += (y - mean_y) / count;
        comoment += dx * (y - mean_y);
    }

    CoMoment& operator+=(CoMoment const& o)
    {
        if (o.count == 0.0) return *this;
        if (count == 0.0) return *this = o;
        double const total = count + o.count;
        double const dx = o.mean_x - mean_x;
        double const dy = o.mean_y - mean_y;
        comoment += o.comoment + dx * dy * count * o.count / total;
        mean_x += dx * o.count / total;
        mean_y += dy * o.count / total;
        count = total;
        return *this;
    }

    /// Population covariance.
    double covariance() const { return count > 0.0 ? comoment / count : 0.0; }
};

/// Splits `samples` into `blocks` nearly equal consecutive blocks; returns
/// the block index of sample i as i * blocks / samples.
inline std::size_t block_of(std::uint64_t i, std::uint64_t samples, std::size_t blocks)
{
    return static_cast<std::size_t>(static_cast<unsigned __int128>(i) * blocks / samples);
}

/// First-order (delta-method) standard error of f(values) for independent
/// inputs with standard errors `sigmas`, by central differences.
template <class F>
double delta_se(std::vector<double> values, std::span<double const> sigmas, F const& f)
{
    double var = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(sigmas[k] > 0.0)) continue;
        double const v = values[k];
        double const h = 1e-6 * std::max(std::abs(v), sigmas[k]);
        values[k] = v + h;
        double const up = f(values);
        values[k] = v - h;
        double const down = f(values);
        values[k] = v;
        double const grad = (up - down) / (2.0 * h);
        var += grad * grad * sigmas[k] * sigmas[k];
    }
    return std::sqrt(var);
}

}  // namespace pulab::stats
