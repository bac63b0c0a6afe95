#pragma once

// Named experiments on PU bodies and related measures.  Every experiment
// returns an ExperimentReport whose statistics carry their standard errors;
// statistical verdicts compare against z standard errors (default 3).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pulab/body.hpp"
#include "pulab/body_json.hpp"
#include "pulab/report.hpp"
#include "pulab/sampler.hpp"
#include "pulab/stats.hpp"
#include "pulab/volume.hpp"

namespace pulab {

/// Bootstrap settings shared by the sampling experiments.
struct BootstrapConfig
{
    std::size_t blocks = 100;
    std::uint64_t resamples = 1000;
};

/// Minimum number of joint-event hits before a correlation verdict is given.
inline constexpr std::uint64_t kMinJointHits = 25;

namespace detail {

inline std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

/// Streams `samples` points from `next(span<double>)` and tallies the events
/// raised by `events(point, flags)` in consecutive blocks.
template <class Next, class Events>
std::vector<stats::EventCounts> tally_events(std::size_t dim, std::uint64_t samples,
                                             std::size_t blocks, std::size_t event_count,
                                             Next&& next, Events&& events)
{
    blocks = static_cast<std::size_t>(std::min<std::uint64_t>(blocks, samples));
    std::vector<stats::EventCounts> out(blocks, stats::EventCounts(event_count));
    std::vector<char> flags(event_count);
    Point x(dim);
    for (std::uint64_t i = 0; i < samples; ++i) {
        next(std::span<double>(x));
        std::fill(flags.begin(), flags.end(), 0);
        events(std::span<double const>(x), flags);
        auto& block = out[stats::block_of(i, samples, blocks)];
        ++block.total;
        for (std::size_t k = 0; k < event_count; ++k) block.hits[k] += flags[k];
    }
    return out;
}

inline stats::EventCounts pool(std::vector<stats::EventCounts> const& blocks)
{
    stats::EventCounts total = blocks.front();
    for (std::size_t b = 1; b < blocks.size(); ++b) total += blocks[b];
    return total;
}

inline auto chain_source(BodySpec const& body, ChainConfig const& config)
{
    return [chain = HitAndRun(body, config)](std::span<double> out) mutable {
        auto const x = chain.next();
        std::copy(x.begin(), x.end(), out.begin());
    };
}

inline nlohmann::json chain_json(ChainConfig const& c)
{
    return {{"burn_in", c.burn_in}, {"thinning", c.thinning}, {"steps", c.steps},
            {"seed", c.seed}};
}

}  // namespace detail

/// mu(|x_i| >= t_i for all i) against prod_i mu(|x_i| >= t_i) under the
/// uniform measure on K, from one hit-and-run sample set.
///
/// Pass when lhs - rhs <= z * se (block-bootstrap standard error), Fail
/// otherwise, Inconclusive with fewer than 25 joint hits.
inline ExperimentReport negative_correlation_test(BodySpec const& body,
                                                  std::vector<double> const& thresholds,
                                                  std::uint64_t samples,
                                                  ChainConfig const& config,
                                                  double z_threshold = 3.0,
                                                  BootstrapConfig boot = {})
{
    std::size_t const n = body.dim();
    if (thresholds.size() != n) {
        throw InvalidInput("negative_correlation_test: need one threshold per coordinate");
    }
    for (double t : thresholds) {
        if (!(t >= 0.0)) throw InvalidInput("thresholds must be >= 0");
    }
    if (samples < 1) throw InvalidInput("negative_correlation_test needs samples >= 1");

    auto blocks = detail::tally_events(
        n, samples, boot.blocks, n + 1, detail::chain_source(body, config),
        [&](std::span<double const> x, std::vector<char>& flags) {
            bool all = true;
            for (std::size_t i = 0; i < n; ++i) {
                bool const hit = std::abs(x[i]) >= thresholds[i];
                flags[i] = hit;
                all = all && hit;
            }
            flags[n] = all;
        });

    auto sides = [n](stats::EventCounts const& c) {
        double rhs = 1.0;
        for (std::size_t i = 0; i < n; ++i) rhs *= c.frequency(i);
        double const lhs = c.frequency(n);
        return std::vector<double>{lhs, rhs, lhs - rhs};
    };
    auto const total = detail::pool(blocks);
    auto const point = sides(total);
    auto const se = stats::block_bootstrap_se(std::span<stats::EventCounts const>(blocks),
                                              boot.resamples, mix_seed(config.seed, 1), sides);

    ExperimentReport report;
    report.name = "negative_correlation";
    report.seed = config.seed;
    report.inputs = {{"body", body_to_json(body)},
                     {"thresholds", thresholds},
                     {"samples", samples},
                     {"chain", detail::chain_json(config)},
                     {"z_threshold", z_threshold},
                     {"bootstrap_blocks", blocks.size()},
                     {"bootstrap_resamples", boot.resamples}};
    report.add("lhs", point[0], se[0]);
    report.add("rhs", point[1], se[1]);
    report.add("difference", point[2], se[2]);
    report.add("joint_hits", static_cast<double>(total.hits[n]));

    if (total.hits[n] < kMinJointHits) {
        report.verdict = Verdict::Inconclusive;
        report.notes.push_back("fewer than 25 joint hits");
    } else {
        report.verdict = point[2] <= z_threshold * se[2] ? Verdict::Pass : Verdict::Fail;
    }
    return report;
}

/// Scans mu(|x_1| >= t, |x_2| >= t) - mu(|x_1| >= t) mu(|x_2| >= t) over a
/// grid of t for an arbitrary point source `next(span<double>)`.
///
/// Pass when some t shows a positive difference (a correlation-inequality
/// violation) of at least z standard errors, Inconclusive otherwise.
template <class Next>
ExperimentReport correlation_violation_scan(std::string name, std::size_t dim,
                                            std::vector<double> const& t_grid,
                                            std::uint64_t samples, std::uint64_t seed,
                                            Next&& next, double z_threshold = 3.0,
                                            BootstrapConfig boot = {})
{
    if (dim < 2) throw InvalidInput(name + " needs n >= 2");
    if (t_grid.empty()) throw InvalidInput(name + " needs a nonempty t grid");
    if (samples < 1) throw InvalidInput(name + " needs samples >= 1");
    for (double t : t_grid) {
        if (!(t >= 0.0)) throw InvalidInput(name + ": t values must be >= 0");
    }
    std::size_t const T = t_grid.size();
    auto blocks = detail::tally_events(
        dim, samples, boot.blocks, 3 * T, next,
        [&](std::span<double const> x, std::vector<char>& flags) {
            double const a = std::abs(x[0]);
            double const b = std::abs(x[1]);
            for (std::size_t k = 0; k < T; ++k) {
                bool const ha = a >= t_grid[k];
                bool const hb = b >= t_grid[k];
                flags[3 * k] = ha;
                flags[3 * k + 1] = hb;
                flags[3 * k + 2] = ha && hb;
            }
        });
    auto diffs = [T](stats::EventCounts const& c) {
        std::vector<double> out(T);
        for (std::size_t k = 0; k < T; ++k) {
            out[k] = c.frequency(3 * k + 2) - c.frequency(3 * k) * c.frequency(3 * k + 1);
        }
        return out;
    };
    auto const total = detail::pool(blocks);
    auto const point = diffs(total);
    auto const se = stats::block_bootstrap_se(std::span<stats::EventCounts const>(blocks),
                                              boot.resamples, mix_seed(seed, 1), diffs);

    ExperimentReport report;
    report.name = std::move(name);
    report.seed = seed;
    report.inputs = {{"dim", dim},           {"t_grid", t_grid},
                     {"samples", samples},   {"z_threshold", z_threshold},
                     {"bootstrap_blocks", blocks.size()},
                     {"bootstrap_resamples", boot.resamples}};

    double best_z = -std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    for (std::size_t k = 0; k < T; ++k) {
        auto const tag = "(t=" + detail::fmt(t_grid[k]) + ")";
        report.add("joint" + tag, total.frequency(3 * k + 2));
        report.add("product" + tag, total.frequency(3 * k) * total.frequency(3 * k + 1));
        report.add("difference" + tag, point[k], se[k]);
        if (se[k] > 0.0 && total.hits[3 * k + 2] >= kMinJointHits) {
            double const zk = point[k] / se[k];
            report.add("z" + tag, zk);
            if (zk > best_z) {
                best_z = zk;
                best = k;
            }
        }
    }
    if (std::isfinite(best_z)) {
        report.add("max_z", best_z);
        report.add("max_z_t", t_grid[best]);
    }
    report.verdict = best_z >= z_threshold ? Verdict::Pass : Verdict::Inconclusive;
    if (report.verdict == Verdict::Pass) {
        report.notes.push_back("violation of the correlation inequality at t = " +
                               detail::fmt(t_grid[best]) + " with z = " + detail::fmt(best_z));
    } else {
        report.notes.push_back("no violation with z >= " + detail::fmt(z_threshold) +
                               " found at this sample size");
    }
    return report;
}

/// Correlation scan under the density exp(-2 (n!)^{1/n} max|x_i|), sampled
/// exactly; the remaining thresholds t_3..t_n are zero.
inline ExperimentReport bobkov_nazarov_experiment(std::size_t n,
                                                  std::vector<double> const& t_grid,
                                                  std::uint64_t samples, std::uint64_t seed,
                                                  double z_threshold = 3.0,
                                                  BootstrapConfig boot = {})
{
    MaxNormRadialSampler sampler(n);
    Philox rng(seed, stream_id(StreamTag::RadialSampler, 0));
    auto report = correlation_violation_scan(
        "bobkov_nazarov", n, t_grid, samples, seed,
        [&](std::span<double> out) { sampler(rng, out); }, z_threshold, boot);
    report.inputs["rate"] = sampler.rate();
    report.inputs["mean_radius"] = static_cast<double>(n) / sampler.rate();
    return report;
}

/// Estimates h(t) = mu(|x_1| >= t) mu(|x_2| >= t) - mu(|x_1| >= t, |x_2| >= t)
/// and compares h(t) / (4 t^2) with
///
///   c = (|K_{n-1}|^2 - |K_{n-2}| |K_n|) / |K_n|^2.
///
/// Near t = 0 the marginal tail is 1 - 2t |K_{n-1}|/|K_n| and the joint
/// small-box mass is 4t^2 |K_{n-2}|/|K_n| (sections equal projections for
/// unconditional bodies), so h(t) = 4 c t^2 + O(t^3).  The estimate at the
/// smallest t is compared with c; no extrapolation is applied, so the O(t)
/// relative bias remains.
inline ExperimentReport taylor_coefficient_check(BodySpec const& body,
                                                 std::vector<double> const& t_values,
                                                 std::uint64_t samples,
                                                 ChainConfig const& config,
                                                 double z_threshold = 3.0,
                                                 std::uint64_t volume_samples = 10'000'000,
                                                 BootstrapConfig boot = {})
{
    std::size_t const n = body.dim();
    if (n < 3) throw InvalidInput("taylor_coefficient_check needs dim >= 3");
    if (t_values.empty()) throw InvalidInput("taylor_coefficient_check needs t values");
    double const R = bounding_radius(body);
    for (double t : t_values) {
        if (!(t > 0.0)) throw InvalidInput("taylor_coefficient_check: t must be > 0");
        if (!(t < R)) throw InvalidInput("taylor_coefficient_check: t must be < bounding radius");
    }
    if (samples < 1) throw InvalidInput("taylor_coefficient_check needs samples >= 1");

    std::vector<double> vol(3);
    std::vector<double> vol_se(3);
    std::vector<std::string> vol_method(3);
    for (std::size_t k = 0; k < 3; ++k) {
        auto const proj = project(body, n - 2 + k);
        auto est = exact_volume(proj);
        if (!est) est = mc_volume(proj, volume_samples, mix_seed(config.seed, 100 + k));
        vol[k] = est->value;
        vol_se[k] = est->std_error;
        vol_method[k] = std::string(to_string(est->method));
    }
    auto coefficient = [](std::vector<double> const& v) {
        return (v[1] * v[1] - v[0] * v[2]) / (v[2] * v[2]);
    };
    double const c = coefficient(vol);
    double const c_se = stats::delta_se(vol, vol_se, coefficient);

    std::vector<double> ts = t_values;
    std::sort(ts.begin(), ts.end());
    std::size_t const T = ts.size();
    auto blocks = detail::tally_events(
        n, samples, boot.blocks, 3 * T, detail::chain_source(body, config),
        [&](std::span<double const> x, std::vector<char>& flags) {
            double const a = std::abs(x[0]);
            double const b = std::abs(x[1]);
            for (std::size_t k = 0; k < T; ++k) {
                bool const ha = a >= ts[k];
                bool const hb = b >= ts[k];
                flags[3 * k] = ha;
                flags[3 * k + 1] = hb;
                flags[3 * k + 2] = ha && hb;
            }
        });
    auto estimates = [&ts, T](stats::EventCounts const& cnt) {
        std::vector<double> out(2 * T);
        for (std::size_t k = 0; k < T; ++k) {
            double const h = cnt.frequency(3 * k) * cnt.frequency(3 * k + 1) -
                             cnt.frequency(3 * k + 2);
            out[2 * k] = h;
            out[2 * k + 1] = h / (4.0 * ts[k] * ts[k]);
        }
        return out;
    };
    auto const total = detail::pool(blocks);
    auto const point = estimates(total);
    auto const se = stats::block_bootstrap_se(std::span<stats::EventCounts const>(blocks),
                                              boot.resamples, mix_seed(config.seed, 1),
                                              estimates);

    ExperimentReport report;
    report.name = "taylor_coefficient";
    report.seed = config.seed;
    report.inputs = {{"body", body_to_json(body)},
                     {"t_values", ts},
                     {"samples", samples},
                     {"chain", detail::chain_json(config)},
                     {"z_threshold", z_threshold},
                     {"volume_methods", vol_method},
                     {"bootstrap_blocks", blocks.size()},
                     {"bootstrap_resamples", boot.resamples}};
    report.add("volume_n_minus_2", vol[0], vol_se[0]);
    report.add("volume_n_minus_1", vol[1], vol_se[1]);
    report.add("volume_n", vol[2], vol_se[2]);
    report.add("c", c, c_se);
    for (std::size_t k = 0; k < T; ++k) {
        auto const tag = "(t=" + detail::fmt(ts[k]) + ")";
        report.add("h" + tag, point[2 * k], se[2 * k]);
        report.add("h_over_t2" + tag, point[2 * k] / (ts[k] * ts[k]),
                   se[2 * k] / (ts[k] * ts[k]));
        report.add("coefficient" + tag, point[2 * k + 1], se[2 * k + 1]);
    }
    double const estimate = point[1];
    double const combined = std::sqrt(se[1] * se[1] + c_se * c_se);
    report.add("coefficient_minus_c", estimate - c, combined);
    report.verdict = std::abs(estimate - c) <= z_threshold * combined ? Verdict::Pass
                                                                      : Verdict::Fail;
    report.notes.push_back("h(t)/(4t^2) carries an O(t) bias at finite t; no extrapolation");
    return report;
}

/// Bounded coordinate-wise nondecreasing functions of (|x_i|)_{i in block}.
class MonotoneFunction
{
  public:
    enum class Kind { Max, Min, ClippedSum, Constant };

    static MonotoneFunction max() { return MonotoneFunction(Kind::Max, 0.0); }
    static MonotoneFunction min() { return MonotoneFunction(Kind::Min, 0.0); }
    /// sum_i min(|x_i|, clip)
    static MonotoneFunction clipped_sum(double clip)
    {
        if (!(clip > 0.0)) throw InvalidInput("clipped_sum needs clip > 0");
        return MonotoneFunction(Kind::ClippedSum, clip);
    }
    static MonotoneFunction constant(double c) { return MonotoneFunction(Kind::Constant, c); }

    Kind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return parameter_; }

    std::string describe() const
    {
        switch (kind_) {
            case Kind::Max: return "max";
            case Kind::Min: return "min";
            case Kind::ClippedSum: return "clipped_sum(" + detail::fmt(parameter_) + ")";
            case Kind::Constant: return "constant(" + detail::fmt(parameter_) + ")";
        }
        return "?";
    }

    double operator()(std::span<double const> x, std::vector<std::size_t> const& block) const
    {
        switch (kind_) {
            case Kind::Constant: return parameter_;
            case Kind::Max: {
                double m = 0.0;
                for (auto i : block) m = std::max(m, std::abs(x[i]));
                return m;
            }
            case Kind::Min: {
                double m = std::numeric_limits<double>::infinity();
                for (auto i : block) m = std::min(m, std::abs(x[i]));
                return m;
            }
            case Kind::ClippedSum: {
                double s = 0.0;
                for (auto i : block) s += std::min(std::abs(x[i]), parameter_);
                return s;
            }
        }
        return 0.0;
    }

  private:
    MonotoneFunction(Kind k, double p) : kind_(k), parameter_(p) {}
    Kind kind_;
    double parameter_;
};

/// Cov(f(|X_a|), g(|X_b|)) for X uniform on K and disjoint index blocks a, b.
/// Pass when cov <= z * se.
inline ExperimentReport increasing_covariance_test(
    BodySpec const& body, std::vector<std::size_t> const& block_a,
    std::vector<std::size_t> const& block_b, MonotoneFunction const& f,
    MonotoneFunction const& g, std::uint64_t samples, ChainConfig const& config,
    double z_threshold = 3.0, BootstrapConfig boot = {})
{
    if (block_a.empty() || block_b.empty()) {
        throw InvalidInput("increasing_covariance_test needs nonempty blocks");
    }
    std::set<std::size_t> seen;
    for (auto i : block_a) {
        if (i >= body.dim()) throw InvalidInput("block index out of range");
        seen.insert(i);
    }
    for (auto i : block_b) {
        if (i >= body.dim()) throw InvalidInput("block index out of range");
        if (seen.count(i)) throw InvalidInput("blocks must be disjoint");
    }
    if (samples < 1) throw InvalidInput("increasing_covariance_test needs samples >= 1");

    std::size_t const nblocks =
        static_cast<std::size_t>(std::min<std::uint64_t>(boot.blocks, samples));
    std::vector<stats::CoMoment> moments(nblocks);
    std::uint64_t i = 0;
    hit_and_run_visit(body, samples, config, [&](std::span<double const> x) {
        moments[stats::block_of(i++, samples, nblocks)].push(f(x, block_a), g(x, block_b));
    });
    stats::CoMoment total;
    for (auto const& m : moments) total += m;
    auto const se = stats::block_bootstrap_se(
        std::span<stats::CoMoment const>(moments), boot.resamples, mix_seed(config.seed, 1),
        [](stats::CoMoment const& m) { return std::vector<double>{m.covariance()}; });

    ExperimentReport report;
    report.name = "increasing_covariance";
    report.seed = config.seed;
    report.inputs = {{"body", body_to_json(body)}, {"block_a", block_a},
                     {"block_b", block_b},         {"f", f.describe()},
                     {"g", g.describe()},          {"samples", samples},
                     {"chain", detail::chain_json(config)},
                     {"z_threshold", z_threshold}};
    report.add("covariance", total.covariance(), se[0]);
    report.add("mean_f", total.mean_x);
    report.add("mean_g", total.mean_y);
    report.verdict =
        total.covariance() <= z_threshold * se[0] ? Verdict::Pass : Verdict::Fail;
    return report;
}

/// Ratios r_n = |K_{n+1}| / |K_n| along a projective family
/// (project(K_{n+1}, n) = K_n), which log-concavity forces to be
/// nonincreasing.
inline ExperimentReport ratio_limit_scan(std::function<BodySpec(std::size_t)> const& family,
                                         std::size_t n_min, std::size_t n_max,
                                         std::uint64_t budget, std::uint64_t seed,
                                         double z_threshold = 3.0)
{
    if (n_min < 1 || n_max < n_min) throw InvalidInput("ratio_limit_scan needs 1 <= n_min <= n_max");
    std::vector<BodySpec> bodies;
    for (std::size_t n = n_min; n <= n_max + 1; ++n) {
        bodies.push_back(family(n));
        if (bodies.back().dim() != n) {
            throw InvalidInput("ratio_limit_scan: family member has the wrong dimension");
        }
    }
    for (std::size_t k = 0; k + 1 < bodies.size(); ++k) {
        if (!(project(bodies[k + 1], n_min + k) == bodies[k])) {
            throw InvalidInput("ratio_limit_scan: family is not projectively consistent at n = " +
                               std::to_string(n_min + k));
        }
    }

    std::vector<double> v;
    std::vector<double> s;
    std::vector<std::string> methods;
    for (std::size_t k = 0; k < bodies.size(); ++k) {
        auto est = exact_volume(bodies[k]);
        if (!est) est = mc_volume(bodies[k], budget, mix_seed(seed, n_min + k));
        v.push_back(est->value);
        s.push_back(est->std_error);
        methods.push_back(std::string(to_string(est->method)));
    }

    ExperimentReport report;
    report.name = "ratio_limit_scan";
    report.seed = seed;
    report.inputs = {{"template", body_to_json(bodies.back())}, {"n_min", n_min},
                     {"n_max", n_max},  {"budget", budget},
                     {"volume_methods", methods}, {"z_threshold", z_threshold}};
    for (std::size_t k = 0; k < bodies.size(); ++k) {
        report.add("volume_" + std::to_string(n_min + k), v[k], s[k]);
    }
    bool ok = true;
    std::size_t const R = bodies.size() - 1;
    for (std::size_t k = 0; k < R; ++k) {
        double const r = v[k + 1] / v[k];
        report.add("ratio_" + std::to_string(n_min + k), r,
                   stats::delta_se(v, s, [k](auto const& w) { return w[k + 1] / w[k]; }));
        if (k == 0) continue;
        auto step = [k](std::vector<double> const& w) {
            return w[k + 1] / w[k] - w[k] / w[k - 1];
        };
        double const d = step(v);
        double const sd = stats::delta_se(v, s, step);
        double const allowance = sd > 0.0 ? z_threshold * sd : 1e-12 * std::abs(r);
        if (d > allowance) {
            ok = false;
            report.notes.push_back("ratio increases at n = " + std::to_string(n_min + k));
        }
    }
    report.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return report;
}

/// Scan over the family obtained by changing only the dimension of a template.
inline ExperimentReport ratio_limit_scan(BodySpec const& family_template, std::size_t n_min,
                                         std::size_t n_max, std::uint64_t budget,
                                         std::uint64_t seed, double z_threshold = 3.0)
{
    return ratio_limit_scan([&](std::size_t n) { return family_template.with_dim(n); }, n_min,
                            n_max, budget, seed, z_threshold);
}

/// F(0) = 1, F nonincreasing and F^{1/(n-2)} concave on its support, each
/// up to z pointwise standard errors (plus 1e-12 round-off).
inline ExperimentReport slice_profile_properties(SliceProfile const& profile,
                                                 double z_threshold = 3.0)
{
    std::size_t const P = profile.grid.size();
    if (P < 3) throw InvalidInput("slice_profile_properties needs >= 3 grid points");
    if (profile.dim_label < 3) throw InvalidInput("slice profile needs dim_label >= 3");
    constexpr double kRoundoff = 1e-12;
    auto const& v = profile.values;
    auto const& s = profile.std_errors;
    double const m = static_cast<double>(profile.dim_label - 2);

    ExperimentReport report;
    report.name = "slice_profile_properties";
    report.inputs = {{"dim_label", profile.dim_label}, {"grid_points", P},
                     {"support_end", profile.support_end}, {"z_threshold", z_threshold}};

    bool const normalised = std::abs(v[0] - 1.0) <= z_threshold * s[0] + kRoundoff;
    report.add("F(0)", v[0], s[0]);
    if (!normalised) report.notes.push_back("F(0) != 1");

    double worst_rise = -std::numeric_limits<double>::infinity();
    double worst_rise_se = 0.0;
    bool monotone = true;
    for (std::size_t j = 0; j + 1 < P; ++j) {
        double const rise = v[j + 1] - v[j];
        double const se = std::hypot(s[j], s[j + 1]);
        if (rise > worst_rise) {
            worst_rise = rise;
            worst_rise_se = se;
        }
        if (rise > z_threshold * se + kRoundoff) monotone = false;
    }
    report.add("max_increase", worst_rise, worst_rise_se);
    if (!monotone) report.notes.push_back("F increases somewhere on the grid");

    double worst_defect = -std::numeric_limits<double>::infinity();
    double worst_defect_se = 0.0;
    bool concave = true;
    auto root = [m](double f) { return std::pow(f, 1.0 / m); };
    auto root_se = [m](double f, double sf) {
        return f > 0.0 ? sf / (m * std::pow(f, 1.0 - 1.0 / m)) : 0.0;
    };
    for (std::size_t j = 1; j + 1 < P; ++j) {
        if (!(v[j - 1] > 0.0 && v[j] > 0.0 && v[j + 1] > 0.0)) continue;
        double const w = (profile.grid[j + 1] - profile.grid[j]) /
                         (profile.grid[j + 1] - profile.grid[j - 1]);
        double const chord = w * root(v[j - 1]) + (1.0 - w) * root(v[j + 1]);
        double const defect = chord - root(v[j]);
        double const se = std::sqrt(std::pow(w * root_se(v[j - 1], s[j - 1]), 2) +
                                    std::pow((1.0 - w) * root_se(v[j + 1], s[j + 1]), 2) +
                                    std::pow(root_se(v[j], s[j]), 2));
        if (defect > worst_defect) {
            worst_defect = defect;
            worst_defect_se = se;
        }
        if (defect > z_threshold * se + kRoundoff) concave = false;
    }
    if (std::isfinite(worst_defect)) {
        report.add("max_concavity_defect", worst_defect, worst_defect_se);
    }
    if (!concave) report.notes.push_back("F^{1/(n-2)} fails midpoint concavity");

    report.verdict = normalised && monotone && concave ? Verdict::Pass : Verdict::Fail;
    return report;
}

}  // namespace pulab
