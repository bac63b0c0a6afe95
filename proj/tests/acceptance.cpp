// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pulab/pulab.hpp"

using namespace pulab;

namespace {

// Tolerances.
constexpr double kZ = 3.0;
constexpr double kExactRelTol = 1e-12;
constexpr double kLemmaBracketMax = 1e-8;
constexpr double kAffineEqualityTol = 1e-10;
constexpr double kClosedFormTol = 1e-9;
constexpr double kKsAlpha = 0.01;
constexpr double kTaylorTarget = 0.75;

// Budgets.
constexpr std::uint64_t kMcSamples = 1'000'000;
constexpr std::uint32_t kQuadGrid = 400;
constexpr std::uint64_t kSliceSamples = 100'000;
constexpr std::uint64_t kTaylorSamples = 10'000'000;
constexpr std::uint64_t kKsSamples = 100'000;
constexpr std::uint64_t kNegCorrSamples = 1'000'000;
constexpr std::size_t kLemmaGrid = 1u << 14;

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, std::string const& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void run(int number, char const* title, std::function<void(Outcome&)> const& body)
{
    Outcome o;
    auto const start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (std::exception const& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    double const secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%.1f s)%s\n", o.pass ? "PASS" : "FAIL", number, title, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

BodySpec l_p(std::size_t n, double p) { return BodySpec::lp_ball(n, Exponent::finite(p), 1.0); }

std::string dump(ExperimentReport const& r) { return nlohmann::json(r).dump(); }

// Reports kept for the determinism rerun.
std::string c2_json;
std::string c4_json;
std::string c7_json;

std::string criterion2_reports()
{
    nlohmann::json j = nlohmann::json::array();
    std::vector<BodySpec> const bodies{BodySpec::cube(4, 1.0), l_p(4, 1.0), l_p(3, 2.0),
                                       BodySpec::equality_case(4, 1.0, 1.5)};
    for (std::size_t k = 0; k < bodies.size(); ++k) {
        j.push_back(mc_volume(bodies[k], kMcSamples, 200 + k));
    }
    return j.dump();
}

ExperimentReport criterion4_report()
{
    auto const body = BodySpec::orlicz_ball(5, YoungFunction::power(3.0), 5.0);
    return log_concavity_report(projection_volume_sequence(body, kMcSamples, 400), kZ);
}

ExperimentReport criterion7_report()
{
    return taylor_coefficient_check(l_p(3, 1.0), {0.02}, kTaylorSamples,
                                    default_chain_config(3, 700), kZ);
}

}  // namespace

int main()
{
    run(1, "equality-case sequences are exact with g_i = 0", [](Outcome& o) {
        struct Case { std::size_t n; double L, a; };
        for (auto const c : {Case{3, 1, 1.5}, Case{5, 1, 1.5}, Case{5, 2, 3}}) {
            auto const seq = projection_volume_sequence(BodySpec::equality_case(c.n, c.L, c.a),
                                                        1000, 1);
            for (std::size_t i = 1; i <= c.n; ++i) {
                double const expect = std::pow(2.0, i) * std::pow(c.L, i - 1.0) * c.a;
                o.require(seq.entries[i - 1].value == expect &&
                              seq.entries[i - 1].method == Method::Exact,
                          "entry " + std::to_string(i) + " of n=" + std::to_string(c.n));
            }
            auto const rep = log_concavity_report(seq);
            for (auto const& s : rep.statistics) {
                if (s.label.rfind("g_", 0) == 0) o.require(s.value == 0.0, s.label + " != 0");
            }
            o.require(rep.verdict == Verdict::Pass, "verdict");
        }
    });

    run(2, "Monte Carlo and quadrature agree with exact volumes", [](Outcome& o) {
        std::vector<BodySpec> const bodies{BodySpec::cube(4, 1.0), l_p(4, 1.0), l_p(3, 2.0),
                                           BodySpec::equality_case(4, 1.0, 1.5)};
        c2_json = criterion2_reports();
        auto const mc = nlohmann::json::parse(c2_json);
        double worst_z = 0.0;
        double worst_quad = 0.0;
        for (std::size_t k = 0; k < bodies.size(); ++k) {
            double const exact = exact_volume(bodies[k])->value;
            // A body equal to its bounding box is hit every time: zero error.
            double const diff = std::abs(mc[k].at("value").get<double>() - exact);
            double const z = diff == 0.0 ? 0.0 : diff / mc[k].at("std_error").get<double>();
            worst_z = std::max(worst_z, z);
            o.require(z <= kZ, "mc body " + std::to_string(k));
            auto const q = quadrature_volume_low_dim(bodies[k], kQuadGrid);
            double const ratio = std::abs(q.value - exact) / q.std_error;
            worst_quad = std::max(worst_quad, ratio);
            o.require(ratio <= 1.0, "quadrature body " + std::to_string(k));
        }
        o.detail << " max |mc-exact|/se = " << worst_z << ", max |quad-exact|/bracket = "
                 << worst_quad;
    });

    run(3, "exact lp sequences: l1 ratios (i+1)/i, l2 strictly log-concave", [](Outcome& o) {
        double worst = 0.0;
        for (std::size_t n = 3; n <= 8; ++n) {
            auto const rep = log_concavity_report(projection_volume_sequence(l_p(n, 1.0), 1, 1));
            for (std::size_t i = 2; i < n; ++i) {
                double const r = rep.at("ratio_" + std::to_string(i)).value;
                double const e = rel_err(r, (i + 1.0) / i);
                worst = std::max(worst, e);
                o.require(e < kExactRelTol, "l1 n=" + std::to_string(n) + " i=" + std::to_string(i));
            }
            auto const l2 = log_concavity_report(projection_volume_sequence(l_p(n, 2.0), 1, 1));
            for (auto const& s : l2.statistics) {
                if (s.label.rfind("g_", 0) == 0) o.require(s.value > 0.0, "l2 " + s.label);
            }
        }
        o.detail << " max relative ratio error = " << worst;
    });

    run(4, "Orlicz t^3 ball: no g_i below -3 stderr", [](Outcome& o) {
        auto const rep = criterion4_report();
        c4_json = dump(rep);
        double min_z = 1e300;
        for (auto const& s : rep.statistics) {
            if (s.label.rfind("g_", 0) != 0) continue;
            min_z = std::min(min_z, s.value / s.std_error);
            o.require(s.value >= -kZ * s.std_error, s.label);
        }
        o.detail << " min g_i/se = " << min_z;
    });

    run(5, "integral inequality over random concave profiles", [](Outcome& o) {
        std::mt19937_64 rng(5);
        auto real = [&](double a, double b) { return std::uniform_real_distribution<>(a, b)(rng); };
        double worst_bracket = 0.0;
        double min_gap = 1e300;
        for (int trial = 0; trial < 100; ++trial) {
            double const L = real(0.2, 3.0);
            ConcaveProfile f = ConcaveProfile::affine(0.0, 1.0);
            switch (trial % 3) {
                case 0: f = ConcaveProfile::affine(real(0.0, 1.0), L); break;
                case 1: f = ConcaveProfile::power(real(0.05, 1.0), L); break;
                default: {
                    std::vector<ConcaveProfile::Knot> knots{{0.0, 1.0}};
                    double slope = -real(0.0, 0.3);
                    double x = 0.0;
                    double v = 1.0;
                    for (int k = 0; k < 4 && v > 0.0; ++k) {
                        double dx = real(0.1, 1.0);
                        if (slope < 0.0) dx = std::min(dx, v / -slope);
                        if (!(dx > 1e-6)) break;
                        x += dx;
                        v = std::max(0.0, v + slope * dx);
                        knots.push_back({x, v});
                        slope -= real(0.0, 0.8);
                    }
                    f = ConcaveProfile::piecewise_linear(knots);
                }
            }
            for (std::size_t n = 3; n <= 12; ++n) {
                auto const g = lemma1_gap(f, n, kLemmaGrid);
                worst_bracket = std::max(worst_bracket, g.bracket);
                min_gap = std::min(min_gap, g.gap + g.bracket);
                o.require(g.gap >= -g.bracket, "gap trial " + std::to_string(trial));
                o.require(g.bracket < kLemmaBracketMax, "bracket trial " + std::to_string(trial));
            }
        }
        double worst_affine = 0.0;
        for (std::size_t n = 3; n <= 12; ++n) {
            worst_affine = std::max(worst_affine,
                                    std::abs(lemma1_gap(ConcaveProfile::affine(1.0), n, kLemmaGrid).gap));
        }
        o.require(worst_affine < kAffineEqualityTol, "affine alpha=1 gap");
        double worst_cf = 0.0;
        for (int a = 0; a < 10; ++a) {
            double const alpha = a / 9.0;
            for (std::size_t n = 3; n <= 12; ++n) {
                auto const [l, r] = affine_profile_closed_form(alpha, n);
                auto const g = lemma1_gap(ConcaveProfile::affine(alpha), n, kLemmaGrid);
                worst_cf = std::max({worst_cf, std::abs(l - g.lhs), std::abs(r - g.rhs)});
            }
        }
        o.require(worst_cf < kClosedFormTol, "closed form");
        o.detail << " max bracket = " << worst_bracket << ", min gap+bracket = " << min_gap
                 << ", max |affine(1) gap| = " << worst_affine
                 << ", max |closed form - quadrature| = " << worst_cf;
    });

    run(6, "slice profiles match analytic values and satisfy F properties", [](Outcome& o) {
        struct Case
        {
            BodySpec body;
            std::size_t n_label;
            std::function<double(double)> analytic;
        };
        std::vector<Case> const cases{
            {BodySpec::cube(2, 1.0), 3, [](double x) { return 1.0 - x; }},
            {l_p(2, 1.0), 3, [](double x) { return std::max(0.0, 1.0 - 2.0 * x); }},
            {l_p(3, 1.0), 4, nullptr}};
        double worst = 0.0;
        for (std::size_t k = 0; k < cases.size(); ++k) {
            auto const& c = cases[k];
            auto const p = slice_profile(c.body, c.n_label, 21, kSliceSamples, 600 + k);
            if (c.analytic) {
                for (std::size_t j = 0; j < p.grid.size(); ++j) {
                    double const z = std::abs(p.values[j] - c.analytic(p.grid[j])) /
                                     std::max(p.std_errors[j], 1e-300);
                    if (p.std_errors[j] > 0.0) worst = std::max(worst, z);
                    o.require(std::abs(p.values[j] - c.analytic(p.grid[j])) <=
                                  kZ * p.std_errors[j] + 1e-12,
                              "analytic case " + std::to_string(k) + " j=" + std::to_string(j));
                }
            }
            auto const props = slice_profile_properties(p, kZ);
            o.require(props.verdict == Verdict::Pass, "properties case " + std::to_string(k));
        }
        o.detail << " max analytic |diff|/se = " << worst;
    });

    run(7, "Taylor coefficient h(t)/t^2 near 3/4 for B_1^3, 0 for the cube", [](Outcome& o) {
        auto const rep = criterion7_report();
        c7_json = dump(rep);
        auto const& literal = rep.at("h_over_t2(t=0.02)");
        auto const& coef = rep.at("coefficient(t=0.02)");
        double const lit_z = std::abs(literal.value - kTaylorTarget) / literal.std_error;
        double const coef_z = std::abs(coef.value - kTaylorTarget) / coef.std_error;
        o.require(lit_z <= kZ, "h(t)/t^2 vs 0.75");
        o.detail << " h/t^2 = " << literal.value << " +- " << literal.std_error << " (z = " << lit_z
                 << "); h/(4t^2) = " << coef.value << " +- " << coef.std_error
                 << " (z = " << coef_z << ")";

        auto const cube = taylor_coefficient_check(BodySpec::cube(3, 1.0), {0.02}, kTaylorSamples,
                                                   default_chain_config(3, 701), kZ);
        auto const& cc = cube.at("h_over_t2(t=0.02)");
        double const cube_z = std::abs(cc.value) / cc.std_error;
        o.require(cube_z <= kZ, "cube estimate vs 0");
        o.detail << "; cube h/t^2 = " << cc.value << " +- " << cc.std_error << " (z = " << cube_z
                 << ")";
    });

    run(8, "hit-and-run and radial sampler pass KS at 1%", [](Outcome& o) {
        // Near-independent draws: every 50th transition after a long burn-in.
        ChainConfig const config{5000, 50, 1, 800};
        auto const pts = hit_and_run(BodySpec::cube(5, 1.0), kKsSamples, config);
        double const crit = stats::ks_critical_value(pts.size(), kKsAlpha);
        double worst = 0.0;
        for (std::size_t k = 0; k < 5; ++k) {
            double const d = stats::ks_statistic(pts.column(k),
                                                 [](double x) { return (x + 1.0) / 2.0; });
            worst = std::max(worst, d);
            o.require(d < crit, "hit-and-run axis " + std::to_string(k));
        }
        o.detail << " hit-and-run max D = " << worst << " (crit " << crit << ")";
        for (std::size_t n : {1u, 3u, 5u}) {
            auto const r = max_norm_radial_sampler(n, kKsSamples, 810 + n);
            std::vector<double> radius(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) {
                double m = 0.0;
                for (double v : r[i]) m = std::max(m, std::abs(v));
                radius[i] = m;
            }
            double const rate = max_norm_rate(n);
            double const d = stats::ks_statistic(radius, [&](double x) {
                return stats::gamma_cdf(x, static_cast<unsigned>(n), rate);
            });
            o.require(d < stats::ks_critical_value(radius.size(), kKsAlpha),
                      "radial n=" + std::to_string(n));
            o.detail << "; radial n=" << n << " D = " << d;
        }
    });

    run(9, "negative correlation on the cube and B_1^3, Bobkov-Nazarov scan", [](Outcome& o) {
        std::vector<double> const t{0.3, 0.3, 0.0};
        auto const cube = negative_correlation_test(BodySpec::cube(3, 1.0), t, kNegCorrSamples,
                                                    default_chain_config(3, 900), kZ);
        auto const cross = negative_correlation_test(l_p(3, 1.0), t, kNegCorrSamples,
                                                     default_chain_config(3, 901), kZ);
        o.require(cube.verdict == Verdict::Pass, "cube verdict");
        o.require(cross.verdict == Verdict::Pass, "B_1^3 verdict");
        auto const& cd = cube.at("difference");
        o.require(std::abs(cd.value) <= kZ * cd.std_error, "cube difference not within noise of 0");
        o.detail << " cube diff = " << cd.value << " +- " << cd.std_error
                 << "; B_1^3 diff = " << cross.at("difference").value << " +- "
                 << cross.at("difference").std_error;

        std::vector<double> grid;
        double const mean = 2.0 / max_norm_rate(2);
        for (int k = 0; k < 20; ++k) grid.push_back(mean * (0.1 + 1.9 * k / 19.0));
        auto const bn = bobkov_nazarov_experiment(2, grid, kMcSamples, 902, kZ);
        o.require(bn.verdict == Verdict::Pass || bn.verdict == Verdict::Inconclusive,
                  "bn verdict");
        std::size_t per_t = 0;
        for (auto const& s : bn.statistics) per_t += s.label.rfind("z(t=", 0) == 0;
        o.require(per_t == grid.size(), "per-t statistics");
        o.detail << "; BN verdict " << to_string(bn.verdict)
                 << ", max z = " << bn.at("max_z").value;
    });

    run(10, "criteria 2, 4 and 7 reproduce byte-identical JSON", [](Outcome& o) {
        o.require(!c2_json.empty() && criterion2_reports() == c2_json, "criterion 2");
        o.require(!c4_json.empty() && dump(criterion4_report()) == c4_json, "criterion 4");
        o.require(!c7_json.empty() && dump(criterion7_report()) == c7_json, "criterion 7");
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
