#pragma once

// Projection-volume sequences (|K_1|, ..., |K_n|) and the checks run on
// them: log-concavity and geometricity.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pulab/body.hpp"
#include "pulab/body_json.hpp"
#include "pulab/report.hpp"
#include "pulab/stats.hpp"
#include "pulab/volume.hpp"

namespace pulab {

struct ProjectionVolumeSequence
{
    /// Absent for sequences replayed from a file without a body.
    std::optional<BodySpec> body;
    /// entries[i - 1] is |K_i|.
    std::vector<VolumeEstimate> entries;
    std::vector<std::string> notes;

    std::vector<double> values() const
    {
        std::vector<double> v;
        for (auto const& e : entries) v.push_back(e.value);
        return v;
    }

    std::vector<double> std_errors() const
    {
        std::vector<double> v;
        for (auto const& e : entries) v.push_back(e.std_error);
        return v;
    }

    bool all_exact() const
    {
        for (auto const& e : entries) {
            if (e.method != Method::Exact) return false;
        }
        return true;
    }
};

/// A sequence of exactly known values, e.g. for replaying a file.
inline ProjectionVolumeSequence exact_sequence(std::vector<double> const& values)
{
    ProjectionVolumeSequence seq;
    for (double v : values) {
        seq.entries.push_back({v, 0.0, Method::Exact, 0, std::nullopt});
        seq.notes.push_back("given");
    }
    return seq;
}

inline void to_json(nlohmann::json& j, ProjectionVolumeSequence const& s)
{
    j = nlohmann::json::object();
    j["body"] = s.body ? body_to_json(*s.body) : nlohmann::json(nullptr);
    j["entries"] = s.entries;
    j["notes"] = s.notes;
}

inline void from_json(nlohmann::json const& j, ProjectionVolumeSequence& s)
{
    if (j.contains("body") && !j["body"].is_null()) {
        s.body = body_from_json(j["body"]);
    }
    j.at("entries").get_to(s.entries);
    s.notes = j.value("notes", std::vector<std::string>(s.entries.size(), "given"));
}

/// |K_i| for i = 1..n, exact when a closed form exists and otherwise by
/// hit-or-miss with `mc_samples` samples under an independent seed per i.
inline ProjectionVolumeSequence projection_volume_sequence(BodySpec const& body,
                                                           std::uint64_t mc_samples,
                                                           std::uint64_t seed)
{
    ProjectionVolumeSequence seq;
    seq.body = body;
    for (std::size_t i = 1; i <= body.dim(); ++i) {
        auto const k = project(body, i);
        if (auto exact = exact_volume(k)) {
            seq.entries.push_back(*exact);
            seq.notes.push_back("exact formula");
        } else {
            seq.entries.push_back(mc_volume(k, mc_samples, mix_seed(seed, i)));
            seq.notes.push_back("monte carlo (box hit-or-miss)");
        }
    }
    return seq;
}

/// g_i = |K_i|^2 - |K_{i-1}| |K_{i+1}| for i = 2..n-1.
///
/// Entry errors are propagated to first order.  The verdict is Fail when
/// some g_i < -z stderr(g_i); for all-exact sequences (stderr 0) any g_i
/// below a round-off allowance of 1e-12 |K_i|^2 fails.
inline ExperimentReport log_concavity_report(ProjectionVolumeSequence const& seq,
                                             double z_threshold = 3.0)
{
    std::size_t const n = seq.entries.size();
    if (n < 3) throw InvalidInput("log_concavity_report needs a sequence of length >= 3");

    ExperimentReport report;
    report.name = "log_concavity";
    report.inputs = {{"length", n}, {"z_threshold", z_threshold}, {"all_exact", seq.all_exact()}};
    if (seq.body) report.inputs["body"] = body_to_json(*seq.body);

    auto const v = seq.values();
    auto const s = seq.std_errors();
    bool ok = true;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double const a = v[i - 1];
        double const b = v[i];
        double const c = v[i + 1];
        double const g = b * b - a * c;
        double const sg = std::sqrt(std::pow(2.0 * b * s[i], 2) + std::pow(c * s[i - 1], 2) +
                                    std::pow(a * s[i + 1], 2));
        double const ratio = b * b / (a * c);
        double const sr = ratio * std::sqrt(std::pow(2.0 * s[i] / b, 2) +
                                            std::pow(s[i - 1] / a, 2) +
                                            std::pow(s[i + 1] / c, 2));
        auto const idx = std::to_string(i + 1);
        report.add("g_" + idx, g, sg);
        report.add("ratio_" + idx, ratio, sr);

        double const allowance = sg > 0.0 ? z_threshold * sg : 1e-12 * b * b;
        if (g < -allowance) {
            ok = false;
            report.notes.push_back("log-concavity violated at i = " + idx);
        }
    }
    report.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return report;
}

/// Pass iff all consecutive ratios |K_{i+1}| / |K_i| agree with the first
/// one within rel_tol, widened by z combined standard errors when any entry
/// is estimated.
inline ExperimentReport geometric_sequence_check(ProjectionVolumeSequence const& seq,
                                                 double rel_tol, double z_threshold = 3.0)
{
    std::size_t const n = seq.entries.size();
    if (n < 2) throw InvalidInput("geometric_sequence_check needs length >= 2");

    ExperimentReport report;
    report.name = "geometric_sequence";
    report.inputs = {{"length", n}, {"rel_tol", rel_tol}, {"z_threshold", z_threshold}};
    if (seq.body) report.inputs["body"] = body_to_json(*seq.body);

    auto const v = seq.values();
    auto const s = seq.std_errors();
    double const first = v[1] / v[0];
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double const r = v[i + 1] / v[i];
        double const sr = stats::delta_se(v, s, [i](std::vector<double> const& w) {
            return w[i + 1] / w[i];
        });
        report.add("ratio_" + std::to_string(i + 1), r, sr);
        double const sd = stats::delta_se(v, s, [i](std::vector<double> const& w) {
            return w[i + 1] / w[i] - w[1] / w[0];
        });
        if (std::abs(r - first) > rel_tol * std::abs(first) + z_threshold * sd) {
            ok = false;
            report.notes.push_back("ratio " + std::to_string(i + 1) + " differs from ratio 1");
        }
    }
    report.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return report;
}

}  // namespace pulab
