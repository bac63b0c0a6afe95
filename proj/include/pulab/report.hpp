#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pulab/error.hpp"

namespace pulab {

enum class Verdict { Pass, Fail, Inconclusive };

inline std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline Verdict verdict_from_string(std::string_view s)
{
    if (s == "pass") return Verdict::Pass;
    if (s == "fail") return Verdict::Fail;
    if (s == "inconclusive") return Verdict::Inconclusive;
    throw InvalidInput("unknown verdict '" + std::string(s) + "'");
}

/// CLI exit status for a verdict: 0 pass, 3 fail, 4 inconclusive.
constexpr int exit_code(Verdict v) noexcept
{
    switch (v) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 3;
        case Verdict::Inconclusive: return 4;
    }
    return 3;
}

struct Statistic
{
    std::string label;
    double value = 0.0;
    double std_error = 0.0;
};

/// Outcome of one named experiment, with every number it was based on.
struct ExperimentReport
{
    std::string name;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<Statistic> statistics;
    nlohmann::json inputs = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::vector<std::string> notes;

    void add(std::string label, double value, double std_error = 0.0)
    {
        statistics.push_back({std::move(label), value, std_error});
    }

    Statistic const* find(std::string_view label) const noexcept
    {
        for (auto const& s : statistics) {
            if (s.label == label) return &s;
        }
        return nullptr;
    }

    Statistic const& at(std::string_view label) const
    {
        if (auto const* s = find(label)) return *s;
        throw InvalidInput("report '" + name + "' has no statistic '" +
                           std::string(label) + "'");
    }
};

inline void to_json(nlohmann::json& j, Statistic const& s)
{
    j = {{"label", s.label}, {"value", s.value}, {"std_error", s.std_error}};
}

inline void from_json(nlohmann::json const& j, Statistic& s)
{
    j.at("label").get_to(s.label);
    j.at("value").get_to(s.value);
    j.at("std_error").get_to(s.std_error);
}

inline void to_json(nlohmann::json& j, ExperimentReport const& r)
{
    j = nlohmann::json::object();
    j["name"] = r.name;
    j["verdict"] = std::string(to_string(r.verdict));
    j["statistics"] = r.statistics;
    j["inputs"] = r.inputs;
    j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
    if (!r.notes.empty()) {
        j["notes"] = r.notes;
    }
}

inline void from_json(nlohmann::json const& j, ExperimentReport& r)
{
    j.at("name").get_to(r.name);
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    j.at("statistics").get_to(r.statistics);
    r.inputs = j.value("inputs", nlohmann::json::object());
    if (j.contains("seed") && !j["seed"].is_null()) {
        r.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("notes")) {
        j["notes"].get_to(r.notes);
    }
}

}  // namespace pulab
