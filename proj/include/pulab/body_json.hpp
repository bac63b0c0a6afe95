#pragma once

// Body-spec documents.
//
//   {"family": "cube",          "dim": n, "L": half_side}
//   {"family": "lp_ball",       "dim": n, "p": 1.5 | "inf", "r": radius}
//   {"family": "orlicz",        "dim": n, "young": <young>, "level": n0}
//   {"family": "equality_case", "dim": n, "L": half_side, "a": apex}
//
//   <young> = {"kind": "power", "p": 2.0}
//           | {"kind": "pwl", "knots": [[0, 0], [t1, f1], ...]}
//
// "level" is optional and defaults to "dim".  Errors carry a JSON pointer
// to the offending field.

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "pulab/body.hpp"
#include "pulab/error.hpp"

namespace pulab {

namespace detail {

inline nlohmann::json const& field(nlohmann::json const& j, std::string const& path,
                                   char const* key)
{
    if (!j.is_object()) {
        throw SpecError(path.empty() ? "/" : path, "expected a JSON object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw SpecError(path + "/" + key, "missing required field");
    }
    return *it;
}

inline double number_field(nlohmann::json const& j, std::string const& path,
                           char const* key)
{
    auto const& v = field(j, path, key);
    if (!v.is_number()) {
        throw SpecError(path + "/" + key, "expected a number");
    }
    return v.get<double>();
}

template <class Fn>
auto with_pointer(std::string const& pointer, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (SpecError const&) {
        throw;
    } catch (InvalidInput const& e) {
        throw SpecError(pointer, e.what());
    }
}

}  // namespace detail

inline YoungFunction young_from_json(nlohmann::json const& j, std::string const& path)
{
    auto const& kind = detail::field(j, path, "kind");
    if (kind == "power") {
        double const p = detail::number_field(j, path, "p");
        return detail::with_pointer(path + "/p", [&] { return YoungFunction::power(p); });
    }
    if (kind == "pwl") {
        auto const& knots = detail::field(j, path, "knots");
        if (!knots.is_array()) {
            throw SpecError(path + "/knots", "expected an array of [t, f(t)] pairs");
        }
        std::vector<YoungFunction::Knot> parsed;
        for (std::size_t i = 0; i < knots.size(); ++i) {
            auto const& k = knots[i];
            if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
                throw SpecError(path + "/knots/" + std::to_string(i),
                                "expected a pair [t, f(t)]");
            }
            parsed.push_back({k[0].get<double>(), k[1].get<double>()});
        }
        return detail::with_pointer(path + "/knots", [&] {
            return YoungFunction::piecewise_linear(std::move(parsed));
        });
    }
    throw SpecError(path + "/kind", "expected \"power\" or \"pwl\"");
}

inline nlohmann::json young_to_json(YoungFunction const& f)
{
    if (f.kind() == YoungFunction::Kind::Power) {
        return {{"kind", "power"}, {"p", f.exponent()}};
    }
    nlohmann::json knots = nlohmann::json::array();
    for (auto const& k : f.knots()) knots.push_back({k.t, k.value});
    return {{"kind", "pwl"}, {"knots", knots}};
}

inline BodySpec body_from_json(nlohmann::json const& j)
{
    auto const& family = detail::field(j, "", "family");
    auto const& dim_field = detail::field(j, "", "dim");
    if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1) {
        throw SpecError("/dim", "expected a positive integer");
    }
    auto const dim = static_cast<std::size_t>(dim_field.get<long long>());

    if (family == "cube") {
        double const L = detail::number_field(j, "", "L");
        return detail::with_pointer("/L", [&] { return BodySpec::cube(dim, L); });
    }
    if (family == "lp_ball") {
        auto const& p_field = detail::field(j, "", "p");
        Exponent p = Exponent::infinity();
        if (p_field.is_string()) {
            if (p_field != "inf") {
                throw SpecError("/p", "expected a number >= 1 or \"inf\"");
            }
        } else if (p_field.is_number()) {
            p = detail::with_pointer("/p",
                                     [&] { return Exponent::finite(p_field.get<double>()); });
        } else {
            throw SpecError("/p", "expected a number >= 1 or \"inf\"");
        }
        double const r = detail::number_field(j, "", "r");
        return detail::with_pointer("/r", [&] { return BodySpec::lp_ball(dim, p, r); });
    }
    if (family == "orlicz") {
        auto young = young_from_json(detail::field(j, "", "young"), "/young");
        double level = static_cast<double>(dim);
        if (j.contains("level")) {
            level = detail::number_field(j, "", "level");
        }
        return detail::with_pointer(
            "/level", [&] { return BodySpec::orlicz_ball(dim, std::move(young), level); });
    }
    if (family == "equality_case") {
        double const L = detail::number_field(j, "", "L");
        double const a = detail::number_field(j, "", "a");
        return detail::with_pointer("/a",
                                    [&] { return BodySpec::equality_case(dim, L, a); });
    }
    throw SpecError("/family",
                    "expected one of \"cube\", \"lp_ball\", \"orlicz\", \"equality_case\"");
}

inline nlohmann::json body_to_json(BodySpec const& body)
{
    nlohmann::json j = {{"family", std::string(to_string(body.family()))},
                        {"dim", body.dim()}};
    std::visit(detail::overloaded{
                   [&](CubeParams const& c) { j["L"] = c.half_side; },
                   [&](LpBallParams const& b) {
                       j["p"] = b.p.is_infinite() ? nlohmann::json("inf")
                                                  : nlohmann::json(b.p.value());
                       j["r"] = b.radius;
                   },
                   [&](OrliczParams const& o) {
                       j["young"] = young_to_json(o.young);
                       j["level"] = o.level;
                   },
                   [&](EqualityCaseParams const& e) {
                       j["L"] = e.half_side;
                       j["a"] = e.apex;
                   }},
               body.params());
    return j;
}

/// Reads a body-spec file; I/O and JSON syntax errors surface as SpecError.
inline BodySpec read_body_spec(std::string const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw SpecError("/", "cannot open body-spec file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (nlohmann::json::parse_error const& e) {
        throw SpecError("/", std::string("JSON syntax error: ") + e.what());
    }
    return body_from_json(j);
}

}  // namespace pulab
