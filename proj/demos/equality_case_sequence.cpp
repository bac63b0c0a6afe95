// Projection volumes of the equality-case body next to an l1 ball and an
// Orlicz ball, with the log-concavity gaps g_i.

#include <iostream>

#include "pulab/pulab.hpp"

int main()
{
    using namespace pulab;
    std::vector<BodySpec> const bodies{
        BodySpec::equality_case(6, 1.0, 1.5),
        BodySpec::lp_ball(6, Exponent::finite(1.0), 1.0),
        BodySpec::orlicz_ball(5, YoungFunction::power(3.0)),
    };
    for (auto const& body : bodies) {
        auto const seq = projection_volume_sequence(body, 200'000, 1);
        auto const report = log_concavity_report(seq);
        std::cout << body_to_json(body).dump() << "\n  |K_i|:";
        for (auto const& e : seq.entries) std::cout << ' ' << e.value;
        std::cout << "\n  verdict: " << to_string(report.verdict) << '\n';
        for (auto const& s : report.statistics) {
            if (s.label.rfind("g_", 0) == 0) {
                std::cout << "  " << s.label << " = " << s.value << " +- " << s.std_error << '\n';
            }
        }
    }
}
