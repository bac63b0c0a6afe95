// Where does exp(-2 (n!)^{1/n} max|x_i|) break the correlation inequality?

#include <iostream>

#include "pulab/experiments.hpp"

int main(int argc, char** argv)
{
    using namespace pulab;
    std::size_t const n = argc > 1 ? std::stoul(argv[1]) : 2;
    double const mean = static_cast<double>(n) / max_norm_rate(n);
    std::vector<double> grid;
    for (int k = 1; k <= 12; ++k) grid.push_back(mean * 0.2 * k);
    auto const r = bobkov_nazarov_experiment(n, grid, 1'000'000, 7);
    for (double t : grid) {
        auto const tag = "(t=" + detail::fmt(t) + ")";
        auto const d = r.at("difference" + tag);
        std::cout << "t=" << t << "  lhs-rhs=" << d.value << "  z=" << d.value / d.std_error
                  << '\n';
    }
    std::cout << "verdict: " << to_string(r.verdict) << '\n';
    for (auto const& note : r.notes) std::cout << note << '\n';
}
