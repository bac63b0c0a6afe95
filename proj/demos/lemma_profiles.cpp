// Gap of the one-dimensional integral inequality for a few concave profiles.

#include <iomanip>
#include <iostream>

#include "pulab/profile.hpp"

int main()
{
    using namespace pulab;
    std::vector<std::pair<char const*, ConcaveProfile>> const profiles{
        {"affine(1)", ConcaveProfile::affine(1.0)},
        {"affine(0.5)", ConcaveProfile::affine(0.5)},
        {"power(0.5)", ConcaveProfile::power(0.5)},
        {"pwl", ConcaveProfile::piecewise_linear({{0, 1}, {0.4, 0.9}, {1, 0.3}, {1.3, 0}})},
    };
    std::cout << std::setw(12) << "profile";
    for (std::size_t n = 3; n <= 8; ++n) std::cout << std::setw(13) << ("n=" + std::to_string(n));
    std::cout << '\n';
    for (auto const& [name, f] : profiles) {
        std::cout << std::setw(12) << name;
        for (std::size_t n = 3; n <= 8; ++n) {
            std::cout << std::setw(13) << std::setprecision(5) << lemma1_gap(f, n, 4096).gap;
        }
        std::cout << '\n';
    }
}
