// Sixty rolls of a fair die: how well mixed is the observed sequence?

#include <iostream>

#include "invmult/invmult.hpp"

int main() {
    using namespace invmult;
    const Composition y{10, 10, 10, 10, 10, 10};
    std::cout << "max inversions for " << y << ": " << max_inversions(y) << '\n'
              << "E(I | Y = y): " << to_string(conditional_expectation_i(y)) << '\n';

    const auto p = ProbVector<Rational>::equal(6);
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto r = simulate_experiment(60, p, seed);
        std::cout << "seed " << seed << ": counts " << r.counts << ", I = " << r.inversions
                  << ", H = " << (r.h ? std::to_string(r.h->convert_to<double>()) : "undefined") << '\n';
    }

    const auto m = moments_of_i(60, p);
    std::cout << "E(I) = " << to_string(m.mean()) << ", V(I) = " << to_string(m.variance()) << '\n';
}
