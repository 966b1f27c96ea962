// Marginal pmf of I for a biased three-sided die, exactly and in doubles.

#include <iomanip>
#include <iostream>

#include "invmult/invmult.hpp"

int main() {
    using namespace invmult;
    const std::uint32_t n = 6;
    const ProbVector<Rational> exact({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
    const ProbVector<double> approx({0.5, 1.0 / 3.0, 1.0 / 6.0});

    const auto pe = marginal_i_pmf(n, exact);
    const auto pd = marginal_i_pmf(n, approx);
    std::cout << std::setprecision(17);
    for (std::size_t i = 0; i < pe.size(); ++i)
        std::cout << "P(I=" << i << ") = " << to_string(pe[i]) << " ~ " << pd[i] << '\n';
}
