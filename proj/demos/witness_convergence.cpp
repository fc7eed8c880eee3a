// Convergence of the rank-one witness family: the exact critical value
// along u(t) = (1 - t, 1 - 2t, 1 - 3t) climbs to the sharp constant 19
// as t -> 0, while the limit matrix itself only attains 1/3.
#include "hadpos/pencil.hpp"
#include "hadpos/threshold.hpp"

#include <cstdio>

using namespace hadpos;

int main() {
    CoeffVector c{std::vector<Rational>(3, Rational(1))};
    const Rational rho(1);
    std::vector<Rational> grid;
    for (Rational t(1, 10); t >= Rational(1, 10000000); t /= 10) grid.push_back(t);

    std::printf("%12s %20s %14s\n", "t", "value (exact)", "value (float)");
    for (const auto& [t, v] : sup_over_witness_family(c, 3, rho, grid))
        std::printf("%12s %20s %14.10f\n", to_string(t).c_str(), to_string(v).c_str(),
                    to_double(v));

    auto bound = threshold_constant({c, 3, 3, rho});
    std::printf("\nsharp constant C = %s\n", to_string(bound.exact).c_str());
    double at_limit = critical_value(HermMatrix{all_ones(3)}, c, 3).value;
    std::printf("value at the limit matrix (all-ones): %.10f  (discontinuous drop)\n",
                at_limit);
    return 0;
}
