// Table of sharp constants C(c; z^M; N, rho) for c = (1, ..., 1) and the
// corresponding most-negative admissible leading coefficient -1/C.
#include "hadpos/threshold.hpp"

#include <cstdio>

using namespace hadpos;

int main() {
    std::printf("%3s %3s %22s %22s\n", "N", "M", "C (exact)", "-1/C (exact)");
    for (long long N = 1; N <= 6; ++N) {
        CoeffVector c{std::vector<Rational>(static_cast<std::size_t>(N), Rational(1))};
        for (long long M = N; M <= N + 3; ++M) {
            ThresholdQuery q{c, M, N, Rational(1)};
            auto tv = threshold_constant(q);
            std::printf("%3lld %3lld %22s %22s\n", N, M, to_string(tv.exact).c_str(),
                        to_string(negative_threshold(q)).c_str());
        }
    }
    return 0;
}
