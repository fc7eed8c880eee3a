// Orbit-block stratification of one PSD matrix under the three entry
// groups, with the compressed matrix and stratum dimensions.
#include "hadpos/matrix_io.hpp"
#include "hadpos/strata.hpp"

#include <cstdio>

using namespace hadpos;

int main() {
    // 4x4 PSD matrix: coordinates {0,1} share a constant orbit, {2,3}
    // agree only in modulus, so the three groups see different partitions.
    const Complex I{0.0, 1.0};
    CVector u(4);
    u << Complex(1, 0), Complex(1, 0), Complex(1, 0), I;
    CMatrix a = u * u.adjoint();
    a(0, 0) = a(1, 1) = a(0, 1) = a(1, 0) = 2.0; // rescale the first orbit
    HermMatrix A{std::move(a)};

    for (GroupTag g : {GroupTag::Trivial, GroupTag::Modulus, GroupTag::Full}) {
        auto d = stratify(A, g);
        std::printf("group = %s\n", group_name(g));
        std::printf("  partition = %s\n", json(d.partition.blocks).dump().c_str());
        std::printf("  stratum dimension = %lld\n",
                    strata_dimension(d.partition, g, A.dim()));
        std::printf("  reconstruction residue = %.3e\n",
                    (reconstruct(d) - A.a).cwiseAbs().maxCoeff());
    }
    return 0;
}
