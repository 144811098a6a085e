// Spherical functions, dimensions and a Monte Carlo pairing on
// SU(3)/S(U(2)xU(1)).

#include <cstdio>

#include "grassharm/grassharm.hpp"

int main()
{
    using namespace grassharm;
    const auto space = make_space(2, 1);

    std::printf("weights with l = 1, m_1 <= 4\n");
    for (const auto& w : enumerate_weights(space, 1, 4))
        std::printf("  m = %d  d = %s  kappa = %g\n", w.m1(), dimension(space, w).str().c_str(), casimir(space, w));

    const TorusPoint a{{0.8}};
    const auto w = make_weight(space, 1, {2});
    const OrbitalMeasureSpec spec{1, {a, TorusPoint{{0.4}}}};
    const auto cmp = pairing_check(spec, space, w, 20000, MCConfig{.seed = 1, .workers = 2});
    std::printf("psi(a) = %.6f\n", spherical_value(space, w, a));
    std::printf("pairing: MC %.5f +- %.5f, exact %.5f\n", cmp.estimate.value.real(), cmp.estimate.std_error,
                cmp.reference.real());

    std::printf("C(2,1,nu=1) = %lld\n", static_cast<long long>(smoothness_threshold(space, 1)));
    return 0;
}
