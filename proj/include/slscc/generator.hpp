#pragma once

#include <cstdint>
#include <random>

#include "slscc/instance.hpp"

namespace slscc {

/// Seeded random instances that satisfy the Wagner-Whitin cost condition by
/// construction: alpha is built backward with alpha_i = alpha_{i+1} + u -
/// h_i * w_i where w_i is 1 in the first stage and max(1 - epsilon, 0.1)
/// afterwards, so alpha_i + w_i h_i >= alpha_{i+1} always holds (clamping
/// alpha at zero only increases the margin).
struct GenParams {
    int T = 4;
    int p = 2;
    int m = 2;
    double epsilon = 0.1;
    std::uint64_t seed = 1;
};

namespace detail {

inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uint_in(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

} // namespace detail

inline Instance generate_instance(const GenParams& gp) {
    if (gp.T < 1 || gp.p < 1 || gp.p > gp.T || gp.m < 1)
        throw Error("generate_instance: need T >= p >= 1 and m >= 1");
    if (gp.epsilon < 0.0 || gp.epsilon >= 1.0)
        throw Error("generate_instance: epsilon must lie in [0, 1)");

    std::mt19937_64 rng(gp.seed);
    Instance inst;
    inst.T = gp.T;
    inst.p = gp.p;
    inst.epsilon = gp.epsilon;

    inst.d.resize(gp.p);
    for (double& v : inst.d) v = detail::uint_in(rng, 0, 20);

    const int m = (gp.T == gp.p) ? 1 : gp.m; // empty second stage: one trivial scenario
    inst.scenarios.resize(m);
    for (int j = 0; j < m; ++j) {
        inst.scenarios[j].demands.resize(gp.T - gp.p);
        for (double& v : inst.scenarios[j].demands) v = detail::uint_in(rng, 0, 20);
    }
    if (m == 1) {
        inst.scenarios[0].prob = 1.0;
    } else {
        std::vector<double> w(m);
        double sum = 0.0;
        for (double& v : w) {
            v = 0.1 + detail::u01(rng);
            sum += v;
        }
        for (int j = 0; j < m; ++j) inst.scenarios[j].prob = w[j] / sum;
    }

    inst.beta.resize(gp.T);
    for (double& v : inst.beta) v = 1.0 + 49.0 * detail::u01(rng);
    inst.h.resize(gp.T);
    for (double& v : inst.h) v = 0.1 + 1.9 * detail::u01(rng);

    inst.alpha.assign(gp.T, 0.0);
    inst.alpha[gp.T - 1] = 1.0 + 4.0 * detail::u01(rng);
    for (int i = gp.T - 2; i >= 0; --i) {
        const double w = (i < gp.p) ? 1.0 : std::max(1.0 - gp.epsilon, 0.1);
        const double u = detail::u01(rng);
        inst.alpha[i] = pos_part(inst.alpha[i + 1] + u - inst.h[i] * w);
    }
    return inst;
}

} // namespace slscc
