#include "curvsense/state.hpp"

#include <numbers>
#include <string>

namespace curvsense {

SphereState two_level_probe(double alpha, const SphereMode& excited, double beta) {
    if (excited.j == 0)
        throw std::invalid_argument("two_level_probe: excited mode must differ from the ground state");
    return superposition<SphereMode>(
        {{make_sphere_mode(0, 0), std::cos(alpha)},
         {make_sphere_mode(excited.j, excited.m),
          std::sin(alpha) * std::exp(cplx(0.0, beta))}});
}

SphereState von_mises_packet(double kappa, int j_max, int j_cap, double tail_bound) {
    if (kappa < 0.0) throw std::invalid_argument("von_mises_packet: kappa must be >= 0");
    if (j_max < 0) throw std::invalid_argument("von_mises_packet: j_max must be >= 0");

    // psi_kappa(theta) = sqrt(kappa / (4 pi sinh kappa)) e^{(kappa/2) cos theta};
    // kappa -> 0 limit is the uniform state. Only m = 0 components appear.
    // Rewritten as sqrt(kappa / (2 pi (1 - e^{-2 kappa}))) e^{kappa (x - 1)/2}
    // so large kappa never overflows.
    const double kap = kappa;
    auto packet = [&](double x) {
        if (kap < 1e-12) return 1.0 / std::sqrt(4.0 * std::numbers::pi);
        const double log_norm = 0.5 * (std::log(kap) - std::log(2.0 * std::numbers::pi) -
                                       std::log1p(-std::exp(-2.0 * kap)));
        return std::exp(log_norm + 0.5 * kap * (x - 1.0));
    };

    int jm = std::max(j_max, 8);
    for (;;) {
        const int n = jm + static_cast<int>(std::ceil(kap)) + 40;
        const GaussRule rule = gauss_legendre(n);
        std::vector<cplx> coeffs(jm + 1);
        for (int j = 0; j <= jm; ++j) {
            double c = 0.0;
            for (int i = 0; i < n; ++i)
                c += rule.weights[i] * normalized_legendre(j, 0, rule.nodes[i]) *
                     packet(rule.nodes[i]);
            coeffs[j] = 2.0 * std::numbers::pi * c;
        }
        double captured = 0.0;
        for (const auto& c : coeffs) captured += std::norm(c);
        const double tail = 1.0 - captured;
        const double cmax2 = [&] {
            double m = 0.0;
            for (const auto& c : coeffs) m = std::max(m, std::norm(c));
            return m;
        }();
        if (tail < tail_bound && std::norm(coeffs[jm]) < 1e-16 * cmax2) {
            SphereState state;
            state.modes.reserve(jm + 1);
            state.amps.reserve(jm + 1);
            for (int j = 0; j <= jm; ++j) {
                state.modes.push_back({j, 0});
                state.amps.push_back(coeffs[j]);
            }
            state.normalize();
            return state;
        }
        if (jm >= j_cap)
            throw std::runtime_error(
                "von_mises_packet: kappa=" + std::to_string(kappa) +
                " needs j_max > " + std::to_string(j_cap) +
                " to reach tail mass < " + std::to_string(tail_bound));
        jm = std::min(j_cap, jm * 2 + 8);
    }
}

} // namespace curvsense
