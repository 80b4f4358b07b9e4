#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curvsense/basis.hpp"

namespace curvsense {

// Truncated expansion over Hamiltonian eigenmodes; amplitudes parallel to
// modes, kept sorted by mode label. For the free models the amplitudes carry
// no lambda dependence; only evolution phases do.
template <class Mode>
struct SpectralState {
    std::vector<Mode> modes;
    std::vector<cplx> amps;

    double norm2() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }

    void normalize() {
        const double n = std::sqrt(norm2());
        if (!(n > 0.0)) throw std::invalid_argument("cannot normalize zero state");
        for (auto& a : amps) a /= n;
    }
};

using SphereState = SpectralState<SphereMode>;
using CylinderState = SpectralState<CylinderMode>;

inline double mode_energy(const SphereMode& m, double lambda, double mass, double hbar) {
    return sphere_energy(m, lambda, mass, hbar);
}
inline double mode_energy(const CylinderMode& m, double lambda, double mass, double hbar) {
    return cylinder_energy(m, lambda, mass, hbar);
}
inline double mode_energy_dlambda(const SphereMode& m, double lambda, double mass,
                                  double hbar) {
    return sphere_energy_dlambda(m, lambda, mass, hbar);
}
inline double mode_energy_dlambda(const CylinderMode& m, double lambda, double mass,
                                  double hbar) {
    return cylinder_energy_dlambda(m, lambda, mass, hbar);
}

// Normalized superposition; duplicate labels merge by amplitude addition.
template <class Mode>
SpectralState<Mode> superposition(std::vector<std::pair<Mode, cplx>> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SpectralState<Mode> state;
    for (const auto& [mode, amp] : terms) {
        if (!state.modes.empty() && state.modes.back() == mode)
            state.amps.back() += amp;
        else {
            state.modes.push_back(mode);
            state.amps.push_back(amp);
        }
    }
    if (!(state.norm2() > 0.0))
        throw std::invalid_argument("superposition: all amplitudes are zero");
    state.normalize();
    return state;
}

// cos(alpha)|ground> + sin(alpha) e^{i beta}|mode>; QFI over this family is
// beta-independent.
SphereState two_level_probe(double alpha, const SphereMode& excited,
                            double beta = 0.0);

// Expansion of the Von Mises packet psi_kappa ~ e^{(kappa/2) cos theta} over
// Y_j0 by Gauss-Legendre quadrature. j_max is raised automatically until the
// truncation tail drops below tail_bound; throws if j_cap cannot satisfy it.
SphereState von_mises_packet(double kappa, int j_max, int j_cap = 4096,
                             double tail_bound = 1e-12);

template <class Mode>
SpectralState<Mode> evolve(const SpectralState<Mode>& state, double t, double lambda,
                           double mass, double hbar = 1.0) {
    SpectralState<Mode> out = state;
    for (std::size_t i = 0; i < out.modes.size(); ++i) {
        const double e = mode_energy(out.modes[i], lambda, mass, hbar);
        out.amps[i] *= std::exp(cplx(0.0, -t * e / hbar));
    }
    return out;
}

// Quantum statistical model at time t: evolved amplitudes plus the analytic
// lambda-derivative of the evolved state (valid for lambda-independent
// eigenvectors, i.e. the free models).
template <class Mode>
struct EvolvedModel {
    SpectralState<Mode> base;
    std::vector<cplx> evolved;
    std::vector<cplx> deriv;
    double t = 0.0;
    double lambda = 1.0;
    double mass = 1.0;
    double hbar = 1.0;

    cplx overlap_deriv() const { // <psi | d_lambda psi>, purely imaginary
        cplx s = 0.0;
        for (std::size_t i = 0; i < evolved.size(); ++i)
            s += std::conj(evolved[i]) * deriv[i];
        return s;
    }
};

using SphereModel = EvolvedModel<SphereMode>;
using CylinderModel = EvolvedModel<CylinderMode>;

template <class Mode>
EvolvedModel<Mode> lambda_derivative(const SpectralState<Mode>& state, double t,
                                     double lambda, double mass, double hbar = 1.0) {
    EvolvedModel<Mode> model;
    model.base = state;
    model.t = t;
    model.lambda = lambda;
    model.mass = mass;
    model.hbar = hbar;
    model.evolved.resize(state.amps.size());
    model.deriv.resize(state.amps.size());
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        const double e = mode_energy(state.modes[i], lambda, mass, hbar);
        const double de = mode_energy_dlambda(state.modes[i], lambda, mass, hbar);
        const cplx phase = std::exp(cplx(0.0, -t * e / hbar));
        model.evolved[i] = state.amps[i] * phase;
        model.deriv[i] = model.evolved[i] * cplx(0.0, -t / hbar) * de;
    }
    return model;
}

template <class Mode>
double mean_energy(const SpectralState<Mode>& state, double lambda, double mass,
                   double hbar = 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < state.amps.size(); ++i)
        s += std::norm(state.amps[i]) * mode_energy(state.modes[i], lambda, mass, hbar);
    return s;
}

template <class Mode>
double energy_variance(const SpectralState<Mode>& state, double lambda, double mass,
                       double hbar = 1.0) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < state.amps.size(); ++i) {
        const double p = std::norm(state.amps[i]);
        const double e = mode_energy(state.modes[i], lambda, mass, hbar);
        s1 += p * e;
        s2 += p * e * e;
    }
    return s2 - s1 * s1;
}

} // namespace curvsense
