#pragma once

#include <cstdint>
#include <vector>

#include "curvsense/state.hpp"

namespace curvsense {

// ---------------------------------------------------------------------------
// Quantum Fisher information
// ---------------------------------------------------------------------------

// Pure-state QFI H = 4 (<d|d> - |<psi|d>|^2) from the evolved model.
template <class Mode>
double qfi_pure(const EvolvedModel<Mode>& model) {
    double dd = 0.0;
    cplx pd = 0.0;
    for (std::size_t i = 0; i < model.deriv.size(); ++i) {
        dd += std::norm(model.deriv[i]);
        pd += std::conj(model.evolved[i]) * model.deriv[i];
    }
    return 4.0 * (dd - std::norm(pd));
}

// Closed form: H = 4 t^2 hbar^2 / (M^2 lambda^6) Var(j(j+1)) over |c_jm|^2.
double qfi_sphere_closed(const SphereState& state, double t, double lambda,
                         double mass, double hbar = 1.0);

// Closed form: H = 4 t^2 hbar^2 / (M^2 lambda^6) Var(m^2 - 1/4) over the
// m-marginal; independent of the axial (k) content.
double qfi_cylinder_closed(const CylinderState& state, double t, double lambda,
                           double mass, double hbar = 1.0);

// m-marginal p_m of a cylinder state, aggregated over k labels.
std::vector<std::pair<int, double>> cylinder_m_marginal(const CylinderState& state);

// ---------------------------------------------------------------------------
// Position-measurement densities and Fisher information
// ---------------------------------------------------------------------------

double sphere_position_density(const SphereModel& model, double theta, double phi);
double sphere_position_density_dlambda(const SphereModel& model, double theta,
                                       double phi);
// theta-marginal (includes the sin(theta) measure factor).
double sphere_theta_marginal(const SphereModel& model, double theta);

// theta-marginal of a cylinder model, built from gamma_mn = sum_k c_m(k) c_n*(k)
// and the angular phases e^{-i t (eps_m - eps_n)/hbar}.
double cylinder_theta_density(const CylinderModel& model, double theta);
double cylinder_theta_density_dlambda(const CylinderModel& model, double theta);

struct FiResult {
    double value = 0.0;
    double skipped_mass = 0.0; // probability mass at nodes below the density floor
    bool warning = false;      // skipped mass above 1e-6
};

// F = Int (d_lambda p)^2 / p over the chart; nodes with p < 1e-14 max(p)
// are skipped and their mass reported.
FiResult position_fi_sphere(const SphereModel& model, const QuadratureGrid& grid);

// Same on the cylinder's angular marginal; uniform theta grid with n_theta
// points (requires n_theta >= 4 max|m| + 2).
FiResult position_fi_cylinder(const CylinderModel& model, int n_theta);

// R = F/H in [0,1]; throws std::domain_error when H vanishes.
double fi_qfi_ratio(const SphereModel& model, const QuadratureGrid& grid);
double fi_qfi_ratio(const CylinderModel& model, int n_theta);

// ---------------------------------------------------------------------------
// Sampling and maximum-likelihood estimation
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);
// Per-replica stream seed derived from (seed, index); streams are independent
// of execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct SampleRecord {
    std::vector<SurfacePoint> outcomes;
    double true_lambda = 1.0;
    double t = 0.0;
    std::uint64_t seed = 0;
};

// N i.i.d. draws from p_t(theta,phi|lambda) sin(theta) by rejection sampling
// under the uniform-chart envelope (sum_i |c_i| sqrt((2 j_i + 1)/4pi))^2.
// Deterministic for fixed seed.
SampleRecord sample_positions(const SphereModel& model, int n, std::uint64_t seed);

struct SphereModelFamily {
    SphereState base;
    double t = 1.0;
    double mass = 1.0;
    double hbar = 1.0;

    SphereModel model_at(double lambda) const {
        return lambda_derivative(base, t, lambda, mass, hbar);
    }
};

// Maximizes the sample log-likelihood over [lo, hi] by golden-section search
// (relative tolerance 1e-8). Throws std::runtime_error if the maximum sits at
// an interval boundary.
double mle_radius(const SampleRecord& record, const SphereModelFamily& family,
                  double lo, double hi);

// ---------------------------------------------------------------------------
// Result bundle used by the CLI and experiment drivers
// ---------------------------------------------------------------------------

enum class ReportQuantity { qfi, fi, ratio, mle };

struct EstimationReport {
    ReportQuantity quantity = ReportQuantity::qfi;
    double value = 0.0;
    double t = 0.0;
    double lambda = 0.0;
    double mass = 1.0;
    double hbar = 1.0;
    double skipped_mass = 0.0;
    bool warning = false;
    int grid_polar = 0;
    int grid_azimuth = 0;
    std::uint64_t seed = 0;
};

} // namespace curvsense
