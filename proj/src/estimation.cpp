#include "curvsense/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace curvsense {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double density_floor_ratio = 1e-14;

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

cplx sphere_amplitude_at(const SphereModel& model, const std::vector<cplx>& coeffs,
                         double theta, double phi) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < model.base.modes.size(); ++i)
        s += coeffs[i] * sphere_harmonic(model.base.modes[i], theta, phi);
    return s;
}

// gamma_mn and the m labels of a cylinder model.
struct AngularCorrelation {
    std::vector<int> ms;
    std::vector<std::vector<cplx>> gamma;
};

AngularCorrelation angular_correlation(const CylinderState& state) {
    AngularCorrelation corr;
    for (const auto& mode : state.modes)
        if (std::find(corr.ms.begin(), corr.ms.end(), mode.m) == corr.ms.end())
            corr.ms.push_back(mode.m);
    std::sort(corr.ms.begin(), corr.ms.end());

    std::map<double, std::vector<cplx>> by_k;
    for (std::size_t i = 0; i < state.modes.size(); ++i) {
        auto& row = by_k[state.modes[i].k];
        if (row.empty()) row.assign(corr.ms.size(), 0.0);
        const auto mi = std::lower_bound(corr.ms.begin(), corr.ms.end(),
                                         state.modes[i].m) - corr.ms.begin();
        row[mi] += state.amps[i];
    }

    corr.gamma.assign(corr.ms.size(), std::vector<cplx>(corr.ms.size(), 0.0));
    for (const auto& [k, row] : by_k)
        for (std::size_t a = 0; a < row.size(); ++a)
            for (std::size_t b = 0; b < row.size(); ++b)
                corr.gamma[a][b] += row[a] * std::conj(row[b]);
    return corr;
}

double cylinder_angular_eps(int m, const CylinderModel& model) {
    return model.hbar * model.hbar * (m * m - 0.25) /
           (2.0 * model.mass * model.lambda * model.lambda);
}

} // namespace

double qfi_sphere_closed(const SphereState& state, double t, double lambda,
                         double mass, double hbar) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < state.modes.size(); ++i) {
        const double p = std::norm(state.amps[i]);
        const double jj = state.modes[i].j * (state.modes[i].j + 1.0);
        s1 += p * jj;
        s2 += p * jj * jj;
    }
    const double l3 = lambda * lambda * lambda;
    return 4.0 * t * t * hbar * hbar * (s2 - s1 * s1) / (mass * mass * l3 * l3);
}

std::vector<std::pair<int, double>> cylinder_m_marginal(const CylinderState& state) {
    std::map<int, double> pm;
    for (std::size_t i = 0; i < state.modes.size(); ++i)
        pm[state.modes[i].m] += std::norm(state.amps[i]);
    return {pm.begin(), pm.end()};
}

double qfi_cylinder_closed(const CylinderState& state, double t, double lambda,
                           double mass, double hbar) {
    double s1 = 0.0, s2 = 0.0;
    for (const auto& [m, p] : cylinder_m_marginal(state)) {
        const double v = m * m - 0.25;
        s1 += p * v;
        s2 += p * v * v;
    }
    const double l3 = lambda * lambda * lambda;
    return 4.0 * t * t * hbar * hbar * (s2 - s1 * s1) / (mass * mass * l3 * l3);
}

double sphere_position_density(const SphereModel& model, double theta, double phi) {
    return std::norm(sphere_amplitude_at(model, model.evolved, theta, phi));
}

double sphere_position_density_dlambda(const SphereModel& model, double theta,
                                       double phi) {
    const cplx psi = sphere_amplitude_at(model, model.evolved, theta, phi);
    const cplx dpsi = sphere_amplitude_at(model, model.deriv, theta, phi);
    return 2.0 * std::real(std::conj(psi) * dpsi);
}

double sphere_theta_marginal(const SphereModel& model, double theta) {
    // Group by m: cross terms with different m integrate to zero over phi.
    std::map<int, cplx> by_m;
    for (std::size_t i = 0; i < model.base.modes.size(); ++i) {
        const auto& mode = model.base.modes[i];
        by_m[mode.m] += model.evolved[i] *
                        sphere_harmonic(mode, theta, 0.0);
    }
    double sum = 0.0;
    for (const auto& [m, amp] : by_m) sum += std::norm(amp);
    return 2.0 * pi * std::sin(theta) * sum;
}

double cylinder_theta_density(const CylinderModel& model, double theta) {
    const AngularCorrelation corr = angular_correlation(model.base);
    cplx q = 0.0;
    for (std::size_t a = 0; a < corr.ms.size(); ++a)
        for (std::size_t b = 0; b < corr.ms.size(); ++b) {
            const double de = cylinder_angular_eps(corr.ms[a], model) -
                              cylinder_angular_eps(corr.ms[b], model);
            q += corr.gamma[a][b] *
                 std::exp(cplx(0.0, (corr.ms[a] - corr.ms[b]) * theta)) *
                 std::exp(cplx(0.0, -model.t * de / model.hbar));
        }
    return std::real(q) / (2.0 * pi);
}

double cylinder_theta_density_dlambda(const CylinderModel& model, double theta) {
    const AngularCorrelation corr = angular_correlation(model.base);
    const double l3 = model.lambda * model.lambda * model.lambda;
    cplx dq = 0.0;
    for (std::size_t a = 0; a < corr.ms.size(); ++a)
        for (std::size_t b = 0; b < corr.ms.size(); ++b) {
            const int ma = corr.ms[a], mb = corr.ms[b];
            const double de = cylinder_angular_eps(ma, model) -
                              cylinder_angular_eps(mb, model);
            dq += corr.gamma[a][b] *
                  cplx(0.0, model.t * model.hbar * (ma * ma - mb * mb) /
                                (model.mass * l3)) *
                  std::exp(cplx(0.0, (ma - mb) * theta)) *
                  std::exp(cplx(0.0, -model.t * de / model.hbar));
        }
    return std::real(dq) / (2.0 * pi);
}

FiResult position_fi_sphere(const SphereModel& model, const QuadratureGrid& grid) {
    if (grid.surface != SurfaceKind::sphere)
        throw std::invalid_argument("position_fi_sphere: grid is not a sphere grid");
    int j_max = 0;
    for (const auto& mode : model.base.modes) j_max = std::max(j_max, mode.j);
    if (grid.exactness < 2 * j_max)
        throw std::invalid_argument("position_fi_sphere: grid exactness below 2 j_max");

    std::vector<double> p(grid.nodes.size());
    double pmax = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        p[i] = sphere_position_density(model, grid.nodes[i].point.q1,
                                       grid.nodes[i].point.q2);
        pmax = std::max(pmax, p[i]);
    }

    FiResult out;
    const double floor = density_floor_ratio * pmax;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        if (p[i] < floor) {
            out.skipped_mass += grid.nodes[i].weight * p[i];
            continue;
        }
        const double dp = sphere_position_density_dlambda(
            model, grid.nodes[i].point.q1, grid.nodes[i].point.q2);
        out.value += grid.nodes[i].weight * dp * dp / p[i];
    }
    out.warning = out.skipped_mass > 1e-6;
    return out;
}

FiResult position_fi_cylinder(const CylinderModel& model, int n_theta) {
    int m_max = 0;
    for (const auto& mode : model.base.modes)
        m_max = std::max(m_max, std::abs(mode.m));
    if (n_theta < 4 * m_max + 2)
        throw std::invalid_argument("position_fi_cylinder: need n_theta >= 4 max|m| + 2");

    const double w = 2.0 * pi / n_theta;
    std::vector<double> q(n_theta);
    double qmax = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        q[i] = cylinder_theta_density(model, i * w);
        qmax = std::max(qmax, q[i]);
    }

    FiResult out;
    const double floor = density_floor_ratio * qmax;
    for (int i = 0; i < n_theta; ++i) {
        if (q[i] < floor) {
            out.skipped_mass += w * q[i];
            continue;
        }
        const double dq = cylinder_theta_density_dlambda(model, i * w);
        out.value += w * dq * dq / q[i];
    }
    out.warning = out.skipped_mass > 1e-6;
    return out;
}

namespace {
double checked_ratio(double f, double h) {
    if (h < 1e-300)
        throw std::domain_error("fi_qfi_ratio: QFI is zero, ratio undefined");
    return f / h;
}
} // namespace

double fi_qfi_ratio(const SphereModel& model, const QuadratureGrid& grid) {
    return checked_ratio(position_fi_sphere(model, grid).value, qfi_pure(model));
}

double fi_qfi_ratio(const CylinderModel& model, int n_theta) {
    return checked_ratio(position_fi_cylinder(model, n_theta).value, qfi_pure(model));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

SampleRecord sample_positions(const SphereModel& model, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_positions: need n >= 1");

    // |Y_jm| <= sqrt((2j+1)/4pi) pointwise, so this bounds p sin(theta).
    double bound = 0.0;
    for (std::size_t i = 0; i < model.base.modes.size(); ++i)
        bound += std::abs(model.evolved[i]) *
                 std::sqrt((2.0 * model.base.modes[i].j + 1.0) / (4.0 * pi));
    const double envelope = bound * bound;
    if (!(envelope > 0.0))
        throw std::runtime_error("sample_positions: zero density, no envelope");

    SampleRecord record;
    record.true_lambda = model.lambda;
    record.t = model.t;
    record.seed = seed;
    record.outcomes.reserve(n);

    std::mt19937_64 eng(seed);
    while (static_cast<int>(record.outcomes.size()) < n) {
        const double theta = pi * uniform01(eng);
        const double phi = 2.0 * pi * uniform01(eng);
        const double u = envelope * uniform01(eng);
        const double f = sphere_position_density(model, theta, phi) * std::sin(theta);
        if (u < f) record.outcomes.push_back(sphere_point(theta, phi));
    }
    return record;
}

double mle_radius(const SampleRecord& record, const SphereModelFamily& family,
                  double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("mle_radius: invalid search interval");

    // Y values are lambda-independent; cache them per sample and mode.
    const std::size_t n_modes = family.base.modes.size();
    std::vector<cplx> yvals(record.outcomes.size() * n_modes);
    for (std::size_t i = 0; i < record.outcomes.size(); ++i)
        for (std::size_t k = 0; k < n_modes; ++k)
            yvals[i * n_modes + k] =
                sphere_harmonic(family.base.modes[k], record.outcomes[i].q1,
                                record.outcomes[i].q2);

    auto loglike = [&](double lambda) {
        std::vector<cplx> coeff(n_modes);
        for (std::size_t k = 0; k < n_modes; ++k) {
            const double e =
                sphere_energy(family.base.modes[k], lambda, family.mass, family.hbar);
            coeff[k] = family.base.amps[k] *
                       std::exp(cplx(0.0, -family.t * e / family.hbar));
        }
        double ll = 0.0;
        for (std::size_t i = 0; i < record.outcomes.size(); ++i) {
            cplx amp = 0.0;
            for (std::size_t k = 0; k < n_modes; ++k)
                amp += coeff[k] * yvals[i * n_modes + k];
            ll += std::log(std::max(std::norm(amp), 1e-300));
        }
        return ll;
    };

    // Golden-section maximization.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = loglike(c), fd = loglike(d);
    while (b - a > 1e-8 * 0.5 * (a + b)) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = loglike(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = loglike(d);
        }
    }
    const double lambda_hat = 0.5 * (a + b);
    const double margin = 1e-6 * (hi - lo);
    if (lambda_hat - lo < margin || hi - lambda_hat < margin)
        throw std::runtime_error("mle_radius: maximum at interval boundary");
    return lambda_hat;
}

} // namespace curvsense
