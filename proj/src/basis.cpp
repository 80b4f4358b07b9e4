#include "curvsense/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace curvsense {

namespace {
constexpr double pi = std::numbers::pi;
}

SphereMode make_sphere_mode(int j, int m) {
    if (j < 0) throw std::invalid_argument("sphere mode requires j >= 0");
    if (std::abs(m) > j) throw std::invalid_argument("sphere mode requires |m| <= j");
    return {j, m};
}

double normalized_legendre(int j, int m, double x) {
    if (m < 0 || j < m) throw std::invalid_argument("normalized_legendre: need 0 <= m <= j");
    const double s2 = std::max(0.0, 1.0 - x * x);
    const double s = std::sqrt(s2);

    // Seed P~_mm, then climb in j. The sectoral seed multiplies in factors
    // sqrt((2l+1)/(2l)) sin(theta) one at a time to stay in range.
    double pmm = 1.0 / std::sqrt(4.0 * pi);
    for (int l = 1; l <= m; ++l) pmm *= std::sqrt((2.0 * l + 1.0) / (2.0 * l)) * s;
    if (j == m) return pmm;

    double pm1 = pmm;                                      // P~_{m,m}
    double p = std::sqrt(2.0 * m + 3.0) * x * pmm;         // P~_{m+1,m}
    for (int l = m + 2; l <= j; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
        const double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m) /
                                   (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        const double next = a * (x * p - b * pm1);
        pm1 = p;
        p = next;
    }
    return p;
}

cplx sphere_harmonic(const SphereMode& mode, double theta, double phi) {
    const int am = std::abs(mode.m);
    if (am > mode.j) throw std::invalid_argument("sphere_harmonic: |m| > j");
    const double plm = normalized_legendre(mode.j, am, std::cos(theta));
    // (-1)^((|m|-m)/2): unity for m >= 0, (-1)^|m| for m < 0.
    const double phase = (mode.m >= 0 || am % 2 == 0) ? 1.0 : -1.0;
    return phase * plm * std::exp(cplx(0.0, mode.m * phi));
}

double sphere_energy(const SphereMode& mode, double lambda, double mass, double hbar) {
    if (!(lambda > 0.0)) throw std::invalid_argument("sphere_energy: lambda must be positive");
    return hbar * hbar * mode.j * (mode.j + 1.0) / (2.0 * mass * lambda * lambda);
}

double sphere_energy_dlambda(const SphereMode& mode, double lambda, double mass,
                             double hbar) {
    return -hbar * hbar * mode.j * (mode.j + 1.0) / (mass * lambda * lambda * lambda);
}

cplx cylinder_mode_amplitude(const CylinderMode& mode, double theta, double z) {
    return std::exp(cplx(0.0, mode.k * z + mode.m * theta)) / (2.0 * pi);
}

double cylinder_energy(const CylinderMode& mode, double lambda, double mass,
                       double hbar) {
    if (!(lambda > 0.0)) throw std::invalid_argument("cylinder_energy: lambda must be positive");
    const double il2 = 1.0 / (lambda * lambda);
    return hbar * hbar / (2.0 * mass) *
           (mode.k * mode.k + mode.m * mode.m * il2 - 0.25 * il2);
}

double cylinder_energy_dlambda(const CylinderMode& mode, double lambda,
                               double mass, double hbar) {
    return -hbar * hbar * (mode.m * mode.m - 0.25) /
           (mass * lambda * lambda * lambda);
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= n; ++l) {
                const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x; // ascending order
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

double QuadratureGrid::total_weight() const {
    double sum = 0.0;
    for (const auto& n : nodes) sum += n.weight;
    return sum;
}

QuadratureGrid sphere_quadrature(int j_max) {
    if (j_max < 0) throw std::invalid_argument("sphere_quadrature: j_max must be >= 0");
    QuadratureGrid grid;
    grid.surface = SurfaceKind::sphere;
    grid.exactness = j_max;
    grid.n_polar = 2 * j_max + 4;
    grid.n_azimuth = 4 * j_max + 4;

    const GaussRule rule = gauss_legendre(grid.n_polar);
    const double dphi = 2.0 * pi / grid.n_azimuth;
    grid.nodes.reserve(static_cast<std::size_t>(grid.n_polar) * grid.n_azimuth);
    for (int i = 0; i < grid.n_polar; ++i) {
        const double theta = std::acos(rule.nodes[i]);
        const double w = rule.weights[i] * dphi;
        for (int a = 0; a < grid.n_azimuth; ++a)
            grid.nodes.push_back({sphere_point(theta, a * dphi), w});
    }
    return grid;
}

} // namespace curvsense
