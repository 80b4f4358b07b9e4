#pragma once

#include <complex>
#include <vector>

#include "curvsense/geometry.hpp"

namespace curvsense {

using cplx = std::complex<double>;

// Angular momentum label on the sphere; |m| <= j.
struct SphereMode {
    int j = 0;
    int m = 0;
};

inline bool operator==(const SphereMode& a, const SphereMode& b) {
    return a.j == b.j && a.m == b.m;
}
inline bool operator<(const SphereMode& a, const SphereMode& b) {
    return a.j != b.j ? a.j < b.j : a.m < b.m;
}

SphereMode make_sphere_mode(int j, int m); // validates |m| <= j

// Axial wavenumber k (real, point-mass label) and angular number m.
struct CylinderMode {
    double k = 0.0;
    int m = 0;
};

inline bool operator==(const CylinderMode& a, const CylinderMode& b) {
    return a.k == b.k && a.m == b.m;
}
inline bool operator<(const CylinderMode& a, const CylinderMode& b) {
    return a.k != b.k ? a.k < b.k : a.m < b.m;
}

// Fully normalized associated Legendre function
//   sqrt((2j+1)/(4pi) (j-m)!/(j+m)!) P_j^m(x),  m >= 0,
// by upward recurrence in j at fixed m (no factorials, stable to j ~ 10^3).
double normalized_legendre(int j, int m, double x);

// Y_jm(theta,phi) with the phase prefactor (-1)^((|m|-m)/2) applied to the
// |m|-normalized function.
cplx sphere_harmonic(const SphereMode& mode, double theta, double phi);

// E_jm = hbar^2 j(j+1) / (2 M lambda^2); independent of m.
double sphere_energy(const SphereMode& mode, double lambda, double mass,
                     double hbar = 1.0);
double sphere_energy_dlambda(const SphereMode& mode, double lambda, double mass,
                             double hbar = 1.0);

// e^{ikz} e^{im theta} / (2 pi)
cplx cylinder_mode_amplitude(const CylinderMode& mode, double theta, double z);

// E_km = hbar^2/(2M) (k^2 + m^2/lambda^2 - 1/(4 lambda^2)); may be negative.
double cylinder_energy(const CylinderMode& mode, double lambda, double mass,
                       double hbar = 1.0);
double cylinder_energy_dlambda(const CylinderMode& mode, double lambda,
                               double mass, double hbar = 1.0);

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

struct QuadNode {
    SurfacePoint point;
    double weight = 0.0;
};

struct QuadratureGrid {
    SurfaceKind surface = SurfaceKind::sphere;
    int exactness = 0; // exact for products Y*_{j'm'} Y_{jm}, j,j' <= exactness
    int n_polar = 0;
    int n_azimuth = 0;
    std::vector<QuadNode> nodes;

    double total_weight() const;
};

// Gauss-Legendre in cos(theta) x uniform phi grid. Exact for harmonic
// products up to degree j_max; carries a two-node oversampling margin.
QuadratureGrid sphere_quadrature(int j_max);

} // namespace curvsense
