#include "curvsense/geometry.hpp"

#include <cmath>
#include <numbers>

namespace curvsense {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    double w = std::fmod(a, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

// Metric components (g11, g12, g22) in the chart ordering of SurfacePoint,
// templated so the finite-difference Ricci path can run in extended precision.
template <class T>
void metric_components(const Surface& s, T q1, T q2, T out[3]) {
    switch (s.kind) {
    case SurfaceKind::sphere: {
        const T lam = static_cast<T>(s.radius);
        const T st = std::sin(q1);
        out[0] = lam * lam;
        out[1] = T(0);
        out[2] = lam * lam * st * st;
        (void)q2;
        break;
    }
    case SurfaceKind::cylinder: {
        const T lam = static_cast<T>(s.radius);
        out[0] = T(1);
        out[1] = T(0);
        out[2] = lam * lam;
        (void)q1;
        (void)q2;
        break;
    }
    case SurfaceKind::torus: {
        const T r = static_cast<T>(s.tube_radius);
        const T R = static_cast<T>(s.center_radius);
        const T ring = R + r * std::cos(q1);
        out[0] = r * r;
        out[1] = T(0);
        out[2] = ring * ring;
        (void)q2;
        break;
    }
    }
}

double surface_scale(const Surface& s) {
    return s.kind == SurfaceKind::torus ? std::max(s.tube_radius, s.center_radius)
                                        : s.radius;
}

using ld = long double;

struct Christoffel {
    ld g[3];       // g11, g12, g22
    ld gamma[2][2][2]; // gamma[rho][mu][sigma]
};

Christoffel christoffel_at(const Surface& s, ld q1, ld q2, ld h) {
    Christoffel c{};
    metric_components<ld>(s, q1, q2, c.g);

    // dg[k][.] = centered difference of (g11,g12,g22) along coordinate k
    ld dg[2][3];
    for (int k = 0; k < 2; ++k) {
        ld plus[3], minus[3];
        const ld d1 = (k == 0) ? h : ld(0);
        const ld d2 = (k == 1) ? h : ld(0);
        metric_components<ld>(s, q1 + d1, q2 + d2, plus);
        metric_components<ld>(s, q1 - d1, q2 - d2, minus);
        for (int i = 0; i < 3; ++i) dg[k][i] = (plus[i] - minus[i]) / (2 * h);
    }

    const ld det = c.g[0] * c.g[2] - c.g[1] * c.g[1];
    const ld ginv[2][2] = {{c.g[2] / det, -c.g[1] / det},
                           {-c.g[1] / det, c.g[0] / det}};
    auto gmat = [&](int i, int j) -> ld { return (i == j) ? (i == 0 ? c.g[0] : c.g[2]) : c.g[1]; };
    auto dgm = [&](int k, int i, int j) -> ld {
        return (i == j) ? (i == 0 ? dg[k][0] : dg[k][2]) : dg[k][1];
    };
    (void)gmat;

    for (int rho = 0; rho < 2; ++rho)
        for (int mu = 0; mu < 2; ++mu)
            for (int sig = 0; sig < 2; ++sig) {
                ld sum = 0;
                for (int lam = 0; lam < 2; ++lam)
                    sum += ginv[rho][lam] *
                           (dgm(mu, sig, lam) + dgm(sig, mu, lam) - dgm(lam, mu, sig));
                c.gamma[rho][mu][sig] = sum / 2;
            }
    return c;
}

} // namespace

Surface Surface::sphere(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    Surface s;
    s.kind = SurfaceKind::sphere;
    s.radius = lambda;
    return s;
}

Surface Surface::cylinder(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("cylinder radius must be positive");
    Surface s;
    s.kind = SurfaceKind::cylinder;
    s.radius = lambda;
    return s;
}

Surface Surface::torus(double r, double R) {
    if (!(r > 0.0) || !(R > 0.0)) throw std::invalid_argument("torus radii must be positive");
    if (!(R > r)) throw std::invalid_argument("torus requires R > r");
    Surface s;
    s.kind = SurfaceKind::torus;
    s.tube_radius = r;
    s.center_radius = R;
    return s;
}

SurfacePoint sphere_point(double theta, double phi) { return {theta, phi}; }
SurfacePoint cylinder_point(double z, double theta) { return {z, theta}; }
SurfacePoint torus_point(double theta, double phi) { return {theta, phi}; }

SurfacePoint canonical_point(const Surface& s, SurfacePoint p) {
    switch (s.kind) {
    case SurfaceKind::sphere: {
        double th = wrap_angle(p.q1);
        double ph = p.q2;
        if (th > std::numbers::pi) { // fold the lower sheet back
            th = two_pi - th;
            ph += std::numbers::pi;
        }
        return {th, wrap_angle(ph)};
    }
    case SurfaceKind::cylinder:
        return {p.q1, wrap_angle(p.q2)};
    case SurfaceKind::torus:
        return {wrap_angle(p.q1), wrap_angle(p.q2)};
    }
    return p;
}

bool chart_degenerate(const Surface& s, const SurfacePoint& p) {
    const double scale = surface_scale(s);
    const Mat2 g = surface_metric(s, p);
    return g.det() < 1e-14 * scale * scale * scale * scale;
}

Mat2 surface_metric(const Surface& s, const SurfacePoint& p) {
    double g[3];
    metric_components<double>(s, p.q1, p.q2, g);
    return {g[0], g[1], g[1], g[2]};
}

Mat2 second_fundamental_form(const Surface& s, const SurfacePoint& p) {
    // h_ij = n . d_i d_j r with the outward normal.
    switch (s.kind) {
    case SurfaceKind::sphere: {
        const double lam = s.radius;
        const double st = std::sin(p.q1);
        return {-lam, 0.0, 0.0, -lam * st * st};
    }
    case SurfaceKind::cylinder:
        return {0.0, 0.0, 0.0, -s.radius};
    case SurfaceKind::torus: {
        const double r = s.tube_radius;
        const double ct = std::cos(p.q1);
        const double ring = s.center_radius + r * ct;
        return {-r, 0.0, 0.0, -ring * ct};
    }
    }
    return {};
}

Mat2 shape_operator(const Surface& s, const SurfacePoint& p) {
    // Closed forms; finite at coordinate-degenerate points where the
    // metric/second-form route below turns 0/0.
    switch (s.kind) {
    case SurfaceKind::sphere:
        return {1.0 / s.radius, 0.0, 0.0, 1.0 / s.radius};
    case SurfaceKind::cylinder:
        return {0.0, 0.0, 0.0, 1.0 / s.radius};
    case SurfaceKind::torus: {
        const double ct = std::cos(p.q1);
        return {1.0 / s.tube_radius, 0.0, 0.0,
                ct / (s.center_radius + s.tube_radius * ct)};
    }
    }
    return {};
}

Mat2 shape_operator_from_forms(const Mat2& g, const Mat2& h) {
    const double det = g.det();
    return {(g.a01 * h.a10 - g.a11 * h.a00) / det,
            (g.a10 * h.a00 - g.a00 * h.a10) / det,
            (g.a01 * h.a11 - g.a11 * h.a01) / det,
            (g.a01 * h.a10 - g.a00 * h.a11) / det};
}

double mean_curvature(const Surface& s, const SurfacePoint& p) {
    // Equals (g11 h22 + g22 h11 - 2 g12 h12)/(2 det g) away from chart
    // degeneracies, where that quotient is 0/0.
    return -0.5 * shape_operator(s, p).trace();
}

double gaussian_curvature(const Surface& s, const SurfacePoint& p) {
    return shape_operator(s, p).det();
}

double surface_potential(const Surface& s, const SurfacePoint& p, double mass,
                         double hbar) {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    const double c = mean_curvature(s, p);
    const double k = gaussian_curvature(s, p);
    return -hbar * hbar / (2.0 * mass) * (c * c - k);
}

double ricci_scalar(const Surface& s, const SurfacePoint& p) {
    switch (s.kind) {
    case SurfaceKind::sphere:
        return 2.0 / (s.radius * s.radius);
    case SurfaceKind::cylinder:
        return 0.0;
    case SurfaceKind::torus: {
        const double ct = std::cos(p.q1);
        return 2.0 * ct / (s.tube_radius * (s.center_radius + s.tube_radius * ct));
    }
    }
    return 0.0;
}

double ricci_scalar_numeric(const Surface& s, const SurfacePoint& p, double step) {
    const ld h = static_cast<ld>(step) * static_cast<ld>(surface_scale(s) == 0.0 ? 1.0 : 1.0);
    const ld q1 = p.q1, q2 = p.q2;

    const Christoffel c0 = christoffel_at(s, q1, q2, h);

    // dgamma[rho][sigma][mu][nu] = d_rho Gamma^sigma_{mu nu}
    ld dgamma[2][2][2][2];
    for (int rho = 0; rho < 2; ++rho) {
        const ld d1 = (rho == 0) ? h : ld(0);
        const ld d2 = (rho == 1) ? h : ld(0);
        const Christoffel cp = christoffel_at(s, q1 + d1, q2 + d2, h);
        const Christoffel cm = christoffel_at(s, q1 - d1, q2 - d2, h);
        for (int sig = 0; sig < 2; ++sig)
            for (int mu = 0; mu < 2; ++mu)
                for (int nu = 0; nu < 2; ++nu)
                    dgamma[rho][sig][mu][nu] =
                        (cp.gamma[sig][mu][nu] - cm.gamma[sig][mu][nu]) / (2 * h);
    }

    const ld det = c0.g[0] * c0.g[2] - c0.g[1] * c0.g[1];
    const ld ginv[2][2] = {{c0.g[2] / det, -c0.g[1] / det},
                           {-c0.g[1] / det, c0.g[0] / det}};

    ld ricci = 0;
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
            ld r_mn = 0; // R^lam_{mu lam nu}
            for (int lam = 0; lam < 2; ++lam) {
                ld term = dgamma[lam][lam][mu][nu] - dgamma[nu][lam][mu][lam];
                for (int k = 0; k < 2; ++k)
                    term += c0.gamma[k][mu][nu] * c0.gamma[lam][lam][k] -
                            c0.gamma[k][mu][lam] * c0.gamma[lam][nu][k];
                r_mn += term;
            }
            ricci += ginv[mu][nu] * r_mn;
        }
    return static_cast<double>(ricci);
}

double quantization_gap(const Surface& s, const SurfacePoint& p, double xi,
                        double mass, double hbar) {
    return xi * hbar * hbar * ricci_scalar(s, p) / mass -
           surface_potential(s, p, mass, hbar);
}

GeometryReport geometry_report(const Surface& s, const SurfacePoint& p,
                               double mass, double hbar) {
    GeometryReport rep;
    rep.metric = surface_metric(s, p);
    rep.shape = shape_operator(s, p);
    rep.mean_curvature = mean_curvature(s, p);
    rep.gauss_curvature = gaussian_curvature(s, p);
    rep.surface_potential = surface_potential(s, p, mass, hbar);
    rep.ricci = ricci_scalar(s, p);
    rep.degenerate = chart_degenerate(s, p);
    return rep;
}

} // namespace curvsense
