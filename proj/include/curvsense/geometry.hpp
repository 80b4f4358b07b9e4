#pragma once

#include <stdexcept>

namespace curvsense {

// 2x2 real matrix, row-major. Enough linear algebra for chart-local work.
struct Mat2 {
    double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;

    double trace() const { return a00 + a11; }
    double det() const { return a00 * a11 - a01 * a10; }
};

enum class SurfaceKind { sphere, cylinder, torus };

// Sphere(radius) | Cylinder(radius) | Torus(tube_radius r, center_radius R).
// All radii strictly positive; torus requires R > r (embedded, no self-intersection).
struct Surface {
    SurfaceKind kind = SurfaceKind::sphere;
    double radius = 1.0;         // sphere / cylinder
    double tube_radius = 0.0;    // torus r
    double center_radius = 0.0;  // torus R

    static Surface sphere(double lambda);
    static Surface cylinder(double lambda);
    static Surface torus(double r, double R);
};

// Chart coordinates. Meaning depends on the surface:
//   sphere:   q1 = theta in [0,pi],  q2 = phi in [0,2pi)
//   cylinder: q1 = z in R,           q2 = theta in [0,2pi)
//   torus:    q1 = theta in [0,2pi), q2 = phi in [0,2pi)
struct SurfacePoint {
    double q1 = 0.0;
    double q2 = 0.0;
};

SurfacePoint sphere_point(double theta, double phi);
SurfacePoint cylinder_point(double z, double theta);
SurfacePoint torus_point(double theta, double phi);

// Reduce angular coordinates into their chart ranges (mod 2pi; sphere theta
// folded into [0,pi] with the matching phi shift).
SurfacePoint canonical_point(const Surface& s, SurfacePoint p);

// Coordinate-singular chart point (sphere poles): det g < 1e-14 * scale^4.
// A marker, not a failure; geometric quantities still evaluate by closed form.
bool chart_degenerate(const Surface& s, const SurfacePoint& p);

struct GeometryReport {
    Mat2 metric;                  // g, length^2
    Mat2 shape;                   // alpha, 1/length
    double mean_curvature = 0.0;  // C, 1/length
    double gauss_curvature = 0.0; // K, 1/length^2
    double surface_potential = 0.0; // V_s, energy
    double ricci = 0.0;           // R, 1/length^2
    bool degenerate = false;
};

Mat2 surface_metric(const Surface& s, const SurfacePoint& p);
// Second fundamental form h (outward normal); internal helper for cross-checks.
Mat2 second_fundamental_form(const Surface& s, const SurfacePoint& p);
Mat2 shape_operator(const Surface& s, const SurfacePoint& p);
// alpha expressed through g and h; matches shape_operator away from
// chart degeneracies.
Mat2 shape_operator_from_forms(const Mat2& g, const Mat2& h);

double mean_curvature(const Surface& s, const SurfacePoint& p);
double gaussian_curvature(const Surface& s, const SurfacePoint& p);

// V_s = -hbar^2/(2M) (C^2 - K); <= 0 on these surfaces.
double surface_potential(const Surface& s, const SurfacePoint& p, double mass,
                         double hbar = 1.0);

// Closed-form Ricci scalar.
double ricci_scalar(const Surface& s, const SurfacePoint& p);

// General-path Ricci: Christoffel symbols from centered finite differences of
// the metric (step h), Riemann contraction. Cross-check for the closed forms.
double ricci_scalar_numeric(const Surface& s, const SurfacePoint& p,
                            double step = 1e-5);

// Pointwise difference between the curvature term xi hbar^2 R / M of the
// generalized-coordinate Hamiltonian and the constraining-potential term V_s.
double quantization_gap(const Surface& s, const SurfacePoint& p, double xi,
                        double mass, double hbar = 1.0);

GeometryReport geometry_report(const Surface& s, const SurfacePoint& p,
                               double mass, double hbar = 1.0);

} // namespace curvsense
