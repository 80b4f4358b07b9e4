#pragma once

#include <functional>
#include <vector>

#include "curvsense/basis.hpp"

namespace curvsense {

// Charge/field bundle with the derived perturbative coupling and the
// dimensionless gauge y of the expansion; y > 0.3 flags a strong field.
struct FieldConfig {
    double charge = 0.0;
    double field = 0.0;    // B (sphere) or B1 (cylinder, radial)
    double coupling = 0.0; // a
    double gauge = 0.0;    // y
    bool strong_field_warning = false;
};

// a = Q^2 B^2 / (36 sqrt(5) hbar^2);  y = Q B lambda^2 / hbar.
FieldConfig sphere_field_config(double charge, double field, double lambda,
                                double hbar = 1.0);
// a = Q B1 / hbar;  y = Q B1 lambda^3 |k| / hbar.
FieldConfig cylinder_field_config(double charge, double field, double lambda,
                                  double k, double hbar = 1.0);

// E(0)_jm = j(j+1) hbar^2/(2 M lambda^2) - m Q B hbar/(2M).
double sphere_zeeman_energy(int j, int m, double charge, double field,
                            double lambda, double mass, double hbar = 1.0);

// First-order diagonal correction, as printed:
// (-1)^m Q^2 B^2 (m^2 + j^2 + j - 1) lambda^2 / (4 M (2j+3)(2j-1)).
// The quadrature of <sin^2 theta>_jm fixes the magnitude; the (-1)^m sign
// alternation is carried verbatim from the source expression.
double sphere_energy_correction(int j, int m, double charge, double field,
                                double lambda, double mass);

// Closed-form <Psi_jm| sin^2 theta |Psi_jm> = 2 (m^2+j^2+j-1)/((2j+3)(2j-1)).
double sphere_sin2_expectation(int j, int m);

// Perturbed eigenstate: base label plus first-order mixing amplitudes over the
// coupled unperturbed modes, with explicit normalization.
struct PerturbedSphereState {
    SphereMode base;
    std::vector<SphereMode> modes;
    std::vector<double> amps; // normalized
    double mixing = 0.0;      // g(lambda)
    double normalization = 1.0;
    double lambda = 1.0;
};

struct PerturbedCylinderState {
    CylinderMode base;
    std::vector<CylinderMode> modes;
    std::vector<double> amps; // normalized
    double mixing_up = 0.0;   // coefficient on (k, m+1)
    double mixing_down = 0.0; // coefficient on (k, m-1)
    double normalization = 1.0;
    double lambda = 1.0;
};

// |Xi_00> = (|Psi_00> + g |Psi_20>)/sqrt(1+g^2), g = Q^2 B^2 lambda^4/(36 sqrt5 hbar^2).
PerturbedSphereState sphere_ground_state(double charge, double field, double lambda,
                                         double hbar = 1.0);

// Ground-state QFI carried in both published variants: the printed closed form
// 9 a^2 lambda^6/(1+a^2 lambda^8)^2 and the form 4 (d_lambda g/(1+g^2))^2 =
// 64 a^2 lambda^6/(1+a^2 lambda^8)^2 obtained by differentiating g = a lambda^4.
// The two differ by the constant prefactor only; argmax and scaling agree.
struct SphereGroundQfi {
    double printed = 0.0;
    double derived = 0.0;
};
SphereGroundQfi sphere_ground_qfi(double charge, double field, double lambda,
                                  double hbar = 1.0);

// |Upsilon_km>: mixes (k, m+1) and (k, m-1) with -(2 Q B1 lambda^3/hbar) B_km,
// B_km = k/(1+2m); k = 0 is left unperturbed.
PerturbedCylinderState cylinder_perturbed_state(double k, int m, double charge,
                                                double field, double lambda,
                                                double hbar = 1.0);

// H = 288 a^2 k^2 (1+4m^2) lambda^4 / [(1-4m^2)^2 + 8 a^2 k^2 (1+4m^2) lambda^6].
double cylinder_field_qfi(double k, int m, double charge, double field,
                          double lambda, double hbar = 1.0);

// Real amplitude vector over a fixed mode ordering, as a function of lambda.
using StateFamily = std::function<std::vector<double>(double lambda)>;

StateFamily sphere_ground_family(double charge, double field, double hbar = 1.0);
StateFamily cylinder_perturbed_family(double k, int m, double charge, double field,
                                      double hbar = 1.0);

// Central-difference QFI over a state family, with a Richardson check at
// steps h and h/2. Extrapolated value plus both raw estimates; converged is
// false when the two estimates disagree beyond the expected O(h^2) shrink.
struct NumericQfi {
    double value = 0.0;
    double estimate_h = 0.0;
    double estimate_h2 = 0.0;
    bool converged = true;
};
NumericQfi perturbed_qfi_numeric(const StateFamily& family, double lambda,
                                 double step = 1e-5);

} // namespace curvsense
