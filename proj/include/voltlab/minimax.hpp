#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace voltlab {

// Numerical instantiation of the two-law construction that pins the best
// achievable uniform rate for r in (1,2): a frequency-plateau perturbation
// h of height a_n and cutoff u_n, its inverse Fourier transform H, the jump
// densities |H|/x^2 and (|H|+H)/x^2, the characteristic exponents of the two
// laws, their difference eta, and the total-variation proxy n*Int|k| with
// k the inverse transform of eta.

// a_n = (n ln n)^{-(2-r)/2}, u_n = 2 sqrt(n ln n) (= 2 a_n^{-1/(2-r)}).
std::pair<double, double> perturbation_constants(double r, std::int64_t n);

// Even plateau bump: a on |u| <= u_cut, a*exp(-(|u|-u_cut)^3) beyond.
double h_fn(double u, double a, double u_cut);

// Pointwise H(x) = (1/2pi) Int e^{-iux} h(u) du: plateau part integrates to
// (a/pi) sin(u_cut x)/x exactly; the tail Int_0^inf e^{-t^3} cos((u_cut+t)x) dt
// is composite Gauss-Legendre with `panels` panels (doubling `panels` is the
// self-convergence knob).
double inverse_fourier_h_point(double a, double u_cut, double x, int panels = 8);

// Independent single-integral route to W_eta(u) = Int (1-cos(ux)) H(x)/x^2 dx,
// via the triangle-kernel identity W_eta(u) = (1/2) Int_{-u}^{u} h(w)(u-|w|) dw:
// equals a u^2/2 exactly on the plateau, adaptive quadrature beyond. Used as
// a cross-check oracle for the grid pipeline.
double w_eta_reference(double a, double u_cut, double u);

// H tabulated on the nonnegative half of a symmetric uniform grid
// (coordinate = index * x_spacing; values for x < 0 follow by evenness).
struct PerturbationTabs {
    double a = 0.0;
    double u_cut = 0.0;
    double x_spacing = 0.0;
    double x_extent = 0.0;
    std::vector<double> big_h; // H(i * x_spacing), i = 0 .. count-1
};

PerturbationTabs tabulate_inverse_fourier_h(double a, double u_cut, double x_spacing,
                                            double x_extent, int panels = 8);

// Whole-line trapezoid sums over the tabulation (integrands are even).
double h_mass_trapezoid(const PerturbationTabs& tabs);       // Int H dx  (= a)
double h_plancherel_trapezoid(const PerturbationTabs& tabs); // Int H^2 dx
double h_plancherel_spectral(double a, double u_cut);        // (1/2pi) Int h^2 du
// Int (|x|^r ∧ 1) |H(x)|/x^2 dx; the singular innermost cell is integrated by
// adaptive quadrature against the pointwise H.
double levy_r_integral_of_tabs(const PerturbationTabs& tabs, double r);

// Characteristic exponents and their u-derivatives at arbitrary frequencies:
//   w_phi    = Int (1-cos(ux)) |H|/x^2 dx     w_phi_d = Int sin(ux) |H|/x dx
//   w_eta    = Int (1-cos(ux))  H /x^2 dx     w_eta_d = Int sin(ux)  H /x dx
// evaluated by whole-line trapezoid over the tabs (x = 0 cell by the analytic
// limits u^2 H(0)/2 and u H(0)).
struct ExponentRow {
    double w_phi = 0.0, w_eta = 0.0, w_phi_d = 0.0, w_eta_d = 0.0;
};
std::vector<ExponentRow> characteristic_exponents(const PerturbationTabs& tabs,
                                                  const std::vector<double>& u_points);

struct MinimaxPair {
    double r = 0.0;
    std::int64_t n = 0;
    double a_n = 0.0;
    double u_n = 0.0;

    PerturbationTabs tabs;              // H on the x-grid
    std::vector<double> f_x2, g_x2;     // |H| and |H|+H (densities times x^2)

    // u-grid: u_i = i * u_spacing, i = 0 .. u_count-1, extent 4*u_n,
    // u_n exactly at index plateau_index.
    double u_spacing = 0.0;
    double u_extent = 0.0;
    std::size_t plateau_index = 0;
    std::vector<double> h_tab;          // h(u_i)
    std::vector<double> w_phi, w_eta, w_phi_d, w_eta_d;
    std::vector<double> eta, eta_d;     // identically zero on the plateau

    double var_x = 0.0, var_y = 0.0;    // diffusive variances of the pair: 1+a_n, 1

    double norm_eta = 0.0;              // n^2 * Int eta^2 du
    double norm_eta_d = 0.0;            // n^2 * Int (eta')^2 du
    double tv_proxy = 0.0;              // n * Int |k| dx
    double k_spacing = 0.0, k_extent = 0.0;

    double plateau_max_rel = 0.0;       // worst |w_eta/(a u^2/2) - 1| on u in [1, u_n]
    int refinements = 0;                // grid refinements needed to pass 1e-5
};

// Full pipeline with automatic grid refinement until the plateau identity
// holds to relative 1e-5 on the tabulated points with u in [1, u_n]
// (NumericError if two refinements do not get there).
MinimaxPair build_minimax_pair(double r, std::int64_t n);

// One CSV row per pair: r, n, a_n, u_n, norm_eta, norm_eta_prime, tv_bound,
// grid_spacing, grid_extent.
void write_minimax_csv(const std::string& path, const std::vector<MinimaxPair>& pairs);
// Full (u, eta) tabulation dump for plotting.
void write_eta_csv(const std::string& path, const MinimaxPair& pair);

} // namespace voltlab
