#include "voltlab/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "voltlab/csv.hpp"
#include "voltlab/errors.hpp"
#include "voltlab/quadrature.hpp"

namespace voltlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
// e^{-t^3} is below 6e-15 past this point; the tail integrals stop here.
constexpr double kTailCutoff = 3.2;

struct GlNode {
    double x; // abscissa on [-1, 1]
    double w;
};

// 16-point Gauss-Legendre rule, nodes by Newton iteration on P_16.
const std::vector<GlNode>& gl16() {
    static const std::vector<GlNode> nodes = [] {
        const int m = 16;
        std::vector<GlNode> out;
        for (int k = 1; k <= m / 2; ++k) {
            double x = std::cos(kPi * (k - 0.25) / (m + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= m; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            out.push_back({x, w});
            out.push_back({-x, w});
        }
        return out;
    }();
    return nodes;
}

// Quadrature nodes for Int_0^kTailCutoff e^{-t^3} f(t) dt with the density
// factor folded into the weights.
std::vector<GlNode> tail_rule(int panels) {
    if (panels < 1) throw ConfigError("panels must be >= 1");
    std::vector<GlNode> rule;
    const double width = kTailCutoff / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        for (const auto& node : gl16()) {
            const double t = mid + 0.5 * width * node.x;
            rule.push_back({t, 0.5 * width * node.w * std::exp(-t * t * t)});
        }
    }
    return rule;
}

} // namespace

std::pair<double, double> perturbation_constants(double r, std::int64_t n) {
    if (!(r > 1.0 && r < 2.0)) throw ConfigError("r must lie in (1,2)");
    if (n < 2) throw ConfigError("n must be >= 2");
    const double nl = static_cast<double>(n) * std::log(static_cast<double>(n));
    const double a = std::pow(nl, -(2.0 - r) / 2.0);
    const double u = 2.0 * std::sqrt(nl);
    return {a, u};
}

double h_fn(double u, double a, double u_cut) {
    if (!(a > 0.0) || !(u_cut > 0.0)) throw ConfigError("h_fn needs a, u_cut > 0");
    const double au = std::fabs(u);
    if (au <= u_cut) return a;
    const double d = au - u_cut;
    return a * std::exp(-d * d * d);
}

double inverse_fourier_h_point(double a, double u_cut, double x, int panels) {
    const auto rule = tail_rule(panels);
    const double plateau = x == 0.0 ? u_cut : std::sin(u_cut * x) / x;
    double tail = 0.0;
    for (const auto& node : rule) tail += node.w * std::cos((u_cut + node.x) * x);
    return a / kPi * (plateau + tail);
}

double w_eta_reference(double a, double u_cut, double u) {
    const double au = std::fabs(u);
    if (au <= u_cut) return 0.5 * a * au * au;
    // triangle-kernel identity minus the part lost to the decay of h
    const double correction = integrate_finite(
        [au, u_cut](double w) {
            const double d = w - u_cut;
            return (au - w) * (-std::expm1(-d * d * d));
        },
        u_cut, au, 1e-12);
    return a * (0.5 * au * au - correction);
}

PerturbationTabs tabulate_inverse_fourier_h(double a, double u_cut, double x_spacing,
                                            double x_extent, int panels) {
    if (!(a > 0.0) || !(u_cut > 0.0)) throw ConfigError("tabs need a, u_cut > 0");
    if (!(x_spacing > 0.0) || !(x_extent > x_spacing))
        throw ConfigError("bad tabulation grid");
    PerturbationTabs tabs;
    tabs.a = a;
    tabs.u_cut = u_cut;
    tabs.x_spacing = x_spacing;
    const auto count = static_cast<std::size_t>(std::floor(x_extent / x_spacing)) + 1;
    tabs.x_extent = x_spacing * static_cast<double>(count - 1);
    tabs.big_h.resize(count);
    const auto rule = tail_rule(panels);
    const double scale = a / kPi;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = x_spacing * static_cast<double>(i);
        const double plateau = i == 0 ? u_cut : std::sin(u_cut * x) / x;
        double tail = 0.0;
        for (const auto& node : rule) tail += node.w * std::cos((u_cut + node.x) * x);
        tabs.big_h[i] = scale * (plateau + tail);
    }
    return tabs;
}

namespace {

// Whole-line trapezoid of an even integrand tabulated on the nonnegative
// half-grid: dx * (g0 + 2*sum(interior) + g_last).
double trapezoid_even(const std::vector<double>& g, double dx) {
    if (g.size() < 2) throw NumericError("trapezoid needs >= 2 points");
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) sum += g[i];
    return dx * (g.front() + 2.0 * sum + g.back());
}

} // namespace

double h_mass_trapezoid(const PerturbationTabs& tabs) {
    return trapezoid_even(tabs.big_h, tabs.x_spacing);
}

double h_plancherel_trapezoid(const PerturbationTabs& tabs) {
    std::vector<double> sq(tabs.big_h.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = tabs.big_h[i] * tabs.big_h[i];
    return trapezoid_even(sq, tabs.x_spacing);
}

double h_plancherel_spectral(double a, double u_cut) {
    const double tail = integrate_finite(
        [](double t) { return std::exp(-2.0 * t * t * t); }, 0.0, kTailCutoff, 1e-13);
    return a * a / kPi * (u_cut + tail);
}

double levy_r_integral_of_tabs(const PerturbationTabs& tabs, double r) {
    if (!(r >= 0.0 && r < 2.0)) throw ConfigError("r must lie in [0,2)");
    const double dx = tabs.x_spacing;
    // innermost cell: |H| is continuous, the x^{r-2} factor is singular
    const double a = tabs.a, u_cut = tabs.u_cut;
    const double inner = 2.0 * integrate_singular(
                                   [a, u_cut, r](double x) {
                                       return std::pow(x, r - 2.0) *
                                              std::fabs(inverse_fourier_h_point(
                                                  a, u_cut, x));
                                   },
                                   0.0, dx);
    double sum = 0.0;
    for (std::size_t i = 1; i < tabs.big_h.size(); ++i) {
        const double x = dx * static_cast<double>(i);
        const double weight = std::min(std::pow(x, r), 1.0) / (x * x);
        const double term = weight * std::fabs(tabs.big_h[i]);
        sum += (i + 1 == tabs.big_h.size()) ? 0.5 * term : term;
    }
    return inner + 2.0 * dx * sum;
}

std::vector<ExponentRow> characteristic_exponents(const PerturbationTabs& tabs,
                                                  const std::vector<double>& u_points) {
    const std::size_t count = tabs.big_h.size();
    const double dx = tabs.x_spacing;
    // per-point factors: H/x^2, |H|/x^2, H/x, |H|/x, with the trapezoid
    // half-weight folded into the last entry
    std::vector<double> p2(count, 0.0), a2(count, 0.0), p1(count, 0.0), a1(count, 0.0);
    for (std::size_t i = 1; i < count; ++i) {
        const double x = dx * static_cast<double>(i);
        const double h = tabs.big_h[i];
        const double edge = (i + 1 == count) ? 0.5 : 1.0;
        p2[i] = edge * h / (x * x);
        a2[i] = edge * std::fabs(h) / (x * x);
        p1[i] = edge * h / x;
        a1[i] = edge * std::fabs(h) / x;
    }
    const double h0 = tabs.big_h[0];

    std::vector<ExponentRow> rows(u_points.size());
    for (std::size_t k = 0; k < u_points.size(); ++k) {
        const double u = u_points[k];
        const double cr = std::cos(u * dx);
        const double si = std::sin(u * dx);
        double c = 1.0, s = 0.0; // cos/sin of u * x_i, advanced by rotation
        double s_eta = 0.0, s_phi = 0.0, s_eta_d = 0.0, s_phi_d = 0.0;
        for (std::size_t i = 1; i < count; ++i) {
            const double cn = c * cr - s * si;
            const double sn = s * cr + c * si;
            c = cn;
            s = sn;
            if ((i & 8191u) == 0) { // keep the rotation from drifting
                const double x = dx * static_cast<double>(i);
                c = std::cos(u * x);
                s = std::sin(u * x);
            }
            const double omc = 1.0 - c;
            s_eta += p2[i] * omc;
            s_phi += a2[i] * omc;
            s_eta_d += p1[i] * s;
            s_phi_d += a1[i] * s;
        }
        ExponentRow row;
        row.w_eta = dx * (0.5 * u * u * h0 + 2.0 * s_eta);
        row.w_phi = dx * (0.5 * u * u * std::fabs(h0) + 2.0 * s_phi);
        row.w_eta_d = dx * (u * h0 + 2.0 * s_eta_d);
        row.w_phi_d = dx * (u * std::fabs(h0) + 2.0 * s_phi_d);
        rows[k] = row;
    }
    return rows;
}

namespace {

struct EtaPoint {
    double eta = 0.0;
    double eta_d = 0.0;
};

// phi = exp(-(u^2 (1+a) + 2 w_phi)/2n), psi = exp(-(u^2 + 2 w_phi + 2 w_eta)/2n),
// eta = phi - psi; on the plateau the exponents agree exactly and eta is 0 by
// construction (the quadratic identity w_eta = a u^2 / 2 there is exact).
EtaPoint eta_at(double u, double a, const ExponentRow& row, double n, bool plateau) {
    if (plateau) return {};
    const double e_phi =
        std::exp(-(u * u * (1.0 + a) + 2.0 * row.w_phi) / (2.0 * n));
    const double e_psi =
        std::exp(-(u * u + 2.0 * row.w_phi + 2.0 * row.w_eta) / (2.0 * n));
    EtaPoint out;
    out.eta = e_phi - e_psi;
    out.eta_d = -((u * (1.0 + a) + row.w_phi_d) * e_phi -
                  (u + row.w_phi_d + row.w_eta_d) * e_psi) /
                n;
    return out;
}

} // namespace

MinimaxPair build_minimax_pair(double r, std::int64_t n) {
    const auto [a_n, u_n] = perturbation_constants(r, n);
    const double dn = static_cast<double>(n);

    MinimaxPair pair;
    pair.r = r;
    pair.n = n;
    pair.a_n = a_n;
    pair.u_n = u_n;
    pair.var_x = 1.0 + a_n;
    pair.var_y = 1.0;

    // u-grid: u_n exactly on-grid, extent 4*u_n
    const std::size_t plateau_index = 512;
    const std::size_t u_count = 4 * plateau_index + 1;
    const double du = u_n / static_cast<double>(plateau_index);
    pair.u_spacing = du;
    pair.u_extent = du * static_cast<double>(u_count - 1);
    pair.plateau_index = plateau_index;
    std::vector<double> u_points(u_count);
    for (std::size_t i = 0; i < u_count; ++i)
        u_points[i] = du * static_cast<double>(i);

    // x-grid with refinement: double the extent first (truncation error
    // dominates), then also halve the spacing.
    double x_spacing = kPi / (4.0 * u_n);
    double x_extent = std::max(20.0, 64.0 / u_n);
    std::vector<ExponentRow> rows;
    for (int attempt = 0;; ++attempt) {
        pair.tabs = tabulate_inverse_fourier_h(a_n, u_n, x_spacing, x_extent);
        rows = characteristic_exponents(pair.tabs, u_points);
        double worst = 0.0;
        for (std::size_t i = 1; i <= plateau_index; ++i) {
            const double expected = 0.5 * a_n * u_points[i] * u_points[i];
            const double residual = std::fabs(rows[i].w_eta - expected);
            // relative below u = 1 degenerates (both sides -> 0); measure
            // against the plateau value at unit frequency instead
            worst = std::max(worst, u_points[i] < 1.0
                                        ? residual / (0.5 * a_n)
                                        : residual / expected);
        }
        pair.plateau_max_rel = worst;
        pair.refinements = attempt;
        if (worst <= 1e-5) break;
        if (attempt == 0) {
            x_extent *= 2.0;
        } else if (attempt == 1) {
            x_spacing *= 0.5;
        } else {
            throw NumericError("plateau identity not met after grid refinement");
        }
    }

    pair.h_tab.resize(u_count);
    for (std::size_t i = 0; i < u_count; ++i)
        pair.h_tab[i] = h_fn(u_points[i], a_n, u_n);

    const std::size_t x_count = pair.tabs.big_h.size();
    pair.f_x2.resize(x_count);
    pair.g_x2.resize(x_count);
    for (std::size_t i = 0; i < x_count; ++i) {
        const double h = pair.tabs.big_h[i];
        pair.f_x2[i] = std::fabs(h);
        pair.g_x2[i] = std::fabs(h) + h;
        if (pair.g_x2[i] < -1e-10 * a_n)
            throw NumericError("second density negative: upstream grid error");
    }

    pair.w_phi.resize(u_count);
    pair.w_eta.resize(u_count);
    pair.w_phi_d.resize(u_count);
    pair.w_eta_d.resize(u_count);
    pair.eta.resize(u_count);
    pair.eta_d.resize(u_count);
    double eta_max = 0.0;
    for (std::size_t i = 0; i < u_count; ++i) {
        pair.w_phi[i] = rows[i].w_phi;
        pair.w_eta[i] = rows[i].w_eta;
        pair.w_phi_d[i] = rows[i].w_phi_d;
        pair.w_eta_d[i] = rows[i].w_eta_d;
        const EtaPoint pt =
            eta_at(u_points[i], a_n, rows[i], dn, i <= plateau_index);
        pair.eta[i] = pt.eta;
        pair.eta_d[i] = pt.eta_d;
        eta_max = std::max(eta_max, std::fabs(pt.eta));
    }
    if (!(eta_max > 0.0)) throw NumericError("eta vanished everywhere");
    if (std::fabs(pair.eta.back()) > 1e-3 * eta_max)
        throw NumericError("u grid does not cover the support of eta");

    // n^2 * Int eta^2 du over the whole line (even; zero on the plateau)
    {
        double sum_e = 0.0, sum_d = 0.0;
        for (std::size_t i = plateau_index + 1; i < u_count; ++i) {
            const double we = (i + 1 == u_count) ? 0.5 : 1.0;
            sum_e += we * pair.eta[i] * pair.eta[i];
            sum_d += we * pair.eta_d[i] * pair.eta_d[i];
        }
        pair.norm_eta = dn * dn * 2.0 * du * sum_e;
        pair.norm_eta_d = dn * dn * 2.0 * du * sum_d;
    }

    // total-variation proxy n * Int |k|, k the inverse transform of eta.
    // eta lives on the band [u_n, u_hi]; k needs a grid of its own: extent
    // set by the width of eta (duality), spacing resolving the carrier u_hi.
    double k_extent = std::max(40.0 * u_n / dn, 2.0);
    for (int attempt = 0;; ++attempt) {
        const double sigma_u = dn / u_n; // e-folding scale of eta past u_n
        const double u_hi = std::min(pair.u_extent, u_n + 30.0 * sigma_u + 5.0);
        const double du_band = kPi / (16.0 * k_extent);
        const auto band_count =
            static_cast<std::size_t>(std::ceil((u_hi - u_n) / du_band)) + 1;
        std::vector<double> band_points(band_count);
        for (std::size_t j = 0; j < band_count; ++j)
            band_points[j] = u_n + du_band * static_cast<double>(j);
        const auto band_rows = characteristic_exponents(pair.tabs, band_points);
        std::vector<double> band_eta(band_count);
        for (std::size_t j = 0; j < band_count; ++j)
            band_eta[j] =
                eta_at(band_points[j], a_n, band_rows[j], dn, j == 0).eta;

        const double dx_k = kPi / (16.0 * band_points.back());
        const auto k_count =
            static_cast<std::size_t>(std::floor(k_extent / dx_k)) + 1;
        std::vector<double> abs_k(k_count);
        double k_max = 0.0;
        for (std::size_t m = 0; m < k_count; ++m) {
            const double x = dx_k * static_cast<double>(m);
            const double cr = std::cos(du_band * x);
            const double si = std::sin(du_band * x);
            double c = std::cos(u_n * x);
            double s = std::sin(u_n * x);
            double acc = 0.0;
            for (std::size_t j = 0; j < band_count; ++j) {
                const double we = (j == 0 || j + 1 == band_count) ? 0.5 : 1.0;
                acc += we * band_eta[j] * c;
                const double cn = c * cr - s * si;
                const double sn = s * cr + c * si;
                c = cn;
                s = sn;
            }
            abs_k[m] = std::fabs(du_band * acc / kPi);
            k_max = std::max(k_max, abs_k[m]);
        }
        pair.k_spacing = dx_k;
        pair.k_extent = dx_k * static_cast<double>(k_count - 1);
        if (abs_k.back() <= 1e-3 * k_max) {
            pair.tv_proxy = dn * trapezoid_even(abs_k, dx_k);
            break;
        }
        if (attempt >= 1)
            throw NumericError("x grid does not cover the support of k");
        k_extent *= 2.0;
    }

    return pair;
}

void write_minimax_csv(const std::string& path, const std::vector<MinimaxPair>& pairs) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : pairs)
        rows.push_back({format_real(p.r), std::to_string(p.n), format_real(p.a_n),
                        format_real(p.u_n), format_real(p.norm_eta),
                        format_real(p.norm_eta_d), format_real(p.tv_proxy),
                        format_real(p.tabs.x_spacing), format_real(p.tabs.x_extent)});
    write_csv(path,
              {"r", "n", "a_n", "u_n", "norm_eta", "norm_eta_prime", "tv_bound",
               "grid_spacing", "grid_extent"},
              rows);
}

void write_eta_csv(const std::string& path, const MinimaxPair& pair) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < pair.eta.size(); ++i) {
        const double u = pair.u_spacing * static_cast<double>(i);
        rows.push_back({format_real(u), format_real(pair.eta[i])});
    }
    write_csv(path, {"u", "eta"}, rows);
}

} // namespace voltlab
