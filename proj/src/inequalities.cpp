#include "logdiff/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "logdiff/quadrature.hpp"
#include "logdiff/spectral.hpp"

namespace logdiff {

std::vector<Field> SampleFamily::generate(const Grid1D& grid) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uni = [&](double a, double b) { return a + (b - a) * unit(rng); };

    std::vector<Field> out;
    out.reserve(static_cast<size_t>(count));
    const double L = grid.L;
    for (int s = 0; s < count; ++s) {
        switch (kind) {
            case Kind::GaussianBumps: {
                const double amp = uni(0.2, 3.0), wdt = uni(0.5, 2.0), ctr = uni(-L / 4, L / 4);
                out.push_back(Field::sample(grid, [=](double x) {
                    return amp * std::exp(-((x - ctr) / wdt) * ((x - ctr) / wdt));
                }));
                break;
            }
            case Kind::MultiBump: {
                const int nb = 2 + static_cast<int>(uni(0.0, 3.0));
                std::vector<double> amp(nb), wdt(nb), ctr(nb);
                for (int b = 0; b < nb; ++b) {
                    amp[b] = uni(0.1, 2.0);
                    wdt[b] = uni(0.4, 1.6);
                    ctr[b] = uni(-L / 3, L / 3);
                }
                out.push_back(Field::sample(grid, [=](double x) {
                    double v = 0.0;
                    for (int b = 0; b < nb; ++b)
                        v += amp[b] * std::exp(-((x - ctr[b]) / wdt[b]) * ((x - ctr[b]) / wdt[b]));
                    return v;
                }));
                break;
            }
            case Kind::RandomBandLimited: {
                const int kmax = std::min(12, grid.n / 8);
                std::vector<double> a(static_cast<size_t>(kmax) + 1, 0.0);
                std::vector<double> th(static_cast<size_t>(kmax) + 1, 0.0);
                for (int k = 1; k <= kmax; ++k) {
                    a[static_cast<size_t>(k)] = uni(-1.0, 1.0) / k;
                    th[static_cast<size_t>(k)] = uni(0.0, 2.0 * 3.141592653589793);
                }
                const double env = L / 3.0;
                out.push_back(Field::sample(grid, [=, &a, &th](double x) {
                    double r = 0.0;
                    for (int k = 1; k <= kmax; ++k)
                        r += a[static_cast<size_t>(k)] *
                             std::cos(3.141592653589793 * k * x / L + th[static_cast<size_t>(k)]);
                    const double e = std::exp(-(x / env) * (x / env));
                    return r * r * e;  // nonnegative, smooth, decaying
                }));
                break;
            }
            case Kind::RescaledDilates: {
                static const double lambdas[4] = {0.5, 1.0, 2.0, 4.0};
                const double lam = lambdas[s % 4];
                out.push_back(Field::sample(grid, [=](double x) {
                    return std::exp(-(lam * x) * (lam * x));
                }));
                break;
            }
        }
    }
    return out;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    if (b <= a) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 30);
}

}  // namespace

double stroock_varopoulos_g(double u, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("stroock_varopoulos_g: need p > 1");
    if (u <= 0.0) return 0.0;
    // s = sigma^2 turns the p < 2 endpoint singularity into sigma^{p-1}.
    const double root = std::sqrt(u);
    auto integrand = [p](double sg) {
        return 2.0 * std::sqrt(p - 1.0) * std::pow(sg, p - 1.0) / std::sqrt(1.0 + sg * sg);
    };
    return integrate_adaptive(integrand, 0.0, root, 1e-10);
}

namespace {

/// G values for a whole field, sorted-incremental so adjacent nodes share work.
std::vector<double> g_field(const Field& u, double p) {
    const int n = u.size();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&u](int a, int b) { return u[a] < u[b]; });
    auto integrand = [p](double sg) {
        return 2.0 * std::sqrt(p - 1.0) * std::pow(sg, p - 1.0) / std::sqrt(1.0 + sg * sg);
    };
    std::vector<double> g(static_cast<size_t>(n), 0.0);
    double acc = 0.0, prev_root = 0.0;
    for (int idx : order) {
        const double root = std::sqrt(std::max(u[idx], 0.0));
        if (root > prev_root) {
            acc += integrate_adaptive(integrand, prev_root, root, 1e-11);
            prev_root = root;
        }
        g[static_cast<size_t>(idx)] = acc;
    }
    return g;
}

}  // namespace

StroockVaropoulosResult check_stroock_varopoulos(const Field& z, double p, double eps) {
    if (!(p > 1.0)) throw std::invalid_argument("check_stroock_varopoulos: need p > 1");
    if (!z.nonnegative())
        throw std::invalid_argument("check_stroock_varopoulos: z = log(1+u) must be >= 0");
    Field u = z.map([](double w) { return std::expm1(w); });

    const bool regularized = p < 1.5;
    Field a_of_z = Field::zeros(z.grid());
    for (int i = 0; i < u.size(); ++i) {
        const double ui = u[i];
        a_of_z[i] = (!regularized || ui >= eps) ? std::pow(ui, p - 1.0)
                                                : std::pow(eps, p - 2.0) * ui;
    }

    StroockVaropoulosResult res;
    res.lhs = inner(a_of_z, frac_laplacian_spectral(z, 1.0));

    Field b_of_z = Field::zeros(z.grid());
    if (!regularized) {
        std::vector<double> g = g_field(u, p);
        for (int i = 0; i < u.size(); ++i) b_of_z[i] = g[static_cast<size_t>(i)];
    } else {
        // B' = sqrt(A') with the linearized head: A'(s) = eps^{p-2} below eps.
        const double head_coef = std::pow(eps, 0.5 * (p - 2.0));
        auto tail_integrand = [p](double s) {
            return std::sqrt((p - 1.0) * std::pow(s, p - 2.0) / (1.0 + s));
        };
        for (int i = 0; i < u.size(); ++i) {
            const double ui = std::max(u[i], 0.0);
            const double head_to = std::min(ui, eps);
            double v = head_coef * 2.0 * (std::sqrt(1.0 + head_to) - 1.0);
            if (ui > eps) v += integrate_adaptive(tail_integrand, eps, ui, 1e-11);
            b_of_z[i] = v;
        }
    }
    res.rhs = quarter_laplacian_energy(b_of_z);
    res.scale = std::max({std::abs(res.lhs), std::abs(res.rhs), 1.0});
    return res;
}

StroockVaropoulosResult stroock_varopoulos_identity(const Field& z) {
    StroockVaropoulosResult res;
    res.lhs = inner(z, frac_laplacian_spectral(z, 1.0));
    res.rhs = quarter_laplacian_energy(z);
    res.scale = std::max({std::abs(res.lhs), std::abs(res.rhs), 1.0});
    return res;
}

double ngn_ratio(const Field& phi, double p, double q, double gamma) {
    if (!(p >= 1.0) || !(q > 1.0) || !(gamma > 0.0) || !(gamma < 1.0))
        throw std::invalid_argument("ngn_ratio: need p >= 1, q > 1, gamma in (0,1)");
    if (std::abs(q * gamma - 1.0) > 1e-9)
        throw std::invalid_argument("ngn_ratio: critical coupling q = 1/gamma required");
    const double qp = q / (q - 1.0);
    const double lhs = std::pow(lp_norm(phi, p + qp), p + qp);
    if (lhs == 0.0) return 0.0;
    Field d = frac_laplacian_spectral(phi, gamma);
    const double rhs =
        std::pow(p, qp) * std::pow(lp_norm(d, q), qp) * std::pow(lp_norm(phi, p), p);
    return lhs / rhs;
}

double orlicz_tail(double x, int k) {
    if (x <= 0.0) return 0.0;
    if (k <= 1) return std::expm1(x);
    if (x < 1.0) {
        // sum_{j>=k} x^j/j!, no cancellation
        double term = 1.0;
        for (int j = 1; j < k; ++j) term *= x / j;
        term *= x / k;
        double sum = term;
        for (int j = k + 1; j < k + 60; ++j) {
            term *= x / j;
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum;
    }
    double head = 0.0, term = 1.0;
    for (int j = 0; j < k; ++j) {
        head += term;
        term *= x / (j + 1);
    }
    return std::exp(x) - head;
}

double orlicz_integral(const Field& phi, double alpha, double rprime, int k) {
    double s = 0.0;
    for (double v : phi.values()) s += orlicz_tail(alpha * std::pow(std::abs(v), rprime), k);
    return phi.grid().h * s;
}

double trudinger_alpha_search(const std::vector<Field>& family, double p, double q,
                              double gamma, double tol) {
    if (family.empty()) throw std::invalid_argument("trudinger_alpha_search: empty family");
    const double r = std::max(p, q);
    const double rprime = r / (r - 1.0);
    const int k = static_cast<int>(std::ceil(p / rprime - 1e-9));

    // Normalize each nonzero member to ||phi||_p + ||(-Delta)^{gamma/2} phi||_q = 1.
    std::vector<Field> normalized;
    normalized.reserve(family.size());
    for (const Field& phi : family) {
        const double s = lp_norm(phi, p) + lp_norm(frac_laplacian_spectral(phi, gamma), q);
        if (s > 0.0)
            normalized.push_back((1.0 / s) * phi);
        else
            normalized.push_back(phi);
    }
    auto all_ok = [&](double alpha) {
        for (const Field& phi : normalized)
            if (orlicz_integral(phi, alpha, rprime, k) > 1.0) return false;
        return true;
    };

    double lo = 0.0, hi = 0.25;
    int guard = 0;
    while (all_ok(hi) && guard++ < 40) {
        lo = hi;
        hi *= 2.0;
    }
    if (guard >= 40) return lo;  // unbounded in practice only for trivial families
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (all_ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

namespace {

/// log(e^t - 1), stable for both small and large t > 0.
double log_em1(double t) {
    if (t > 30.0) return t + std::log1p(-std::exp(-t));
    return std::log(std::expm1(t));
}

double b1_margin(double a, double x) {
    const double ax = a * x, ax2 = a * x * x;
    if (a == 0.0 || x == 0.0) return 0.0;
    if (std::max(a, ax2) <= 500.0) {
        const double l = std::expm1(ax);
        const double lhs = l * l;
        const double rhs = std::expm1(a) * std::expm1(ax2);
        return (rhs - lhs) / std::max({lhs, rhs, 1.0});
    }
    const double m = log_em1(a) + log_em1(ax2) - 2.0 * log_em1(ax);
    return m >= 0.0 ? -std::expm1(-m) : std::expm1(m);
}

}  // namespace

double lemma_b1_worst_margin(std::span<const double> a_grid, std::span<const double> x_grid) {
    double worst = std::numeric_limits<double>::infinity();
    const auto na = static_cast<long>(a_grid.size());
    const auto nx = static_cast<long>(x_grid.size());
#pragma omp parallel for collapse(2) reduction(min : worst) schedule(static)
    for (long i = 0; i < na; ++i)
        for (long j = 0; j < nx; ++j)
            worst = std::min(worst, b1_margin(a_grid[static_cast<size_t>(i)],
                                              x_grid[static_cast<size_t>(j)]));
    return worst;
}

LogInequalityReport check_log_inequality_suite() {
    LogInequalityReport rep;
    rep.worst_log_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 500; ++i) {
        const double u = i == 0 ? 0.0 : std::pow(10.0, -8.0 + 11.0 * (i - 1) / 499.0);
        rep.worst_log_margin = std::min(rep.worst_log_margin, u - std::log1p(u));
    }

    // Smoothed positive-part sign p_d(s) = 1 - e^{-s_+/d}, primitive
    // j_d(z) = z_+ - d (1 - e^{-z_+/d}): increasing, 0 <= j <= |z|.
    rep.worst_j_lower = std::numeric_limits<double>::infinity();
    rep.worst_j_upper = std::numeric_limits<double>::infinity();
    for (double d : {1e-3, 0.1, 1.0}) {
        for (int i = 0; i <= 2000; ++i) {
            const double zv = -10.0 + 20.0 * i / 2000.0;
            const double zp = std::max(zv, 0.0);
            const double j = zp - d * (1.0 - std::exp(-zp / d));
            rep.worst_j_lower = std::min(rep.worst_j_lower, j);
            rep.worst_j_upper = std::min(rep.worst_j_upper, std::abs(zv) - j);
        }
    }

    rep.worst_psi_prime_error = 0.0;
    for (int i = 1; i <= 300; ++i) {
        const double s = std::pow(10.0, -4.0 + 7.0 * (i - 1) / 299.0);
        const double e = 1e-6 * std::max(1.0, s);
        const double fd = (psi(s + e) - psi(std::max(s - e, 0.0))) / (e + std::min(e, s));
        rep.worst_psi_prime_error =
            std::max(rep.worst_psi_prime_error, std::abs(fd - std::log1p(s)));
    }

    rep.passed = rep.worst_log_margin >= 0.0 && rep.worst_j_lower >= -1e-15 &&
                 rep.worst_j_upper >= -1e-12 && rep.worst_psi_prime_error <= 1e-8;
    return rep;
}

}  // namespace logdiff
