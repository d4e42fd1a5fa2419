#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "logdiff/grid.hpp"

namespace logdiff {

/// Reproducible catalog of nonnegative test fields.
struct SampleFamily {
    enum class Kind { GaussianBumps, MultiBump, RandomBandLimited, RescaledDilates };
    Kind kind = Kind::GaussianBumps;
    int count = 100;
    std::uint64_t seed = 0;

    std::vector<Field> generate(const Grid1D& grid) const;
};

struct StroockVaropoulosResult {
    double lhs = 0.0;   // int A(z) (-Delta)^{1/2} z
    double rhs = 0.0;   // || (-Delta)^{1/4} B(z) ||_2^2
    double scale = 0.0; // max(|lhs|, |rhs|, 1)
    bool holds(double slack = 1e-8) const { return lhs >= rhs - slack * scale; }
};

/// G(u) = int_0^u sqrt((p-1) s^{p-2} / (1+s)) ds by adaptive quadrature
/// (tolerance 1e-10); the s = sigma^2 substitution removes the integrable
/// endpoint singularity for p < 2.
double stroock_varopoulos_g(double u, double p);

/// The inequality int A(z) (-Delta)^{1/2} z >= || (-Delta)^{1/4} B(z) ||_2^2
/// with A' = (B')^2, instantiated at A(z) = u^{p-1}, z = log(1+u),
/// B(z) = G(u). For p < 3/2 the A_eps regularization (A linearized below
/// u = eps) keeps A(z) square-integrable.
StroockVaropoulosResult check_stroock_varopoulos(const Field& z, double p, double eps = 1e-4);

/// Plancherel equality witness: A = B = identity gives lhs = rhs exactly.
StroockVaropoulosResult stroock_varopoulos_identity(const Field& z);

/// ||phi||_{p+q'}^{p+q'} / ( p^{q'} ||(-Delta)^{gamma/2} phi||_q^{q'} ||phi||_p^p ),
/// the constant-free ratio of the Nash-Gagliardo-Nirenberg form at the
/// critical coupling q = 1/gamma (N = 1). Zero field gives 0.
double ngn_ratio(const Field& phi, double p, double q, double gamma);

/// Orlicz integrand sum_{j>=k} x^j / j! evaluated in compensated form
/// (series for small x, exponential minus head otherwise).
double orlicz_tail(double x, int k);

/// int ( e^{alpha |phi|^{r'}} - sum_{j<k} (alpha |phi|^{r'})^j / j! ) dx.
double orlicz_integral(const Field& phi, double alpha, double rprime, int k);

/// Largest alpha (bisection to `tol`) such that every member of the family,
/// normalized to ||phi||_p + ||(-Delta)^{gamma/2} phi||_q = 1, keeps the
/// Orlicz integral <= 1. r = max(p, q), r' = r/(r-1), k = ceil(p/r').
double trudinger_alpha_search(const std::vector<Field>& family, double p, double q,
                              double gamma, double tol = 1e-3);

/// Worst normalized margin of (e^{a x} - 1)^2 <= (e^a - 1)(e^{a x^2} - 1)
/// over the tensor grid; computed in log space when the exponentials would
/// overflow. Equality at x = 1 gives margin exactly 0.
double lemma_b1_worst_margin(std::span<const double> a_grid, std::span<const double> x_grid);

struct LogInequalityReport {
    double worst_log_margin = 0.0;      // min of u - log(1+u), expected >= 0
    double worst_j_lower = 0.0;         // min of j(z), expected >= 0
    double worst_j_upper = 0.0;         // min of |z| - j(z), expected >= 0
    double worst_psi_prime_error = 0.0; // sup |Psi'(s) - log(1+s)| by central difference
    bool passed = false;
};

/// Elementary inequalities used throughout: log(1+u) <= u, the smoothed
/// positive-sign primitive satisfies 0 <= j(z) <= |z|, and Psi' = log(1+s).
LogInequalityReport check_log_inequality_suite();

}  // namespace logdiff
