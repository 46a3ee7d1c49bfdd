#pragma once

// Special functions needed by the Pöschl-Teller entropy code: log-gamma on the
// real line and the complex plane, digamma, Beta functions, Gegenbauer
// polynomials. Everything here is pure and thread-safe.

#include <complex>
#include <vector>

namespace pt::specfun {

using Complex = std::complex<double>;

/// ln Γ(x) for x > 0.
double ln_gamma_real(double x);

/// Principal branch of ln Γ(z), continuous on C \ (-inf, 0].
/// Uses the reflection formula for Re z < 1/2.
Complex ln_gamma_complex(Complex z);

/// Ψ(x) = d/dx ln Γ(x) for x > 0.
double digamma(double x);

double ln_beta_real(double a, double b);
double beta_real(double a, double b);

/// ln B(n/2 + ip, n/2 - ip) = 2 Re ln Γ(n/2 + ip) - ln Γ(n).
double ln_beta_complex_symmetric(double n, double p);

/// B(n/2 + ip, n/2 - ip) = |Γ(n/2 + ip)|² / Γ(n). Real, positive, even in p.
double beta_complex_symmetric(double n, double p);

/// Gegenbauer polynomial C_n^rho(x) by forward three-term recurrence.
double gegenbauer(int n, double rho, double x);

/// C_0^rho(x) .. C_{count-1}^rho(x) in one recurrence sweep.
std::vector<double> gegenbauer_sequence(int count, double rho, double x);

}  // namespace pt::specfun
