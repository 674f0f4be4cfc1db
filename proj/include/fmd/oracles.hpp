////////////////////////////////////////////////////////////////////////////////
// oracles.hpp
//
// Point-wise design oracles.  For a setting with admissible cone Hs, unit-cost
// slice Hc = {H in Hs : tr H <= 1} and potential j, these evaluate
//
//   strain_energy   j(H, xi)
//   stress_energy   j*(H, sigma)        (Fenchel conjugate in the 2nd arg)
//   rho             gauge with  max_{H in Hc} j(H, xi) = rho(xi)^p / p
//   rho_polar       its polar:  min_{H in Hc} j*(H, s) = rho_polar(s)^p' / p'
//
// together with the optimal-Hooke-tensor maps for a given strain or stress,
// membership/extremality tests, and the tension/compression-dissymmetric
// potentials j+, j-, j_pm.
//
// Closed forms per setting:
//   AMD     rho = |xi|            rho0 = |s|        H(s) = (s/|s|) (x) (s/|s|)
//   FibMD   rho = max_i |l_i|     rho0 = sum |l_i|  H(s) = sum |l_i|/rho0 v_i x4
//   FibMDpm rho = max max{k+ l_i, -k- l_i}
//           rho0 = sum max{l_i/k+, -l_i/k-}
//   IMD     rho = max{|tr|/sqrt(d), |dev|/sqrt(N-1)}
//           rho0 = |tr|/sqrt(d) + sqrt(N-1) |dev|
//           H(s): K = |tr s| / (d sqrt(d) rho0), G = |dev s| / (2 sqrt(N-1) rho0)
//   PowerLawIMD: same with exponents 1/p, 1/p' in the normalizations.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include "fmd/settings.hpp"
#include "fmd/tensors.hpp"

namespace fmd {

constexpr double kInfEnergy = 1e300;  // sentinel for j* = +infinity

// j(H, xi).  Throws ConeViolation if H is outside the setting's cone
// (PSD for AMD/FibMD/FibMDpm, isotropic for IMD/PowerLawIMD).
double strain_energy(const DesignSetting& s, const HookeTensor& H, const SymTensor& xi);

// j*(H, sigma); returns a value >= kInfEnergy when sigma is not reachable
// (outside range(H) for the quadratic settings).
double stress_energy(const DesignSetting& s, const HookeTensor& H, const SymTensor& sigma);

double rho(const DesignSetting& s, const SymTensor& xi);
double rho_polar(const DesignSetting& s, const SymTensor& sigma);

// The deterministic "universal" minimizer of j*(., sigma) over Hc.  Throws
// DegenerateStress for sigma = 0.
HookeTensor optimal_hooke_for_stress(const DesignSetting& s, const SymTensor& sigma);

// A deterministic maximizer of j(., xi) over Hc.  Throws for xi = 0.
HookeTensor optimal_hooke_for_strain(const DesignSetting& s, const SymTensor& xi);

// Membership test: cost(H) <= 1+tol and j*(H, sigma) <= (rho0^p'/p') (1+tol).
bool is_hooke_optimal_for_stress(const DesignSetting& s, const HookeTensor& H,
                                 const SymTensor& sigma, double tol);

// <xi, sigma> >= (1 - tol) rho(xi) rho_polar(sigma).
bool extremality_check(const DesignSetting& s, const SymTensor& xi, const SymTensor& sigma,
                       double tol);

// ---- dissymmetric potentials (p = 2) -------------------------------------

// j-(H, xi) = inf { j(H, xi + z) : z NSD }  and  j+(H, xi) = inf over z PSD.
// Closed form for isotropic H in d = 2 (three regimes):
//     j          on Sigma1 = { l1 + nu l2 <= 0 }   (l1 >= l2, nu = (K-G)/(K+G))
//     E/2 l2^2   on Sigma2 = { l2 < 0, l1 + nu l2 >= 0 }
//     0          on PSD xi
double j_minus_iso(double K, double G, const SymTensor& xi);
double j_plus_iso(double K, double G, const SymTensor& xi);

// Numeric inner minimization (projected gradient on the NSD/PSD shift,
// step 1/L, 500 iterations, 1e-12 gradient tolerance).  Works for any PSD H.
double j_minus_numeric(const HookeTensor& H, const SymTensor& xi);
double j_plus_numeric(const HookeTensor& H, const SymTensor& xi);

// j_pm = k+^2 j+ + k-^2 j-.  Uses the closed form when H is isotropic,
// the projected-gradient path otherwise.
double j_pm(const DesignSetting& s, const HookeTensor& H, const SymTensor& xi);

// ---- sampling oracle -------------------------------------------------------

// Max of strain_energy over n cost-1 samples of the setting's cone: a lower
// bound on rho(xi)^p / p converging from below.  Deterministic in (seed, n)
// and monotone in n on nested sample sets.
double brute_force_rho(const DesignSetting& s, const SymTensor& xi, int n, uint64_t seed = 1);

// ---- internals shared with other modules ----------------------------------

// Pseudo-inverse energy 1/2 <H^+ s, s> with the spec'd rank tolerance:
// eigenvalues below 1e-10 lambda_max are treated as zero; s counts as
// in-range when its out-of-range component is <= 1e-9 |s|.
double pseudo_inverse_energy(const HookeTensor& H, const SymTensor& sigma);

}  // namespace fmd
