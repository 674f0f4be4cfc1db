#include "fmd/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "fmd/rng.hpp"

namespace fmd {

namespace {

void check_cone(const DesignSetting& s, const HookeTensor& H) {
    if (H.dim != s.dim) throw Error(ErrorKind::ConeViolation, "dimension mismatch");
    if (s.scalar()) throw Error(ErrorKind::ConfigError, "scalar settings use the scalar module");
    if (s.isotropic_cone()) {
        if (!is_isotropic(H)) throw Error(ErrorKind::ConeViolation, "H must be isotropic");
        return;
    }
    HookeEigen e = hooke_eig(H);
    double lmax = std::max(e.values[0], 0.0);
    double lmin = e.values[static_cast<size_t>(e.n - 1)];
    if (lmin < -1e-10 * std::max(lmax, 1e-30))
        throw Error(ErrorKind::ConeViolation, "H must be positive semi-definite");
}

double quad_energy(const HookeTensor& H, const SymTensor& xi) {
    return 0.5 * dot(hooke_apply(H, xi), xi);
}

// trace / deviator invariants used by the isotropic settings
struct IsoInvariants {
    double tr_abs;
    double dev_norm;
};
IsoInvariants iso_invariants(const SymTensor& x) {
    TraceDev td = trace_dev_split(x);
    return {std::abs(td.tr), norm(td.dev)};
}

double pm_branch(const DesignSetting& s, double lambda) {
    return std::max(s.kappa_plus * lambda, -s.kappa_minus * lambda);
}
double pm_polar_branch(const DesignSetting& s, double lambda) {
    return std::max(lambda / s.kappa_plus, -lambda / s.kappa_minus);
}

}  // namespace

double pseudo_inverse_energy(const HookeTensor& H, const SymTensor& sigma) {
    HookeEigen e = hooke_eig(H);
    double lmax = std::max(e.values[0], 0.0);
    double rank_tol = 1e-10 * lmax;
    double in = 0, out2 = 0;
    for (int i = 0; i < e.n; ++i) {
        double c = 0;
        for (int k = 0; k < e.n; ++k) c += e.vectors[static_cast<size_t>(i)][static_cast<size_t>(k)] * sigma[k];
        if (e.values[static_cast<size_t>(i)] > rank_tol)
            in += c * c / e.values[static_cast<size_t>(i)];
        else
            out2 += c * c;
    }
    double sn = norm(sigma);
    if (std::sqrt(out2) > 1e-9 * std::max(sn, 1e-30)) return kInfEnergy;
    return 0.5 * in;
}

double strain_energy(const DesignSetting& s, const HookeTensor& H, const SymTensor& xi) {
    check_cone(s, H);
    switch (s.kind) {
        case SettingKind::AMD:
        case SettingKind::FibMD:
        case SettingKind::IMD:
            return quad_energy(H, xi);
        case SettingKind::FibMDpm:
            return j_pm(s, H, xi);
        case SettingKind::PowerLawIMD: {
            BulkShear kg = iso_moduli(H);
            IsoInvariants v = iso_invariants(xi);
            return (kg.K * std::pow(v.tr_abs, s.p) + 2.0 * kg.G * std::pow(v.dev_norm, s.p)) / s.p;
        }
        default:
            throw Error(ErrorKind::ConfigError, "scalar settings use the scalar module");
    }
}

namespace {

// j_pm^* for H whose range lies in span{v_i (x) v_i} of sigma's eigenbasis and
// is diagonal there.  Returns false if that structure does not hold.
bool pm_stress_energy_aligned(const DesignSetting& s, const HookeTensor& H,
                              const SymTensor& sigma, double* value) {
    int d = s.dim;
    EigenDecomposition es = eig_sym(sigma);
    double scale = std::max(hooke_norm(H), 1e-30);

    // basis of S^{dxd} adapted to sigma's eigenvectors
    SymTensor diag_basis[3];
    for (int i = 0; i < d; ++i) diag_basis[i] = outer(d, es.vectors[static_cast<size_t>(i)].data());

    double beta[3];
    for (int i = 0; i < d; ++i) {
        SymTensor Hi = hooke_apply(H, diag_basis[i]);
        beta[i] = dot(Hi, diag_basis[i]);
        // off-diagonal coupling or any component outside diag-span disqualifies
        SymTensor r = Hi - beta[i] * diag_basis[i];
        for (int j = 0; j < d; ++j)
            if (j != i) r -= dot(Hi, diag_basis[j]) * diag_basis[j];
        if (norm(r) > 1e-12 * scale) return false;
        for (int j = 0; j < d; ++j)
            if (j != i && std::abs(dot(Hi, diag_basis[j])) > 1e-12 * scale) return false;
    }
    // shear directions must be annihilated
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            double v[3] = {0, 0, 0};
            SymTensor shear(d);
            for (int k = 0; k < d; ++k)
                v[k] = (es.vectors[static_cast<size_t>(i)][static_cast<size_t>(k)] +
                        es.vectors[static_cast<size_t>(j)][static_cast<size_t>(k)]);
            // (vi + vj)(x)(vi + vj) = vi(x)vi + vj(x)vj + cross term
            shear = outer(d, v);
            shear -= diag_basis[i];
            shear -= diag_basis[j];
            shear *= 0.5;
            if (norm(hooke_apply(H, shear)) > 1e-12 * scale) return false;
        }

    double total = 0;
    double sigma_scale = std::max(norm(sigma), 1e-30);
    for (int i = 0; i < d; ++i) {
        double si = es.values[static_cast<size_t>(i)];
        if (beta[i] <= 1e-12 * scale) {
            if (std::abs(si) > 1e-9 * sigma_scale) {
                *value = kInfEnergy;
                return true;
            }
            continue;
        }
        if (si > 0)
            total += si * si / (s.kappa_plus * s.kappa_plus) / (2.0 * beta[i]);
        else
            total += si * si / (s.kappa_minus * s.kappa_minus) / (2.0 * beta[i]);
    }
    *value = total;
    return true;
}

SymTensor project_psd(const SymTensor& x) { return psd_split(x).pos; }
SymTensor project_nsd(const SymTensor& x) { return psd_split(x).neg; }

// Dykstra projection onto {X PSD} n {X - sigma PSD} (n range(H) when singular).
SymTensor project_split_set(const SymTensor& x0, const SymTensor& sigma, const HookeEigen* range,
                            double rank_tol, int iters) {
    int d = x0.dim;
    SymTensor x = x0;
    SymTensor p = sym_zero(d), q = sym_zero(d), r = sym_zero(d);
    for (int it = 0; it < iters; ++it) {
        SymTensor y = project_psd(x + p);
        p = x + p - y;
        SymTensor z = sigma + project_psd(y + q - sigma);
        q = y + q - z;
        x = z;
        if (range) {
            SymTensor w = x + r;
            SymTensor proj(d);
            for (int i = 0; i < range->n; ++i) {
                if (range->values[static_cast<size_t>(i)] <= rank_tol) continue;
                double c = 0;
                for (int k = 0; k < range->n; ++k)
                    c += range->vectors[static_cast<size_t>(i)][static_cast<size_t>(k)] * w[k];
                for (int k = 0; k < range->n; ++k)
                    proj[k] += c * range->vectors[static_cast<size_t>(i)][static_cast<size_t>(k)];
            }
            r = w - proj;
            x = proj;
        }
    }
    return x;
}

// General-purpose inf-convolution for j_pm^*: minimize
//   (1/k+^2) j*(H, X) + (1/k-^2) j*(H, X - sigma)  over the split set.
double pm_stress_energy_numeric(const DesignSetting& s, const HookeTensor& H,
                                const SymTensor& sigma) {
    HookeEigen e = hooke_eig(H);
    double lmax = std::max(e.values[0], 0.0);
    double rank_tol = 1e-10 * lmax;
    if (lmax <= 0) return norm(sigma) > 0 ? kInfEnergy : 0.0;
    // sigma must lie in range(H)
    {
        double out2 = 0;
        for (int i = 0; i < e.n; ++i) {
            if (e.values[static_cast<size_t>(i)] > rank_tol) continue;
            double c = 0;
            for (int k = 0; k < e.n; ++k)
                c += e.vectors[static_cast<size_t>(i)][static_cast<size_t>(k)] * sigma[k];
            out2 += c * c;
        }
        if (std::sqrt(out2) > 1e-9 * std::max(norm(sigma), 1e-30)) return kInfEnergy;
    }
    bool singular = e.values[static_cast<size_t>(e.n - 1)] <= rank_tol;
    double lmin_pos = lmax;
    for (int i = 0; i < e.n; ++i)
        if (e.values[static_cast<size_t>(i)] > rank_tol)
            lmin_pos = std::min(lmin_pos, e.values[static_cast<size_t>(i)]);

    auto pinv_apply = [&](const SymTensor& x) {
        SymTensor y(x.dim);
        for (int i = 0; i < e.n; ++i) {
            if (e.values[static_cast<size_t>(i)] <= rank_tol) continue;
            double c = 0;
            for (int k = 0; k < e.n; ++k)
                c += e.vectors[static_cast<size_t>(i)][static_cast<size_t>(k)] * x[k];
            c /= e.values[static_cast<size_t>(i)];
            for (int k = 0; k < e.n; ++k)
                y[k] += c * e.vectors[static_cast<size_t>(i)][static_cast<size_t>(k)];
        }
        return y;
    };

    double wp = 1.0 / (s.kappa_plus * s.kappa_plus);
    double wm = 1.0 / (s.kappa_minus * s.kappa_minus);
    double L = (wp + wm) / lmin_pos;
    double step = 1.0 / L;

    SymTensor x = project_split_set(psd_split(sigma).pos, sigma, singular ? &e : nullptr, rank_tol, 64);
    for (int it = 0; it < 2000; ++it) {
        SymTensor grad = wp * pinv_apply(x) + wm * pinv_apply(x - sigma);
        SymTensor next = project_split_set(x - step * grad, sigma, singular ? &e : nullptr, rank_tol, 32);
        double move = norm(next - x);
        x = next;
        if (move <= 1e-13 * std::max(1.0, norm(sigma))) break;
    }
    x = project_split_set(x, sigma, singular ? &e : nullptr, rank_tol, 256);
    // evaluate on the strictly feasible split (clip residual negativity)
    SymTensor xp = project_psd(x);
    SymTensor xm = project_nsd(x - sigma);
    double v = wp * 0.5 * dot(pinv_apply(xp), xp) + wm * 0.5 * dot(pinv_apply(xm), xm);
    return v;
}

}  // namespace

double stress_energy(const DesignSetting& s, const HookeTensor& H, const SymTensor& sigma) {
    check_cone(s, H);
    switch (s.kind) {
        case SettingKind::AMD:
        case SettingKind::FibMD:
        case SettingKind::IMD:
            return pseudo_inverse_energy(H, sigma);
        case SettingKind::FibMDpm: {
            double v;
            if (pm_stress_energy_aligned(s, H, sigma, &v)) return v;
            return pm_stress_energy_numeric(s, H, sigma);
        }
        case SettingKind::PowerLawIMD: {
            BulkShear kg = iso_moduli(H);
            IsoInvariants v = iso_invariants(sigma);
            double pc = s.p_conj();
            double t = 0;
            double tr_term = v.tr_abs / s.dim;
            if (kg.K > 0)
                t += std::pow(kg.K, 1.0 - pc) * std::pow(tr_term, pc);
            else if (tr_term > 1e-14 * std::max(norm(sigma), 1e-30))
                return kInfEnergy;
            if (kg.G > 0)
                t += std::pow(2.0 * kg.G, 1.0 - pc) * std::pow(v.dev_norm, pc);
            else if (v.dev_norm > 1e-14 * std::max(norm(sigma), 1e-30))
                return kInfEnergy;
            return t / pc;
        }
        default:
            throw Error(ErrorKind::ConfigError, "scalar settings use the scalar module");
    }
}

double rho(const DesignSetting& s, const SymTensor& xi) {
    switch (s.kind) {
        case SettingKind::AMD:
            return norm(xi);
        case SettingKind::FibMD: {
            EigenDecomposition e = eig_sym(xi);
            double m = 0;
            for (int i = 0; i < s.dim; ++i) m = std::max(m, std::abs(e.values[static_cast<size_t>(i)]));
            return m;
        }
        case SettingKind::FibMDpm: {
            EigenDecomposition e = eig_sym(xi);
            double m = 0;
            for (int i = 0; i < s.dim; ++i) m = std::max(m, pm_branch(s, e.values[static_cast<size_t>(i)]));
            return m;
        }
        case SettingKind::IMD:
        case SettingKind::PowerLawIMD: {
            IsoInvariants v = iso_invariants(xi);
            double N1 = sym_dim(s.dim) - 1;
            return std::max(v.tr_abs / std::pow(s.dim, 1.0 / s.p),
                            v.dev_norm / std::pow(N1, 1.0 / s.p));
        }
        default:
            throw Error(ErrorKind::ConfigError, "scalar settings use the scalar module");
    }
}

double rho_polar(const DesignSetting& s, const SymTensor& sigma) {
    switch (s.kind) {
        case SettingKind::AMD:
            return norm(sigma);
        case SettingKind::FibMD: {
            EigenDecomposition e = eig_sym(sigma);
            double m = 0;
            for (int i = 0; i < s.dim; ++i) m += std::abs(e.values[static_cast<size_t>(i)]);
            return m;
        }
        case SettingKind::FibMDpm: {
            EigenDecomposition e = eig_sym(sigma);
            double m = 0;
            for (int i = 0; i < s.dim; ++i) m += pm_polar_branch(s, e.values[static_cast<size_t>(i)]);
            return m;
        }
        case SettingKind::IMD:
        case SettingKind::PowerLawIMD: {
            IsoInvariants v = iso_invariants(sigma);
            double N1 = sym_dim(s.dim) - 1;
            return v.tr_abs / std::pow(s.dim, 1.0 / s.p_conj()) + std::pow(N1, 1.0 / s.p) * v.dev_norm;
        }
        default:
            throw Error(ErrorKind::ConfigError, "scalar settings use the scalar module");
    }
}

HookeTensor optimal_hooke_for_stress(const DesignSetting& s, const SymTensor& sigma) {
    double sn = norm(sigma);
    if (sn <= 0) throw Error(ErrorKind::DegenerateStress, "zero stress has no optimal Hooke tensor");
    switch (s.kind) {
        case SettingKind::AMD:
            return dyadic((1.0 / sn) * sigma);
        case SettingKind::FibMD: {
            EigenDecomposition e = eig_sym(sigma);
            double r0 = rho_polar(s, sigma);
            HookeTensor H(s.dim);
            for (int i = 0; i < s.dim; ++i) {
                SymTensor vv = outer(s.dim, e.vectors[static_cast<size_t>(i)].data());
                H += (std::abs(e.values[static_cast<size_t>(i)]) / r0) * dyadic(vv);
            }
            return H;
        }
        case SettingKind::FibMDpm: {
            EigenDecomposition e = eig_sym(sigma);
            double r0 = rho_polar(s, sigma);
            HookeTensor H(s.dim);
            for (int i = 0; i < s.dim; ++i) {
                SymTensor vv = outer(s.dim, e.vectors[static_cast<size_t>(i)].data());
                H += (pm_polar_branch(s, e.values[static_cast<size_t>(i)]) / r0) * dyadic(vv);
            }
            return H;
        }
        case SettingKind::IMD:
        case SettingKind::PowerLawIMD: {
            IsoInvariants v = iso_invariants(sigma);
            double N1 = sym_dim(s.dim) - 1;
            double c0 = v.tr_abs / std::pow(s.dim, 1.0 / s.p_conj());
            double c1 = std::pow(N1, 1.0 / s.p) * v.dev_norm;
            double A1 = c0 / (c0 + c1), A2 = c1 / (c0 + c1);
            return iso_hooke(A1 / s.dim, A2 / (2.0 * N1), s.dim);
        }
        default:
            throw Error(ErrorKind::ConfigError, "scalar settings use the scalar module");
    }
}

HookeTensor optimal_hooke_for_strain(const DesignSetting& s, const SymTensor& xi) {
    double xn = norm(xi);
    if (xn <= 0) throw Error(ErrorKind::DegenerateStress, "zero strain has no optimal Hooke tensor");
    switch (s.kind) {
        case SettingKind::AMD:
            return dyadic((1.0 / xn) * xi);
        case SettingKind::FibMD:
        case SettingKind::FibMDpm: {
            EigenDecomposition e = eig_sym(xi);
            int best = 0;
            double bv = -1;
            for (int i = 0; i < s.dim; ++i) {
                double v = (s.kind == SettingKind::FibMD)
                               ? std::abs(e.values[static_cast<size_t>(i)])
                               : pm_branch(s, e.values[static_cast<size_t>(i)]);
                if (v > bv + 1e-15) {
                    bv = v;
                    best = i;
                }
            }
            SymTensor vv = outer(s.dim, e.vectors[static_cast<size_t>(best)].data());
            return dyadic(vv);
        }
        case SettingKind::IMD:
        case SettingKind::PowerLawIMD: {
            IsoInvariants v = iso_invariants(xi);
            double N1 = sym_dim(s.dim) - 1;
            double t0 = v.tr_abs / std::pow(s.dim, 1.0 / s.p);
            double t1 = v.dev_norm / std::pow(N1, 1.0 / s.p);
            // tie goes to the trace branch
            if (t0 >= t1) return iso_hooke(1.0 / s.dim, 0.0, s.dim);
            return iso_hooke(0.0, 1.0 / (2.0 * N1), s.dim);
        }
        default:
            throw Error(ErrorKind::ConfigError, "scalar settings use the scalar module");
    }
}

bool is_hooke_optimal_for_stress(const DesignSetting& s, const HookeTensor& H,
                                 const SymTensor& sigma, double tol) {
    if (hooke_trace(H) > 1.0 + tol) return false;
    double target = std::pow(rho_polar(s, sigma), s.p_conj()) / s.p_conj();
    double v = stress_energy(s, H, sigma);
    if (v >= kInfEnergy) return false;
    return v <= target * (1.0 + tol) + 1e-300;
}

bool extremality_check(const DesignSetting& s, const SymTensor& xi, const SymTensor& sigma,
                       double tol) {
    return dot(xi, sigma) >= (1.0 - tol) * rho(s, xi) * rho_polar(s, sigma);
}

// ---- j+, j- ----------------------------------------------------------------

double j_minus_iso(double K, double G, const SymTensor& xi) {
    if (xi.dim != 2) throw Error(ErrorKind::ConfigError, "closed form requires d = 2");
    if (K < 0 || G < 0) throw Error(ErrorKind::ConeViolation, "negative moduli");
    if (K + G <= 0) return 0.0;
    EigenDecomposition e = eig_sym(xi);
    double l1 = e.values[0], l2 = e.values[1];
    double nu = (K - G) / (K + G);
    if (l2 >= 0) return 0.0;
    if (l1 + nu * l2 >= 0) {
        double E = 4.0 * K * G / (K + G);
        return 0.5 * E * l2 * l2;
    }
    TraceDev td = trace_dev_split(xi);
    return 0.5 * (K * td.tr * td.tr + 2.0 * G * dot(td.dev, td.dev));
}

double j_plus_iso(double K, double G, const SymTensor& xi) { return j_minus_iso(K, G, -1.0 * xi); }

namespace {

// inf over shifts z in the PSD (sign=+1) or NSD (sign=-1) cone of j(H, xi+z)
double j_shift_numeric(const HookeTensor& H, const SymTensor& xi, int sign) {
    double L = hooke_opnorm(H);
    if (L <= 0) return 0.0;
    double step = 1.0 / L;
    auto project = [&](const SymTensor& z) { return sign > 0 ? project_psd(z) : project_nsd(z); };
    SymTensor z = sym_zero(xi.dim);
    double gtol = 1e-12 * std::max(1.0, L * norm(xi));
    for (int it = 0; it < 500; ++it) {
        SymTensor grad = hooke_apply(H, xi + z);
        SymTensor next = project(z - step * grad);
        double move = norm(next - z) / step;
        z = next;
        if (move <= gtol) break;
    }
    return quad_energy(H, xi + z);
}

}  // namespace

double j_minus_numeric(const HookeTensor& H, const SymTensor& xi) {
    return j_shift_numeric(H, xi, -1);
}
double j_plus_numeric(const HookeTensor& H, const SymTensor& xi) {
    return j_shift_numeric(H, xi, +1);
}

double j_pm(const DesignSetting& s, const HookeTensor& H, const SymTensor& xi) {
    double kp2 = s.kappa_plus * s.kappa_plus;
    double km2 = s.kappa_minus * s.kappa_minus;
    if (H.dim == 2 && is_isotropic(H)) {
        BulkShear kg = iso_moduli(H);
        return kp2 * j_plus_iso(kg.K, kg.G, xi) + km2 * j_minus_iso(kg.K, kg.G, xi);
    }
    return kp2 * j_plus_numeric(H, xi) + km2 * j_minus_numeric(H, xi);
}

// ---- brute-force sampling oracle -------------------------------------------

namespace {

SymTensor random_sym(CounterRng& rng, int d) {
    SymTensor x(d);
    for (int i = 0; i < sym_dim(d); ++i) x[i] = rng.normal();
    return x;
}

double uniaxial_energy(const DesignSetting& s, const SymTensor& xi, const double* eta) {
    SymTensor vv = outer(s.dim, eta);
    double c = dot(xi, vv);
    if (s.kind == SettingKind::FibMDpm)
        return 0.5 * pm_branch(s, c) * pm_branch(s, c);
    return 0.5 * c * c;
}

}  // namespace

double brute_force_rho(const DesignSetting& s, const SymTensor& xi, int n, uint64_t seed) {
    CounterRng rng(seed);
    double best = 0;
    switch (s.kind) {
        case SettingKind::AMD: {
            // normalized dyadics of random symmetric tensors, plus convex mixtures
            for (int k = 0; k < n; ++k) {
                SymTensor A = random_sym(rng, s.dim);
                double an = norm(A);
                if (an < 1e-12) continue;
                double c = dot(xi, A) / an;
                double e = 0.5 * c * c;
                if (k % 4 == 3) {
                    SymTensor B = random_sym(rng, s.dim);
                    double bn = norm(B);
                    if (bn > 1e-12) {
                        double t = rng.next_double();
                        double cb = dot(xi, B) / bn;
                        e = 0.5 * (t * c * c + (1.0 - t) * cb * cb);
                    }
                }
                best = std::max(best, e);
            }
            break;
        }
        case SettingKind::FibMD:
        case SettingKind::FibMDpm: {
            // uni-axial directions
            for (int k = 0; k < n; ++k) {
                double eta[3] = {0, 0, 0};
                if (s.dim == 2) {
                    double th = rng.uniform(0, 3.14159265358979323846);
                    eta[0] = std::cos(th);
                    eta[1] = std::sin(th);
                } else {
                    double nn = 0;
                    for (int i = 0; i < 3; ++i) {
                        eta[i] = rng.normal();
                        nn += eta[i] * eta[i];
                    }
                    nn = std::sqrt(nn);
                    if (nn < 1e-12) continue;
                    for (int i = 0; i < 3; ++i) eta[i] /= nn;
                }
                best = std::max(best, uniaxial_energy(s, xi, eta));
            }
            break;
        }
        case SettingKind::IMD:
        case SettingKind::PowerLawIMD: {
            // (A1, A2) simplex grid, A1 + A2 = 1
            IsoInvariants v = iso_invariants(xi);
            double N1 = sym_dim(s.dim) - 1;
            double t0 = std::pow(v.tr_abs / std::pow(s.dim, 1.0 / s.p), s.p);
            double t1 = std::pow(v.dev_norm / std::pow(N1, 1.0 / s.p), s.p);
            for (int k = 0; k < n; ++k) {
                double a1 = (n == 1) ? 1.0 : static_cast<double>(k) / (n - 1);
                best = std::max(best, (a1 * t0 + (1.0 - a1) * t1) / s.p);
            }
            break;
        }
        default:
            throw Error(ErrorKind::ConfigError, "scalar settings use the scalar module");
    }
    return best;
}

}  // namespace fmd
