////////////////////////////////////////////////////////////////////////////////
// lcp.hpp
//
// Discretization and first-order solver for the Linear Constrained Problem
//
//   (P)   Z = sup { <F, u> : rho(e(u)) <= 1 cell-wise }
//   (P*)  Z = min { sum_c rho0(tau_c) h^2 : equilibrium B^T (tau h^2) = F }
//
// solved by a Chambolle-Pock primal-dual iteration with per-cell projections
// (primal) and shrinkage (dual), followed by feasibility post-processing that
// turns the iterates into certified bounds Z_primal <= Z_h <= Z_dual.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <vector>

#include "fmd/grid.hpp"
#include "fmd/settings.hpp"
#include "fmd/tensors.hpp"

namespace fmd {

// Euclidean projection onto { rho(.) <= 1 }.
SymTensor project_rho_ball(const DesignSetting& s, const SymTensor& xi);

// prox of t * rho0: argmin_x 1/2 |x - tau|^2 + t rho0(x).
SymTensor shrink_rho_polar(const DesignSetting& s, const SymTensor& tau, double t);

struct LcpOptions {
    int max_iter = 400000;
    double gap_tol = 1e-4;      // relative duality gap target
    double step_ratio = -1.0;   // dual/primal step balance; <= 0 selects a heuristic
    int check_interval = 250;   // certificate evaluation cadence (grows geometrically)
};

struct LcpSolution {
    Grid grid;
    DesignSetting setting;
    std::vector<double> u;        // nodal displacements, feasibility-rescaled
    std::vector<SymTensor> tau;   // cell force-flux densities, equilibrated
    double Z_primal = 0;
    double Z_dual = 0;
    double gap = 0;               // Z_dual - Z_primal
    int iterations = 0;
    bool converged = false;
    double equilibrium_residual = 0;  // ||B^T (tau h^2) - F|| / ||F||
    double kernel_load_norm = 0;      // part of F unreachable by B^T (projected out)

    double Z() const { return Z_dual; }
    double relative_gap() const { return Z_dual > 0 ? gap / Z_dual : 0.0; }
};

// Certified primal/dual values for a candidate pair: u is rescaled to
// rho(Bu) <= 1 exactly, tau receives one least-squares equilibrium correction.
struct Certificate {
    double Z_primal;
    double Z_dual;
    double gap;
    double equilibrium_residual;
};
Certificate certify(const StrainOperator& B, const DesignSetting& s,
                    const std::vector<double>& load, std::vector<double>& u,
                    std::vector<double>& y);

LcpSolution solve_lcp(const Grid& grid, const LoadSpec& loads, const DesignSetting& setting,
                      const LcpOptions& opts = {});

double duality_gap(const LcpSolution& sol);

}  // namespace fmd
