////////////////////////////////////////////////////////////////////////////////
// settings.hpp
//
// The design setting selects the admissible cone of Hooke tensors, the
// elastic potential and the cost:
//
//   AMD         - all PSD Hooke tensors, j = 1/2 <H x, x>, c = tr
//   FibMD       - convex hull of uni-axial tensors a (v(x)v)(x)(v(x)v)
//   FibMDpm     - FibMD cone with the tension/compression-dissymmetric
//                 potential j_pm = k+^2 j+ + k-^2 j-
//   IMD         - isotropic tensors iso(K, G)
//   PowerLawIMD - isotropic tensors with the p-homogeneous power-law potential
//   ScalarAMD / ScalarIso - conductivity variants (scalar module)
//
// All elasticity settings use the trace cost and p = 2 except PowerLawIMD.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <string>

#include "fmd/tensors.hpp"

namespace fmd {

enum class SettingKind { AMD, FibMD, FibMDpm, IMD, PowerLawIMD, ScalarAMD, ScalarIso };

struct DesignSetting {
    SettingKind kind = SettingKind::AMD;
    int dim = 2;
    double kappa_plus = 1.0;   // FibMDpm only
    double kappa_minus = 1.0;  // FibMDpm only
    double p = 2.0;            // PowerLawIMD only; 2 otherwise

    double p_conj() const { return p / (p - 1.0); }
    bool scalar() const { return kind == SettingKind::ScalarAMD || kind == SettingKind::ScalarIso; }
    bool isotropic_cone() const { return kind == SettingKind::IMD || kind == SettingKind::PowerLawIMD; }
};

DesignSetting amd(int d = 2);
DesignSetting fibmd(int d = 2);
DesignSetting fibmdpm(double kappa_plus, double kappa_minus, int d = 2);
DesignSetting imd(int d = 2);
DesignSetting power_law_imd(double p, int d = 2);
DesignSetting scalar_amd(int d = 2);
DesignSetting scalar_iso(int d = 2);

std::string setting_name(const DesignSetting& s);
DesignSetting setting_from_name(const std::string& name, int dim, double kp, double km, double p);

}  // namespace fmd
