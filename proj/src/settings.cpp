#include "fmd/settings.hpp"

namespace fmd {

namespace {
void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(ErrorKind::ConfigError, msg);
}
}  // namespace

DesignSetting amd(int d) { return DesignSetting{SettingKind::AMD, d, 1, 1, 2}; }
DesignSetting fibmd(int d) { return DesignSetting{SettingKind::FibMD, d, 1, 1, 2}; }

DesignSetting fibmdpm(double kp, double km, int d) {
    require(kp > 0 && km > 0, "fibmdpm requires kappa_plus, kappa_minus > 0");
    return DesignSetting{SettingKind::FibMDpm, d, kp, km, 2};
}

DesignSetting imd(int d) { return DesignSetting{SettingKind::IMD, d, 1, 1, 2}; }

DesignSetting power_law_imd(double p, int d) {
    require(p > 1, "power-law exponent must lie in (1, inf)");
    return DesignSetting{SettingKind::PowerLawIMD, d, 1, 1, p};
}

DesignSetting scalar_amd(int d) { return DesignSetting{SettingKind::ScalarAMD, d, 1, 1, 2}; }
DesignSetting scalar_iso(int d) { return DesignSetting{SettingKind::ScalarIso, d, 1, 1, 2}; }

std::string setting_name(const DesignSetting& s) {
    switch (s.kind) {
        case SettingKind::AMD: return "amd";
        case SettingKind::FibMD: return "fibmd";
        case SettingKind::FibMDpm: return "fibmdpm";
        case SettingKind::IMD: return "imd";
        case SettingKind::PowerLawIMD: return "powerlaw_imd";
        case SettingKind::ScalarAMD: return "scalar_amd";
        case SettingKind::ScalarIso: return "scalar_iso";
    }
    return "?";
}

DesignSetting setting_from_name(const std::string& name, int dim, double kp, double km, double p) {
    if (name == "amd") return amd(dim);
    if (name == "fibmd") return fibmd(dim);
    if (name == "fibmdpm") return fibmdpm(kp, km, dim);
    if (name == "imd") return imd(dim);
    if (name == "powerlaw_imd") return power_law_imd(p, dim);
    if (name == "scalar_amd") return scalar_amd(dim);
    if (name == "scalar_iso") return scalar_iso(dim);
    throw Error(ErrorKind::ConfigError, "unknown setting '" + name + "'");
}

}  // namespace fmd
