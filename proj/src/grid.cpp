#include "fmd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "fmd/rng.hpp"

namespace fmd {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
}

Grid make_grid(double ox, double oy, double width, double height, int nx, int ny) {
    if (nx <= 0 || ny <= 0) throw Error(ErrorKind::ConfigError, "grid needs nx, ny >= 1");
    double hx = width / nx, hy = height / ny;
    if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy))
        throw Error(ErrorKind::ConfigError, "grid cells must be square: width/nx must equal height/ny");
    Grid g;
    g.origin_x = ox;
    g.origin_y = oy;
    g.h = hx;
    g.nx = nx;
    g.ny = ny;
    return g;
}

std::array<double, 2> LoadSpec::resultant() const {
    double rx = 0, ry = 0;
    for (const auto& p : points) {
        rx += p.fx;
        ry += p.fy;
    }
    for (const auto& s : segments) {
        double len = std::hypot(s.bx - s.ax, s.by - s.ay);
        rx += s.qx * len;
        ry += s.qy * len;
    }
    return {rx, ry};
}

double LoadSpec::moment() const {
    double m = 0;
    for (const auto& p : points) m += p.x * p.fy - p.y * p.fx;
    for (const auto& s : segments) {
        double len = std::hypot(s.bx - s.ax, s.by - s.ay);
        double mx = 0.5 * (s.ax + s.bx), my = 0.5 * (s.ay + s.by);
        m += (mx * s.qy - my * s.qx) * len;
    }
    return m;
}

double LoadSpec::magnitude() const {
    double m = 0;
    double diam = 1e-30;
    for (const auto& p : points) {
        m += std::hypot(p.fx, p.fy);
        diam = std::max({diam, std::abs(p.x), std::abs(p.y)});
    }
    for (const auto& s : segments) {
        double len = std::hypot(s.bx - s.ax, s.by - s.ay);
        m += std::hypot(s.qx, s.qy) * len;
        diam = std::max({diam, std::abs(s.ax), std::abs(s.ay), std::abs(s.bx), std::abs(s.by)});
    }
    return m * std::max(1.0, diam);
}

void LoadSpec::require_balanced() const {
    double scale = magnitude();
    if (scale <= 0) return;
    auto r = resultant();
    double m = moment();
    if (std::hypot(r[0], r[1]) > 1e-9 * scale || std::abs(m) > 1e-9 * scale) {
        throw Error(ErrorKind::UnbalancedLoad,
                    "load is not balanced: resultant (" + std::to_string(r[0]) + ", " +
                        std::to_string(r[1]) + "), moment " + std::to_string(m));
    }
}

void StrainOperator::apply(const double* u, double* eps) const {
    const Grid& g = grid_;
    const double inv2h = 1.0 / (2.0 * g.h);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            int n00 = g.node_id(i, j), n10 = g.node_id(i + 1, j);
            int n01 = g.node_id(i, j + 1), n11 = g.node_id(i + 1, j + 1);
            double ux00 = u[2 * n00], uy00 = u[2 * n00 + 1];
            double ux10 = u[2 * n10], uy10 = u[2 * n10 + 1];
            double ux01 = u[2 * n01], uy01 = u[2 * n01 + 1];
            double ux11 = u[2 * n11], uy11 = u[2 * n11 + 1];
            double dudx = ((ux10 + ux11) - (ux00 + ux01)) * inv2h;
            double dvdy = ((uy01 + uy11) - (uy00 + uy10)) * inv2h;
            double dudy = ((ux01 + ux11) - (ux00 + ux10)) * inv2h;
            double dvdx = ((uy10 + uy11) - (uy00 + uy01)) * inv2h;
            int c = 3 * g.cell_id(i, j);
            eps[c] = dudx;
            eps[c + 1] = dvdy;
            eps[c + 2] = kSqrt2 * 0.5 * (dudy + dvdx);
        }
}

void StrainOperator::apply_transpose(const double* y, double* f) const {
    const Grid& g = grid_;
    const double inv2h = 1.0 / (2.0 * g.h);
    const double s = kSqrt2 * 0.5;
    // gather form: each node sums contributions of its (up to 4) adjacent cells
    for (int j = 0; j < g.nodes_y(); ++j)
        for (int i = 0; i < g.nodes_x(); ++i) {
            double fx = 0, fy = 0;
            // cell (ci, cj) containing this node as corner (di, dj), di/dj = 0 means
            // the node is the cell's right/top corner
            for (int dj = 0; dj < 2; ++dj)
                for (int di = 0; di < 2; ++di) {
                    int ci = i - 1 + di, cj = j - 1 + dj;
                    if (ci < 0 || ci >= g.nx || cj < 0 || cj >= g.ny) continue;
                    int c = 3 * g.cell_id(ci, cj);
                    double sx = (di == 0) ? 1.0 : -1.0;  // node on right edge of cell -> +
                    double sy = (dj == 0) ? 1.0 : -1.0;
                    fx += inv2h * (sx * y[c] + sy * s * y[c + 2]);
                    fy += inv2h * (sy * y[c + 1] + sx * s * y[c + 2]);
                }
            f[2 * g.node_id(i, j)] = fx;
            f[2 * g.node_id(i, j) + 1] = fy;
        }
}

double StrainOperator::op_norm_estimate(int iterations) const {
    std::vector<double> u(static_cast<size_t>(dofs())), eps(static_cast<size_t>(strain_size()));
    CounterRng rng(12345);
    for (auto& v : u) v = rng.normal();
    double lambda = 0;
    for (int it = 0; it < iterations; ++it) {
        apply(u.data(), eps.data());
        apply_transpose(eps.data(), u.data());
        double nrm = 0;
        for (double v : u) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300) return 0;
        for (auto& v : u) v /= nrm;
        lambda = nrm;
    }
    return std::sqrt(lambda);
}

std::vector<std::vector<double>> StrainOperator::kernel_basis() const {
    const Grid& g = grid_;
    std::vector<std::vector<double>> modes;
    auto push = [&](auto&& fill) {
        std::vector<double> v(static_cast<size_t>(dofs()), 0.0);
        for (int j = 0; j < g.nodes_y(); ++j)
            for (int i = 0; i < g.nodes_x(); ++i) fill(v, i, j);
        modes.push_back(std::move(v));
    };
    // translations
    push([&](std::vector<double>& v, int i, int j) { v[2 * static_cast<size_t>(g.node_id(i, j))] = 1.0; });
    push([&](std::vector<double>& v, int i, int j) { v[2 * static_cast<size_t>(g.node_id(i, j)) + 1] = 1.0; });
    // rotation (-y, x)
    push([&](std::vector<double>& v, int i, int j) {
        size_t n = static_cast<size_t>(g.node_id(i, j));
        v[2 * n] = -g.node_y(j);
        v[2 * n + 1] = g.node_x(i);
    });
    // checkerboard hourglass modes of the one-point quadrature
    push([&](std::vector<double>& v, int i, int j) {
        v[2 * static_cast<size_t>(g.node_id(i, j))] = ((i + j) % 2 == 0) ? 1.0 : -1.0;
    });
    push([&](std::vector<double>& v, int i, int j) {
        v[2 * static_cast<size_t>(g.node_id(i, j)) + 1] = ((i + j) % 2 == 0) ? 1.0 : -1.0;
    });
    // Gram-Schmidt
    for (size_t a = 0; a < modes.size(); ++a) {
        for (size_t b = 0; b < a; ++b) {
            double d = 0;
            for (size_t k = 0; k < modes[a].size(); ++k) d += modes[a][k] * modes[b][k];
            for (size_t k = 0; k < modes[a].size(); ++k) modes[a][k] -= d * modes[b][k];
        }
        double n2 = 0;
        for (double x : modes[a]) n2 += x * x;
        double inv = 1.0 / std::sqrt(n2);
        for (double& x : modes[a]) x *= inv;
    }
    return modes;
}

std::vector<SegmentPiece> clip_segment_to_cells(const Grid& g, double ax, double ay, double bx,
                                                double by) {
    std::vector<SegmentPiece> pieces;
    double dx = bx - ax, dy = by - ay;
    double len = std::hypot(dx, dy);
    if (len <= 0) return pieces;

    // collect parameter breakpoints at grid lines
    std::vector<double> ts{0.0, 1.0};
    auto add_cuts = [&](double a0, double d, double origin) {
        if (std::abs(d) < 1e-15) return;
        // grid lines origin + k h
        double tmin = 0, tmax = 1;
        double k0 = std::floor((std::min(a0, a0 + d) - origin) / g.h) - 1;
        double k1 = std::ceil((std::max(a0, a0 + d) - origin) / g.h) + 1;
        for (double k = k0; k <= k1; ++k) {
            double t = (origin + k * g.h - a0) / d;
            if (t > tmin + 1e-14 && t < tmax - 1e-14) ts.push_back(t);
        }
    };
    add_cuts(ax, dx, g.origin_x);
    add_cuts(ay, dy, g.origin_y);
    std::sort(ts.begin(), ts.end());

    for (size_t k = 0; k + 1 < ts.size(); ++k) {
        double t0 = ts[k], t1 = ts[k + 1];
        if (t1 - t0 < 1e-14) continue;
        double tm = 0.5 * (t0 + t1);
        double px = ax + tm * dx, py = ay + tm * dy;
        int ci = static_cast<int>(std::floor((px - g.origin_x) / g.h));
        int cj = static_cast<int>(std::floor((py - g.origin_y) / g.h));
        // segments running along the boundary of the grid belong to the adjacent cell
        ci = std::clamp(ci, 0, g.nx - 1);
        cj = std::clamp(cj, 0, g.ny - 1);
        double qx = px - g.node_x(ci), qy = py - g.node_y(cj);
        if (qx < -1e-9 * g.h || qx > g.h * (1 + 1e-9) || qy < -1e-9 * g.h || qy > g.h * (1 + 1e-9))
            continue;  // outside the grid
        pieces.push_back({ci, cj, t0, t1});
    }
    return pieces;
}

namespace {

// bilinear shape values of the 4 cell corners at point (x, y) inside cell (ci, cj)
void shape_values(const Grid& g, int ci, int cj, double x, double y, double* w) {
    double sx = (x - g.node_x(ci)) / g.h;
    double sy = (y - g.node_y(cj)) / g.h;
    sx = std::clamp(sx, 0.0, 1.0);
    sy = std::clamp(sy, 0.0, 1.0);
    w[0] = (1 - sx) * (1 - sy);
    w[1] = sx * (1 - sy);
    w[2] = (1 - sx) * sy;
    w[3] = sx * sy;
}

void cell_nodes(const Grid& g, int ci, int cj, int* ids) {
    ids[0] = g.node_id(ci, cj);
    ids[1] = g.node_id(ci + 1, cj);
    ids[2] = g.node_id(ci, cj + 1);
    ids[3] = g.node_id(ci + 1, cj + 1);
}

}  // namespace

std::vector<double> assemble_load_vector(const Grid& g, const LoadSpec& loads) {
    loads.require_balanced();
    std::vector<double> f(static_cast<size_t>(2 * g.num_nodes()), 0.0);

    auto locate = [&](double x, double y, int* ci, int* cj) {
        double sx = (x - g.origin_x) / g.h, sy = (y - g.origin_y) / g.h;
        if (sx < -1e-9 || sy < -1e-9 || sx > g.nx + 1e-9 || sy > g.ny + 1e-9)
            throw Error(ErrorKind::ConfigError, "load point lies outside the grid");
        *ci = std::clamp(static_cast<int>(std::floor(sx)), 0, g.nx - 1);
        *cj = std::clamp(static_cast<int>(std::floor(sy)), 0, g.ny - 1);
    };

    for (const auto& p : loads.points) {
        int ci, cj, ids[4];
        locate(p.x, p.y, &ci, &cj);
        cell_nodes(g, ci, cj, ids);
        double w[4];
        shape_values(g, ci, cj, p.x, p.y, w);
        for (int k = 0; k < 4; ++k) {
            f[2 * static_cast<size_t>(ids[k])] += w[k] * p.fx;
            f[2 * static_cast<size_t>(ids[k]) + 1] += w[k] * p.fy;
        }
    }

    const double gauss[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
    for (const auto& s : loads.segments) {
        double len = std::hypot(s.bx - s.ax, s.by - s.ay);
        if (len <= 0) continue;
        auto pieces = clip_segment_to_cells(g, s.ax, s.ay, s.bx, s.by);
        for (const auto& pc : pieces) {
            int ids[4];
            cell_nodes(g, pc.ci, pc.cj, ids);
            double plen = (pc.t1 - pc.t0) * len;
            for (double gt : gauss) {
                double t = pc.t0 + gt * (pc.t1 - pc.t0);
                double x = s.ax + t * (s.bx - s.ax), y = s.ay + t * (s.by - s.ay);
                double w[4];
                shape_values(g, pc.ci, pc.cj, x, y, w);
                for (int k = 0; k < 4; ++k) {
                    f[2 * static_cast<size_t>(ids[k])] += 0.5 * plen * w[k] * s.qx;
                    f[2 * static_cast<size_t>(ids[k]) + 1] += 0.5 * plen * w[k] * s.qy;
                }
            }
        }
    }
    return f;
}

}  // namespace fmd
