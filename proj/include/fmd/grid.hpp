////////////////////////////////////////////////////////////////////////////////
// grid.hpp
//
// Regular Q1 grid on a rectangle (d = 2): bilinear nodal displacements with a
// single cell-center strain evaluation per cell.  The strain operator B maps
// nodal displacements (2 dofs per node) to one Mandel strain per cell; it is
// exact on affine displacement fields.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <array>
#include <vector>

#include "fmd/tensors.hpp"

namespace fmd {

struct Grid {
    double origin_x = 0, origin_y = 0;
    double h = 1.0;  // square cells
    int nx = 1, ny = 1;

    int nodes_x() const { return nx + 1; }
    int nodes_y() const { return ny + 1; }
    int num_nodes() const { return nodes_x() * nodes_y(); }
    int num_cells() const { return nx * ny; }

    int node_id(int i, int j) const { return j * nodes_x() + i; }
    int cell_id(int i, int j) const { return j * nx + i; }

    double node_x(int i) const { return origin_x + h * i; }
    double node_y(int j) const { return origin_y + h * j; }
    double cell_cx(int i) const { return origin_x + h * (i + 0.5); }
    double cell_cy(int j) const { return origin_y + h * (j + 0.5); }

    double width() const { return h * nx; }
    double height() const { return h * ny; }
};

Grid make_grid(double origin_x, double origin_y, double width, double height, int nx, int ny);

struct PointLoad {
    double x, y;
    double fx, fy;
};

// Constant force density (per unit length) along the segment [a, b].
struct SegmentLoad {
    double ax, ay, bx, by;
    double qx, qy;
};

struct LoadSpec {
    std::vector<PointLoad> points;
    std::vector<SegmentLoad> segments;

    // resultant force and moment about the origin (continuous quantities)
    std::array<double, 2> resultant() const;
    double moment() const;
    double magnitude() const;  // sum of |force| contributions, scale for tolerances

    // throws UnbalancedLoad when resultant or moment exceed 1e-9 relative
    void require_balanced() const;
};

// Cell-center strain operator.  u is packed (ux0, uy0, ux1, uy1, ...) over
// nodes; strains are packed 3 Mandel components per cell.
class StrainOperator {
  public:
    explicit StrainOperator(const Grid& g) : grid_(g) {}

    int dofs() const { return 2 * grid_.num_nodes(); }
    int strain_size() const { return 3 * grid_.num_cells(); }

    void apply(const double* u, double* eps) const;       // eps = B u
    void apply_transpose(const double* y, double* f) const;  // f = B^T y

    // ||B|| estimated by power iteration (50 iterations).
    double op_norm_estimate(int iterations = 50) const;

    // Orthonormal basis of ker(B): 3 rigid modes and 2 checkerboard
    // (hourglass) modes of the one-point quadrature.
    std::vector<std::vector<double>> kernel_basis() const;

    const Grid& grid() const { return grid_; }

  private:
    Grid grid_;
};

// Nodal load vector: point loads by bilinear interpolation, segment loads by
// 2-point Gauss per intersected cell.  Validates balance first.
std::vector<double> assemble_load_vector(const Grid& g, const LoadSpec& loads);

// Clip the segment [a,b] to grid cells; returns (cell index, t0, t1) sub-
// intervals in the segment parameter.  Shared by load assembly and the
// optimality checker's quadratures.
struct SegmentPiece {
    int ci, cj;
    double t0, t1;
};
std::vector<SegmentPiece> clip_segment_to_cells(const Grid& g, double ax, double ay, double bx,
                                                double by);

}  // namespace fmd
