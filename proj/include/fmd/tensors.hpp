////////////////////////////////////////////////////////////////////////////////
// tensors.hpp
//
// Small fixed-dimension algebra for symmetric 2nd-order tensors (strains,
// stresses) and Hooke tensors (symmetric PSD operators acting on them) in
// dimensions d = 2 or 3.
//
// Symmetric tensors are stored in orthonormal Mandel coordinates of length
// N(d) = d(d+1)/2, off-diagonal entries scaled by sqrt(2), so that the
// Euclidean dot product of coordinate vectors equals the Frobenius pairing
// <A,B> = sum_ij A_ij B_ij of the tensors.  A Hooke tensor is then just a
// symmetric N(d) x N(d) matrix and its operator action is a matrix-vector
// product in these coordinates.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmd {

// Dimension of the space of symmetric d x d tensors.
constexpr int sym_dim(int d) { return d * (d + 1) / 2; }

enum class ErrorKind {
    InvalidTensor,
    ConeViolation,
    DegenerateStress,
    UnbalancedLoad,
    NonConvergence,
    DegenerateProblem,
    UncertifiedInput,
    MassMismatch,
    DegenerateTransport,
    CertificateFailure,
    ConfigError,
};

struct Error : std::runtime_error {
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    ErrorKind kind;
};

// Symmetric 2nd-order tensor in dimension dim (2 or 3), Mandel coordinates.
// d=2 order: (11, 22, sqrt2*12); d=3 order: (11, 22, 33, sqrt2*23, sqrt2*13, sqrt2*12).
struct SymTensor {
    int dim = 2;
    std::array<double, 6> m{};  // first sym_dim(dim) entries are used

    SymTensor() = default;
    explicit SymTensor(int d) : dim(d) {}
    SymTensor(int d, std::array<double, 6> coords) : dim(d), m(coords) {}

    int n() const { return sym_dim(dim); }

    double& operator[](int i) { return m[static_cast<size_t>(i)]; }
    double operator[](int i) const { return m[static_cast<size_t>(i)]; }

    // entry (i,j) of the underlying d x d matrix
    double entry(int i, int j) const;

    SymTensor& operator+=(const SymTensor& o);
    SymTensor& operator-=(const SymTensor& o);
    SymTensor& operator*=(double t);
};

SymTensor operator+(SymTensor a, const SymTensor& b);
SymTensor operator-(SymTensor a, const SymTensor& b);
SymTensor operator*(double t, SymTensor a);

double dot(const SymTensor& a, const SymTensor& b);
double norm(const SymTensor& a);
double trace(const SymTensor& a);

SymTensor sym_zero(int d);
SymTensor sym_identity(int d);

// Builds the Mandel representation of a symmetric matrix given as row-major
// d x d entries.  Throws InvalidTensor if the matrix is not symmetric
// (relative tolerance 1e-12).
SymTensor mandel_embed(int d, const std::vector<double>& matrix);

// Convenience constructors (d = 2).
SymTensor sym2(double a11, double a22, double a12);
// d = 3
SymTensor sym3(double a11, double a22, double a33, double a23, double a13, double a12);

// Rank-one symmetric tensor v (x) v.
SymTensor outer(int d, const double* v);

// Eigen-decomposition of a symmetric tensor: eigenvalues descending,
// orthonormal eigenvectors (columns), deterministic sign convention (first
// non-zero component of each eigenvector is positive).
struct EigenDecomposition {
    int dim = 2;
    std::array<double, 3> values{};            // descending
    std::array<std::array<double, 3>, 3> vectors{};  // vectors[i] is i-th eigenvector
};

// Exact closed form for d=2, cyclic Jacobi (30-sweep cap) for d=3.
EigenDecomposition eig_sym(const SymTensor& x);

// Splits x into (trace, deviator): x = (tr/d) I + dev, <I,dev> = 0.
struct TraceDev {
    double tr;
    SymTensor dev;
};
TraceDev trace_dev_split(const SymTensor& x);

// x+ PSD, x- NSD, x = x+ + x-, <x+,x-> = 0 (eigenvalue clipping).
struct PsdSplit {
    SymTensor pos;
    SymTensor neg;
};
PsdSplit psd_split(const SymTensor& x);

// Hooke tensor: symmetric operator on SymTensor, stored as a symmetric
// N(d) x N(d) matrix in the Mandel basis (row-major, n*n entries used).
struct HookeTensor {
    int dim = 2;
    std::array<double, 36> a{};

    HookeTensor() = default;
    explicit HookeTensor(int d) : dim(d) {}

    int n() const { return sym_dim(dim); }
    double& at(int i, int j) { return a[static_cast<size_t>(i * n() + j)]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i * n() + j)]; }

    HookeTensor& operator+=(const HookeTensor& o);
    HookeTensor& operator*=(double t);
};

HookeTensor operator+(HookeTensor a, const HookeTensor& b);
HookeTensor operator*(double t, HookeTensor a);

HookeTensor hooke_zero(int d);
HookeTensor hooke_identity(int d);  // the symmetric 4th-order identity

// A (x) A as an operator: (A (x) A) x = <A,x> A.
HookeTensor dyadic(const SymTensor& A);

// Isotropic Hooke tensor dK (I(x)I / d) + 2G (Id - I(x)I / d).
// Spectrum: {dK} once, {2G} with multiplicity N(d)-1; trace dK + (N(d)-1) 2G.
HookeTensor iso_hooke(double K, double G, int d);

SymTensor hooke_apply(const HookeTensor& H, const SymTensor& x);

double hooke_trace(const HookeTensor& H);
double hooke_norm(const HookeTensor& H);

// Eigenvalues (descending) and eigenvectors of the Mandel matrix; used for
// PSD checks and pseudo-inverse energies.  Cyclic Jacobi, 30 sweeps.
struct HookeEigen {
    int n = 3;
    std::array<double, 6> values{};
    std::array<std::array<double, 6>, 6> vectors{};  // vectors[i] = i-th eigenvector
};
HookeEigen hooke_eig(const HookeTensor& H);

// Largest |eigenvalue| (operator norm) of the Mandel matrix.
double hooke_opnorm(const HookeTensor& H);

// Plane-elasticity conversion between (K, G) and (E, nu):
//   E = 4KG/(K+G),  nu = (K-G)/(K+G).   Requires K+G > 0.
struct YoungPoisson {
    double E;
    double nu;
};
YoungPoisson young_poisson(double K, double G);

// Recover (K, G) from an isotropic Hooke tensor; throws InvalidTensor if H is
// not isotropic within tol * ||H||.
struct BulkShear {
    double K;
    double G;
};
BulkShear iso_moduli(const HookeTensor& H, double tol = 1e-9);
bool is_isotropic(const HookeTensor& H, double tol = 1e-9);

}  // namespace fmd
