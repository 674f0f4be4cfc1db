#include "fmd/tensors.hpp"

#include <algorithm>
#include <cmath>

namespace fmd {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

// (row, col) index of the k-th Mandel coordinate for d = 3.
constexpr int kIdx3[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};

void check_dim(int d) {
    if (d != 2 && d != 3) throw Error(ErrorKind::InvalidTensor, "dimension must be 2 or 3");
}

}  // namespace

double SymTensor::entry(int i, int j) const {
    if (dim == 2) {
        if (i == j) return m[static_cast<size_t>(i)];
        return m[2] / kSqrt2;
    }
    if (i == j) return m[static_cast<size_t>(i)];
    for (int k = 3; k < 6; ++k)
        if ((kIdx3[k][0] == i && kIdx3[k][1] == j) || (kIdx3[k][0] == j && kIdx3[k][1] == i))
            return m[static_cast<size_t>(k)] / kSqrt2;
    return 0.0;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
    for (int i = 0; i < n(); ++i) m[static_cast<size_t>(i)] += o.m[static_cast<size_t>(i)];
    return *this;
}
SymTensor& SymTensor::operator-=(const SymTensor& o) {
    for (int i = 0; i < n(); ++i) m[static_cast<size_t>(i)] -= o.m[static_cast<size_t>(i)];
    return *this;
}
SymTensor& SymTensor::operator*=(double t) {
    for (int i = 0; i < n(); ++i) m[static_cast<size_t>(i)] *= t;
    return *this;
}

SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
SymTensor operator*(double t, SymTensor a) { return a *= t; }

double dot(const SymTensor& a, const SymTensor& b) {
    double s = 0;
    for (int i = 0; i < a.n(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const SymTensor& a) { return std::sqrt(dot(a, a)); }

double trace(const SymTensor& a) {
    double s = 0;
    for (int i = 0; i < a.dim; ++i) s += a[i];
    return s;
}

SymTensor sym_zero(int d) {
    check_dim(d);
    return SymTensor(d);
}

SymTensor sym_identity(int d) {
    check_dim(d);
    SymTensor x(d);
    for (int i = 0; i < d; ++i) x[i] = 1.0;
    return x;
}

SymTensor mandel_embed(int d, const std::vector<double>& matrix) {
    check_dim(d);
    if (matrix.size() != static_cast<size_t>(d * d))
        throw Error(ErrorKind::InvalidTensor, "matrix size does not match dimension");
    double scale = 0;
    for (double v : matrix) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            double aij = matrix[static_cast<size_t>(i * d + j)];
            double aji = matrix[static_cast<size_t>(j * d + i)];
            if (std::abs(aij - aji) > 1e-12 * std::max(scale, 1.0))
                throw Error(ErrorKind::InvalidTensor, "matrix is not symmetric");
        }
    SymTensor x(d);
    if (d == 2) {
        x[0] = matrix[0];
        x[1] = matrix[3];
        x[2] = kSqrt2 * matrix[1];
    } else {
        for (int k = 0; k < 6; ++k) {
            int i = kIdx3[k][0], j = kIdx3[k][1];
            x[k] = (i == j ? 1.0 : kSqrt2) * matrix[static_cast<size_t>(i * 3 + j)];
        }
    }
    return x;
}

SymTensor sym2(double a11, double a22, double a12) {
    SymTensor x(2);
    x[0] = a11;
    x[1] = a22;
    x[2] = kSqrt2 * a12;
    return x;
}

SymTensor sym3(double a11, double a22, double a33, double a23, double a13, double a12) {
    SymTensor x(3);
    x[0] = a11;
    x[1] = a22;
    x[2] = a33;
    x[3] = kSqrt2 * a23;
    x[4] = kSqrt2 * a13;
    x[5] = kSqrt2 * a12;
    return x;
}

SymTensor outer(int d, const double* v) {
    check_dim(d);
    SymTensor x(d);
    if (d == 2) {
        x[0] = v[0] * v[0];
        x[1] = v[1] * v[1];
        x[2] = kSqrt2 * v[0] * v[1];
    } else {
        for (int k = 0; k < 6; ++k) {
            int i = kIdx3[k][0], j = kIdx3[k][1];
            x[k] = (i == j ? 1.0 : kSqrt2) * v[i] * v[j];
        }
    }
    return x;
}

namespace {

// Cyclic Jacobi on a small symmetric matrix (n <= 6), 30 sweeps.
void jacobi_eig(int n, double* a /* n*n row-major, destroyed */, double* w, double* vecs /* n*n, vecs[i*n+j] = j-th comp of i-th vector */) {
    double v[36];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v[i * n + j] = (i == j) ? 1.0 : 0.0;

    for (int sweep = 0; sweep < 30; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-300) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (apq == 0.0) continue;
                double app = a[p * n + p], aqq = a[q * n + q];
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
    }
    for (int i = 0; i < n; ++i) w[i] = a[i * n + i];
    // columns of v are eigenvectors; export row i as i-th eigenvector
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) vecs[i * n + k] = v[k * n + i];
}

void fix_sign(int n, double* vec) {
    for (int k = 0; k < n; ++k) {
        if (std::abs(vec[k]) > 1e-14) {
            if (vec[k] < 0)
                for (int j = 0; j < n; ++j) vec[j] = -vec[j];
            return;
        }
    }
}

}  // namespace

EigenDecomposition eig_sym(const SymTensor& x) {
    EigenDecomposition e;
    e.dim = x.dim;
    if (x.dim == 2) {
        double a = x[0], b = x[1], c = x[2] / kSqrt2;
        double mean = 0.5 * (a + b);
        double half = 0.5 * (a - b);
        double r = std::hypot(half, c);
        e.values[0] = mean + r;
        e.values[1] = mean - r;
        if (r < 1e-300) {
            e.vectors[0] = {1, 0, 0};
            e.vectors[1] = {0, 1, 0};
        } else {
            // eigenvector for mean + r
            double vx, vy;
            if (half >= 0) {
                vx = half + r;
                vy = c;
            } else {
                vx = c;
                vy = r - half;
            }
            double nv = std::hypot(vx, vy);
            if (nv < 1e-300) {
                vx = 1;
                vy = 0;
                nv = 1;
            }
            e.vectors[0] = {vx / nv, vy / nv, 0};
            e.vectors[1] = {-vy / nv, vx / nv, 0};
        }
        fix_sign(2, e.vectors[0].data());
        fix_sign(2, e.vectors[1].data());
    } else {
        double a[9] = {x.entry(0, 0), x.entry(0, 1), x.entry(0, 2),
                       x.entry(1, 0), x.entry(1, 1), x.entry(1, 2),
                       x.entry(2, 0), x.entry(2, 1), x.entry(2, 2)};
        double w[3], vecs[9];
        jacobi_eig(3, a, w, vecs);
        int order[3] = {0, 1, 2};
        std::sort(order, order + 3, [&](int i, int j) { return w[i] > w[j]; });
        for (int i = 0; i < 3; ++i) {
            e.values[static_cast<size_t>(i)] = w[order[i]];
            for (int k = 0; k < 3; ++k)
                e.vectors[static_cast<size_t>(i)][static_cast<size_t>(k)] = vecs[order[i] * 3 + k];
            fix_sign(3, e.vectors[static_cast<size_t>(i)].data());
        }
    }
    return e;
}

TraceDev trace_dev_split(const SymTensor& x) {
    TraceDev td{trace(x), x};
    double mean = td.tr / x.dim;
    for (int i = 0; i < x.dim; ++i) td.dev[i] -= mean;
    return td;
}

PsdSplit psd_split(const SymTensor& x) {
    EigenDecomposition e = eig_sym(x);
    PsdSplit s{sym_zero(x.dim), sym_zero(x.dim)};
    for (int i = 0; i < x.dim; ++i) {
        SymTensor vv = outer(x.dim, e.vectors[static_cast<size_t>(i)].data());
        double l = e.values[static_cast<size_t>(i)];
        if (l > 0)
            s.pos += l * vv;
        else
            s.neg += l * vv;
    }
    return s;
}

HookeTensor& HookeTensor::operator+=(const HookeTensor& o) {
    int nn = n() * n();
    for (int i = 0; i < nn; ++i) a[static_cast<size_t>(i)] += o.a[static_cast<size_t>(i)];
    return *this;
}
HookeTensor& HookeTensor::operator*=(double t) {
    int nn = n() * n();
    for (int i = 0; i < nn; ++i) a[static_cast<size_t>(i)] *= t;
    return *this;
}
HookeTensor operator+(HookeTensor a, const HookeTensor& b) { return a += b; }
HookeTensor operator*(double t, HookeTensor a) { return a *= t; }

HookeTensor hooke_zero(int d) {
    check_dim(d);
    return HookeTensor(d);
}

HookeTensor hooke_identity(int d) {
    check_dim(d);
    HookeTensor H(d);
    for (int i = 0; i < H.n(); ++i) H.at(i, i) = 1.0;
    return H;
}

HookeTensor dyadic(const SymTensor& A) {
    HookeTensor H(A.dim);
    for (int i = 0; i < H.n(); ++i)
        for (int j = 0; j < H.n(); ++j) H.at(i, j) = A[i] * A[j];
    return H;
}

HookeTensor iso_hooke(double K, double G, int d) {
    check_dim(d);
    if (K < 0 || G < 0) throw Error(ErrorKind::InvalidTensor, "negative moduli");
    SymTensor I = sym_identity(d);
    HookeTensor H(d);
    for (int i = 0; i < H.n(); ++i)
        for (int j = 0; j < H.n(); ++j) {
            double vol = I[i] * I[j] / d;
            double dev = (i == j ? 1.0 : 0.0) - vol;
            H.at(i, j) = d * K * vol + 2.0 * G * dev;
        }
    return H;
}

SymTensor hooke_apply(const HookeTensor& H, const SymTensor& x) {
    if (H.dim != x.dim) throw Error(ErrorKind::InvalidTensor, "dimension mismatch");
    SymTensor y(x.dim);
    for (int i = 0; i < H.n(); ++i) {
        double s = 0;
        for (int j = 0; j < H.n(); ++j) s += H.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double hooke_trace(const HookeTensor& H) {
    double s = 0;
    for (int i = 0; i < H.n(); ++i) s += H.at(i, i);
    return s;
}

double hooke_norm(const HookeTensor& H) {
    double s = 0;
    for (int i = 0; i < H.n(); ++i)
        for (int j = 0; j < H.n(); ++j) s += H.at(i, j) * H.at(i, j);
    return std::sqrt(s);
}

HookeEigen hooke_eig(const HookeTensor& H) {
    HookeEigen e;
    e.n = H.n();
    double a[36];
    int n = e.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i * n + j] = 0.5 * (H.at(i, j) + H.at(j, i));
    double w[6], vecs[36];
    jacobi_eig(n, a, w, vecs);
    int order[6];
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order, order + n, [&](int i, int j) { return w[i] > w[j]; });
    for (int i = 0; i < n; ++i) {
        e.values[static_cast<size_t>(i)] = w[order[i]];
        for (int k = 0; k < n; ++k)
            e.vectors[static_cast<size_t>(i)][static_cast<size_t>(k)] = vecs[order[i] * n + k];
        fix_sign(n, e.vectors[static_cast<size_t>(i)].data());
    }
    return e;
}

double hooke_opnorm(const HookeTensor& H) {
    HookeEigen e = hooke_eig(H);
    double m = 0;
    for (int i = 0; i < e.n; ++i) m = std::max(m, std::abs(e.values[static_cast<size_t>(i)]));
    return m;
}

YoungPoisson young_poisson(double K, double G) {
    if (K + G <= 0) throw Error(ErrorKind::InvalidTensor, "K+G must be positive");
    return {4.0 * K * G / (K + G), (K - G) / (K + G)};
}

BulkShear iso_moduli(const HookeTensor& H, double tol) {
    int d = H.dim;
    SymTensor I = sym_identity(d);
    // K = <H I, I> / d^2, 2G = (tr H - dK) / (N-1)
    double K = dot(hooke_apply(H, I), I) / (d * d);
    double G = (hooke_trace(H) - d * K) / (2.0 * (H.n() - 1));
    HookeTensor R = iso_hooke(std::max(K, 0.0), std::max(G, 0.0), d);
    R *= -1.0;
    R += H;
    if (hooke_norm(R) > tol * std::max(hooke_norm(H), 1e-30) || K < -tol || G < -tol)
        throw Error(ErrorKind::InvalidTensor, "Hooke tensor is not isotropic");
    return {std::max(K, 0.0), std::max(G, 0.0)};
}

bool is_isotropic(const HookeTensor& H, double tol) {
    try {
        iso_moduli(H, tol);
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace fmd
