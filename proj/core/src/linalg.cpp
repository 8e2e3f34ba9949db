#include "skinband/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "skinband/error.hpp"

namespace skinband {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const DenseComplexMatrix& a, const char* op) {
    if (a.order() == 0) {
        throw SpectralError(ErrorKind::InvalidInput, std::string(op) + ": empty matrix");
    }
    if (!a.all_finite()) {
        throw SpectralError(ErrorKind::InvalidInput, std::string(op) + ": non-finite matrix entry");
    }
}

// Plane rotation G = [[c, s], [-conj(s), c]] with G * (f, g)^T = (r, 0)^T.
struct Givens {
    double c = 1.0;
    cplx s{0.0, 0.0};
    cplx r{0.0, 0.0};
};

Givens make_givens(cplx f, cplx g) {
    Givens rot;
    if (g == cplx{}) {
        rot.r = f;
        return rot;
    }
    if (f == cplx{}) {
        const double gn = std::abs(g);
        rot.c = 0.0;
        rot.s = std::conj(g) / gn;
        rot.r = gn;
        return rot;
    }
    const double fn = std::abs(f);
    const double gn = std::abs(g);
    const double norm = std::hypot(fn, gn);
    const cplx phase = f / fn;
    rot.c = fn / norm;
    rot.s = phase * std::conj(g) / norm;
    rot.r = phase * norm;
    return rot;
}

// rows p, q <- G * rows p, q over columns [c0, c1]
void rotate_rows(DenseComplexMatrix& h, const Givens& g, std::size_t p, std::size_t q, std::size_t c0,
                 std::size_t c1) {
    for (std::size_t j = c0; j <= c1; ++j) {
        const cplx x = h(p, j);
        const cplx y = h(q, j);
        h(p, j) = g.c * x + g.s * y;
        h(q, j) = -std::conj(g.s) * x + g.c * y;
    }
}

// columns p, q <- columns p, q * G^H over rows [r0, r1]
void rotate_cols(DenseComplexMatrix& h, const Givens& g, std::size_t p, std::size_t q, std::size_t r0,
                 std::size_t r1) {
    for (std::size_t i = r0; i <= r1; ++i) {
        const cplx x = h(i, p);
        const cplx y = h(i, q);
        h(i, p) = g.c * x + std::conj(g.s) * y;
        h(i, q) = -g.s * x + g.c * y;
    }
}

// Householder vector u with (I - 2 u u^H / u^H u) x = -e^{i arg x0} ||x|| e_1.
// Returns false when x is already zero.
bool householder(std::span<const cplx> x, std::vector<cplx>& u, double& two_over_uu) {
    double norm = 0.0;
    for (const cplx& v : x) norm = std::hypot(norm, std::abs(v));
    u.assign(x.begin(), x.end());
    if (norm == 0.0) return false;
    const cplx phase = (x[0] == cplx{}) ? cplx{1.0, 0.0} : x[0] / std::abs(x[0]);
    u[0] += phase * norm;
    double uu = 0.0;
    for (const cplx& v : u) uu += std::norm(v);
    two_over_uu = 2.0 / uu;
    return true;
}

void reduce_to_hessenberg(DenseComplexMatrix& h) {
    const std::size_t n = h.order();
    std::vector<cplx> x;
    std::vector<cplx> u;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        x.resize(n - k - 1);
        bool below_zero = true;
        for (std::size_t i = k + 1; i < n; ++i) {
            x[i - k - 1] = h(i, k);
            if (i > k + 1 && h(i, k) != cplx{}) below_zero = false;
        }
        if (below_zero) continue;
        double tau = 0.0;
        if (!householder(x, u, tau)) continue;
        // left: rows k+1..n-1
        for (std::size_t j = k; j < n; ++j) {
            cplx dot{};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(u[i - k - 1]) * h(i, j);
            dot *= tau;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= u[i - k - 1] * dot;
        }
        // right: columns k+1..n-1
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot{};
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * u[j - k - 1];
            dot *= tau;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(u[j - k - 1]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = cplx{};
    }
}

cplx wilkinson_shift(const DenseComplexMatrix& h, std::size_t iu) {
    const cplx a = h(iu - 1, iu - 1);
    const cplx b = h(iu - 1, iu);
    const cplx c = h(iu, iu - 1);
    const cplx d = h(iu, iu);
    const cplx p = 0.5 * (a - d);
    const cplx bc = b * c;
    const cplx disc = std::sqrt(p * p + bc);
    const cplx big = (std::abs(p + disc) >= std::abs(p - disc)) ? p + disc : p - disc;
    if (big == cplx{}) return d;
    return d - bc / big;
}

// Eigenvalues of an upper Hessenberg matrix; h is overwritten.
std::vector<cplx> hessenberg_qr(DenseComplexMatrix& h) {
    const std::size_t n = h.order();
    const double hnorm = h.frobenius_norm();
    const std::size_t cap = 100 * n;

    auto negligible = [&](std::size_t i) {
        const double sub = std::abs(h(i, i - 1));
        double scale = std::abs(h(i, i)) + std::abs(h(i - 1, i - 1));
        if (scale == 0.0) scale = hnorm;
        return sub <= kEps * scale;
    };

    std::size_t iu = n - 1;
    std::size_t total = 0;
    int iter = 0;
    while (iu > 0) {
        std::size_t il = iu;
        while (il > 0 && !negligible(il)) --il;
        if (il > 0) h(il, il - 1) = cplx{};
        if (il == iu) {
            --iu;
            iter = 0;
            continue;
        }
        if (++total > cap) {
            std::ostringstream msg;
            msg << "shifted QR did not converge for matrix of order " << n << " after " << cap
                << " iterations (residual subdiagonal " << std::abs(h(iu, iu - 1)) << ")";
            throw SpectralError(ErrorKind::NonConvergence, msg.str());
        }

        cplx shift;
        if (iter == 10 || iter == 30) {
            // exceptional shift to break cycles
            shift = std::abs(h(iu, iu - 1).real()) + (iu >= 2 ? std::abs(h(iu - 1, iu - 2).real()) : 0.0);
            shift += h(iu, iu);
        } else {
            shift = wilkinson_shift(h, iu);
        }
        ++iter;

        Givens g = make_givens(h(il, il) - shift, h(il + 1, il));
        rotate_rows(h, g, il, il + 1, il, iu);
        rotate_cols(h, g, il, il + 1, il, std::min(il + 2, iu));
        for (std::size_t i = il + 1; i < iu; ++i) {
            g = make_givens(h(i, i - 1), h(i + 1, i - 1));
            h(i, i - 1) = g.r;
            h(i + 1, i - 1) = cplx{};
            rotate_rows(h, g, i, i + 1, i, iu);
            rotate_cols(h, g, i, i + 1, il, std::min(i + 2, iu));
        }
    }

    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = h(i, i);
    return out;
}

struct LuFactor {
    DenseComplexMatrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
};

// Partial pivoting; exact-zero pivots are replaced by `zero_pivot` when nonzero.
LuFactor lu_factor(DenseComplexMatrix a, double zero_pivot) {
    const std::size_t n = a.order();
    LuFactor f;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        if (a(k, k) == cplx{}) {
            if (zero_pivot == 0.0) continue;
            a(k, k) = zero_pivot;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx l = a(i, k) / a(k, k);
            a(i, k) = l;
            if (l == cplx{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
        }
    }
    f.lu = std::move(a);
    return f;
}

std::vector<cplx> lu_solve(const LuFactor& f, std::span<const cplx> b) {
    const std::size_t n = f.lu.order();
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
        x[ii] /= f.lu(ii, ii);
    }
    return x;
}

double vector_norm(std::span<const cplx> x) {
    double s = 0.0;
    for (const cplx& v : x) s = std::hypot(s, std::abs(v));
    return s;
}

// Number of singular values of the nonnegative bidiagonal (d, e) below x,
// from a Sturm count on the zero-diagonal Golub-Kahan tridiagonal.
std::size_t count_below(std::span<const double> d, std::span<const double> e, double x) {
    const std::size_t n = d.size();
    const double tiny = std::numeric_limits<double>::min();
    std::size_t neg = 0;
    double q = -x;
    if (q < 0) ++neg;
    for (std::size_t i = 1; i < 2 * n; ++i) {
        const double t = (i % 2 == 1) ? d[i / 2] : e[i / 2 - 1];
        if (q == 0.0) q = -tiny;
        q = -x - t * t / q;
        if (q < 0) ++neg;
    }
    return neg - n;
}

}  // namespace

DenseComplexMatrix::DenseComplexMatrix(std::size_t order) : n_(order), a_(order * order) {}

DenseComplexMatrix DenseComplexMatrix::identity(std::size_t order) {
    DenseComplexMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) m(i, i) = 1.0;
    return m;
}

DenseComplexMatrix DenseComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    DenseComplexMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != rows.size()) {
            throw SpectralError(ErrorKind::InvalidInput, "from_rows: matrix must be square");
        }
        std::size_t j = 0;
        for (const cplx& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

double DenseComplexMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

bool DenseComplexMatrix::all_finite() const noexcept {
    return std::all_of(a_.begin(), a_.end(),
                       [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

DenseComplexMatrix DenseComplexMatrix::shifted(cplx lambda) const {
    DenseComplexMatrix m = *this;
    for (std::size_t i = 0; i < n_; ++i) m(i, i) -= lambda;
    return m;
}

std::vector<cplx> DenseComplexMatrix::apply(std::span<const cplx> x) const {
    std::vector<cplx> y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        cplx s{};
        for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

DenseComplexMatrix operator*(const DenseComplexMatrix& lhs, const DenseComplexMatrix& rhs) {
    const std::size_t n = lhs.order();
    DenseComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx l = lhs(i, k);
            if (l == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += l * rhs(k, j);
        }
    }
    return out;
}

DenseComplexMatrix operator-(const DenseComplexMatrix& lhs, const DenseComplexMatrix& rhs) {
    DenseComplexMatrix out = lhs;
    for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= rhs.a_[i];
    return out;
}

std::vector<cplx> inverse_iteration(const DenseComplexMatrix& a, cplx lambda) {
    require_finite(a, "inverse_iteration");
    const std::size_t n = a.order();
    const double anorm = a.frobenius_norm();
    const double guard = kEps * (anorm > 0.0 ? anorm : 1.0);
    const LuFactor f = lu_factor(a.shifted(lambda), guard);

    // Fixed, non-symmetric start vector keeps results reproducible.
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = cplx{1.0 + 0.37 * std::sin(1.3 * static_cast<double>(i) + 0.2),
                    0.21 * std::cos(0.7 * static_cast<double>(i))};
    }
    for (int step = 0; step < 3; ++step) {
        x = lu_solve(f, x);
        const double nrm = vector_norm(x);
        if (!std::isfinite(nrm) || nrm == 0.0) {
            throw SpectralError(ErrorKind::NonConvergence,
                                "inverse iteration broke down for matrix of order " + std::to_string(n));
        }
        for (cplx& v : x) v /= nrm;
    }
    return x;
}

EigenResult eig_dense(const DenseComplexMatrix& a, bool want_vectors) {
    require_finite(a, "eig_dense");
    const std::size_t n = a.order();
    EigenResult result;

    DenseComplexMatrix h = a;
    reduce_to_hessenberg(h);
    result.eigenvalues = hessenberg_qr(h);
    result.backward_error = static_cast<double>(n) * kEps;
    if (!want_vectors) return result;

    const double anorm = a.frobenius_norm();
    const double scale = anorm > 0.0 ? anorm : 1.0;
    const double tol = 1e-10 * static_cast<double>(n);
    DenseComplexMatrix vecs(n);
    double worst = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        const cplx lambda = result.eigenvalues[col];
        std::vector<cplx> v = inverse_iteration(a, lambda);
        std::vector<cplx> av = a.apply(v);
        for (std::size_t i = 0; i < n; ++i) av[i] -= lambda * v[i];
        const double rel = vector_norm(av) / scale;
        if (rel > tol) {
            std::ostringstream msg;
            msg << "eigenvector residual " << rel << " exceeds " << tol << " for matrix of order " << n;
            throw SpectralError(ErrorKind::NonConvergence, msg.str());
        }
        worst = std::max(worst, rel);
        for (std::size_t i = 0; i < n; ++i) vecs(i, col) = v[i];
    }
    result.eigenvectors = std::move(vecs);
    result.backward_error = worst;
    return result;
}

std::vector<cplx> eigenvalues(const DenseComplexMatrix& a) { return eig_dense(a, false).eigenvalues; }

double smallest_singular_value(const DenseComplexMatrix& a) {
    require_finite(a, "smallest_singular_value");
    const std::size_t n = a.order();
    const double anorm = a.frobenius_norm();
    if (anorm == 0.0) return 0.0;

    // Householder bidiagonalization: B = U^H A V with B upper bidiagonal.
    DenseComplexMatrix b = a;
    std::vector<cplx> x;
    std::vector<cplx> u;
    for (std::size_t k = 0; k < n; ++k) {
        x.resize(n - k);
        for (std::size_t i = k; i < n; ++i) x[i - k] = b(i, k);
        double tau = 0.0;
        if (householder(x, u, tau)) {
            for (std::size_t j = k; j < n; ++j) {
                cplx dot{};
                for (std::size_t i = k; i < n; ++i) dot += std::conj(u[i - k]) * b(i, j);
                dot *= tau;
                for (std::size_t i = k; i < n; ++i) b(i, j) -= u[i - k] * dot;
            }
        }
        if (k + 2 < n) {
            // zero row k beyond the superdiagonal; the reflector built from
            // conj(row) annihilates the row when applied from the right
            x.resize(n - k - 1);
            for (std::size_t j = k + 1; j < n; ++j) x[j - k - 1] = std::conj(b(k, j));
            if (householder(x, u, tau)) {
                for (std::size_t i = k; i < n; ++i) {
                    cplx dot{};
                    for (std::size_t j = k + 1; j < n; ++j) dot += b(i, j) * u[j - k - 1];
                    dot *= tau;
                    for (std::size_t j = k + 1; j < n; ++j) b(i, j) -= dot * std::conj(u[j - k - 1]);
                }
            }
        }
    }

    // Diagonal unitary scalings make a bidiagonal nonnegative without
    // changing its singular values, so only the moduli matter.
    std::vector<double> d(n);
    std::vector<double> e(n > 0 ? n - 1 : 0);
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = std::abs(b(i, i));
        hi = std::hypot(hi, d[i]);
        if (i + 1 < n) {
            e[i] = std::abs(b(i, i + 1));
            hi = std::hypot(hi, e[i]);
        }
    }
    if (!std::isfinite(hi)) {
        throw SpectralError(ErrorKind::NonConvergence,
                            "bidiagonalization produced non-finite entries for order " + std::to_string(n));
    }

    double lo = 0.0;
    hi *= 1.0 + 4.0 * kEps;
    const double floor = 1e-17 * anorm;
    for (int it = 0; it < 400; ++it) {
        if (hi - lo <= std::max(floor, 1e-13 * hi)) break;
        const double mid = 0.5 * (lo + hi);
        if (count_below(d, e, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

cplx determinant(const DenseComplexMatrix& a) {
    require_finite(a, "determinant");
    const LuFactor f = lu_factor(a, 0.0);
    cplx det = static_cast<double>(f.sign);
    for (std::size_t i = 0; i < a.order(); ++i) det *= f.lu(i, i);
    return det;
}

std::pair<cplx, cplx> solve_quadratic(cplx c2, cplx c1, cplx c0) {
    if (c2 == cplx{}) {
        throw SpectralError(ErrorKind::InvalidInput, "solve_quadratic: leading coefficient is zero (linear equation)");
    }
    const cplx disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    const double sign = (std::real(std::conj(c1) * disc) >= 0.0) ? 1.0 : -1.0;
    const cplx q = -0.5 * (c1 + sign * disc);
    if (q == cplx{}) return {cplx{}, cplx{}};
    return {q / c2, c0 / q};
}

}  // namespace skinband
