#include "opframe/kern.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace opframe::kern {

namespace {

// Shared loop body. The i/l/j order walks both operands row-major; the
// accumulation order over l for a fixed (i,j) is identical to the naive
// i/j/l order, which keeps matmul and matmul_ref bit-identical.
inline void matmul_rows(const cxd* a, const cxd* b, cxd* c, int k, int m,
                        int row_begin, int row_end) {
    for (int i = row_begin; i < row_end; ++i) {
        cxd* crow = c + static_cast<std::size_t>(i) * m;
        std::fill(crow, crow + m, cxd{0.0, 0.0});
        for (int l = 0; l < k; ++l) {
            const cxd ail = a[static_cast<std::size_t>(i) * k + l];
            if (ail == cxd{0.0, 0.0}) continue;
            const cxd* brow = b + static_cast<std::size_t>(l) * m;
            for (int j = 0; j < m; ++j) crow[j] += ail * brow[j];
        }
    }
}

}  // namespace

void matmul_ref(const cxd* a, const cxd* b, cxd* c, int n, int k, int m) {
    matmul_rows(a, b, c, k, m, 0, n);
}

void matmul(const cxd* a, const cxd* b, cxd* c, int n, int k, int m) {
    const std::size_t work =
        static_cast<std::size_t>(n) * static_cast<std::size_t>(k) * m;
    if (work < 32768) {
        matmul_rows(a, b, c, k, m, 0, n);
        return;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) matmul_rows(a, b, c, k, m, i, i + 1);
}

std::vector<cxd> matmul(const std::vector<cxd>& a, const std::vector<cxd>& b,
                        int n, int k, int m) {
    std::vector<cxd> c(static_cast<std::size_t>(n) * m);
    matmul(a.data(), b.data(), c.data(), n, k, m);
    return c;
}

std::vector<cxd> dagger(const std::vector<cxd>& a, int n, int m) {
    std::vector<cxd> out(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            out[static_cast<std::size_t>(j) * n + i] =
                std::conj(a[static_cast<std::size_t>(i) * m + j]);
    return out;
}

double frob_norm(const cxd* a, std::size_t len) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += std::norm(a[i]);
    return std::sqrt(s);
}

double frob_norm(const std::vector<cxd>& a) { return frob_norm(a.data(), a.size()); }

HermEig herm_eig(const std::vector<cxd>& a, int n) {
    if (static_cast<std::size_t>(n) * n != a.size())
        throw std::invalid_argument("herm_eig: size mismatch");

    std::vector<cxd> w = a;
    std::vector<cxd> v(static_cast<std::size_t>(n) * n, cxd{0.0, 0.0});
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

    auto at = [n](std::vector<cxd>& mat, int r, int c) -> cxd& {
        return mat[static_cast<std::size_t>(r) * n + c];
    };

    const double scale = frob_norm(w);
    const double stop = 1e-15 * scale;

    if (scale > 0.0) {
        for (int sweep = 0; sweep < 60; ++sweep) {
            double off = 0.0;
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const cxd apq = at(w, p, q);
                    const double mag = std::abs(apq);
                    off = std::max(off, mag);
                    if (mag <= stop) continue;

                    // Unitary 2x2 rotation on the (p,q) plane chosen to zero
                    // the off-diagonal entry:  U = [[c, -s e^{i phi}],
                    //                               [s e^{-i phi}, c]].
                    const cxd phase = apq / mag;
                    const double tau =
                        (at(w, p, p).real() - at(w, q, q).real()) / (2.0 * mag);
                    const double t =
                        (tau >= 0.0 ? 1.0 : -1.0) /
                        (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double cr = 1.0 / std::sqrt(1.0 + t * t);
                    const double sr = t * cr;
                    const cxd spe = sr * phase;        // s e^{i phi}
                    const cxd spc = sr * std::conj(phase);  // s e^{-i phi}

                    // Rows p,q: w <- U^H w.
                    for (int j = 0; j < n; ++j) {
                        const cxd wp = at(w, p, j), wq = at(w, q, j);
                        at(w, p, j) = cr * wp + spe * wq;
                        at(w, q, j) = -spc * wp + cr * wq;
                    }
                    // Columns p,q: w <- w U.
                    for (int i = 0; i < n; ++i) {
                        const cxd wp = at(w, i, p), wq = at(w, i, q);
                        at(w, i, p) = cr * wp + spc * wq;
                        at(w, i, q) = -spe * wp + cr * wq;
                    }
                    // Accumulate eigenvectors: v <- v U.
                    for (int i = 0; i < n; ++i) {
                        const cxd vp = at(v, i, p), vq = at(v, i, q);
                        at(v, i, p) = cr * vp + spc * vq;
                        at(v, i, q) = -spe * vp + cr * vq;
                    }
                    at(w, p, q) = 0.0;
                    at(w, q, p) = 0.0;
                }
            }
            if (off <= stop) break;
        }
    }

    HermEig out;
    out.values.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        out.values[i] = at(w, i, i).real();
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return out.values[x] < out.values[y];
    });

    HermEig sorted;
    sorted.values.resize(n);
    sorted.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        sorted.values[j] = out.values[order[j]];
        for (int i = 0; i < n; ++i)
            sorted.vectors[static_cast<std::size_t>(i) * n + j] =
                v[static_cast<std::size_t>(i) * n + order[j]];
    }
    return sorted;
}

double sigma_max(const std::vector<cxd>& a, int n, int m) {
    const auto g = matmul(dagger(a, n, m), a, m, n, m);
    const auto eig = herm_eig(g, m);
    return std::sqrt(std::max(0.0, eig.values.back()));
}

double sigma_min(const std::vector<cxd>& a, int n, int m) {
    const auto g = matmul(dagger(a, n, m), a, m, n, m);
    const auto eig = herm_eig(g, m);
    return std::sqrt(std::max(0.0, eig.values.front()));
}

bool invert(const std::vector<cxd>& a, std::vector<cxd>& out, int n) {
    std::vector<cxd> w = a;
    out.assign(static_cast<std::size_t>(n) * n, cxd{0.0, 0.0});
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i) * n + i] = 1.0;

    auto at = [n](std::vector<cxd>& mat, int r, int c) -> cxd& {
        return mat[static_cast<std::size_t>(r) * n + c];
    };

    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(at(w, col, col));
        for (int r = col + 1; r < n; ++r) {
            const double mag = std::abs(at(w, r, col));
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (best < 1e-300) return false;
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(at(w, piv, j), at(w, col, j));
                std::swap(at(out, piv, j), at(out, col, j));
            }
        }
        const cxd inv_pivot = 1.0 / at(w, col, col);
        for (int j = 0; j < n; ++j) {
            at(w, col, j) *= inv_pivot;
            at(out, col, j) *= inv_pivot;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const cxd f = at(w, r, col);
            if (f == cxd{0.0, 0.0}) continue;
            for (int j = 0; j < n; ++j) {
                at(w, r, j) -= f * at(w, col, j);
                at(out, r, j) -= f * at(out, col, j);
            }
        }
    }
    return true;
}

std::vector<cxd> herm_function(const std::vector<cxd>& a, int n,
                               double (*f)(double)) {
    const auto eig = herm_eig(a, n);
    // V f(D) V^H with f(D) absorbed into the left factor.
    std::vector<cxd> vf(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            vf[static_cast<std::size_t>(i) * n + j] =
                eig.vectors[static_cast<std::size_t>(i) * n + j] *
                f(eig.values[j]);
    return matmul(vf, dagger(eig.vectors, n, n), n, n, n);
}

}  // namespace opframe::kern
