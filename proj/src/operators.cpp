#include "opframe/operators.hpp"

#include <cmath>

namespace opframe {

ModuleOperator zero_operator(AlgebraDescriptor d, int rank) {
    return ModuleOperator(d, rank);
}

ModuleOperator identity_operator(AlgebraDescriptor d, int rank) {
    return scalar_operator(d, rank, 1.0);
}

ModuleOperator scalar_operator(AlgebraDescriptor d, int rank, cxd c) {
    ModuleOperator t(d, rank);
    for (int j = 0; j < rank; ++j) t.at(j, j) = scale(c, unit_element(d));
    return t;
}

void require_same_shape(const ModuleOperator& t, const ModuleOperator& u) {
    if (!(t.desc == u.desc) || t.rank != u.rank)
        throw std::invalid_argument("operator shape mismatch");
}

ModuleVector apply(const ModuleOperator& t, const ModuleVector& x) {
    if (!(t.desc == x.desc) || t.rank != x.rank())
        throw std::invalid_argument("apply: shape mismatch");
    ModuleVector out(x.desc, x.rank());
    for (int k = 0; k < t.rank; ++k) {
        AlgebraElement acc(t.desc);
        for (int j = 0; j < t.rank; ++j)
            acc = add(acc, multiply(x.components[j], t.at(j, k)));
        out.components[k] = acc;
    }
    return out;
}

ModuleOperator adjoint(const ModuleOperator& t) {
    ModuleOperator out(t.desc, t.rank);
    for (int j = 0; j < t.rank; ++j)
        for (int k = 0; k < t.rank; ++k) out.at(j, k) = star(t.at(k, j));
    return out;
}

ModuleOperator compose(const ModuleOperator& t, const ModuleOperator& u) {
    require_same_shape(t, u);
    ModuleOperator out(t.desc, t.rank);
    for (int j = 0; j < t.rank; ++j)
        for (int l = 0; l < t.rank; ++l) {
            AlgebraElement acc(t.desc);
            for (int k = 0; k < t.rank; ++k)
                acc = add(acc, multiply(u.at(j, k), t.at(k, l)));
            out.at(j, l) = acc;
        }
    return out;
}

ModuleOperator add(const ModuleOperator& t, const ModuleOperator& u) {
    require_same_shape(t, u);
    ModuleOperator out(t.desc, t.rank);
    for (std::size_t i = 0; i < out.grid.size(); ++i)
        out.grid[i] = add(t.grid[i], u.grid[i]);
    return out;
}

ModuleOperator sub(const ModuleOperator& t, const ModuleOperator& u) {
    require_same_shape(t, u);
    ModuleOperator out(t.desc, t.rank);
    for (std::size_t i = 0; i < out.grid.size(); ++i)
        out.grid[i] = sub(t.grid[i], u.grid[i]);
    return out;
}

ModuleOperator scale(cxd c, const ModuleOperator& t) {
    ModuleOperator out(t.desc, t.rank);
    for (std::size_t i = 0; i < out.grid.size(); ++i) out.grid[i] = scale(c, t.grid[i]);
    return out;
}

BlockRealization block_realization(const ModuleOperator& t) {
    const int m = t.rank, n = t.desc.n, dim = m * n;
    BlockRealization b;
    b.dim = dim;
    b.m.assign(static_cast<std::size_t>(dim) * dim, cxd{0.0, 0.0});
    // B[(k,s), (j,r)] = g(j,k)[r,s]; the transposed block layout is what
    // turns "apply u first" composition into left matrix multiplication.
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            const AlgebraElement& g = t.at(j, k);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s)
                    b.m[static_cast<std::size_t>(k * n + s) * dim + (j * n + r)] =
                        g.at(r, s);
        }
    return b;
}

ModuleOperator operator_from_block(AlgebraDescriptor d, int rank,
                                   const BlockRealization& b) {
    const int n = d.n, dim = rank * n;
    if (b.dim != dim)
        throw std::invalid_argument("operator_from_block: dimension mismatch");
    ModuleOperator t(d, rank);
    for (int j = 0; j < rank; ++j)
        for (int k = 0; k < rank; ++k) {
            AlgebraElement g(d);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    if (d.kind == AlgebraKind::diagonal && r != s) continue;
                    g.at(r, s) =
                        b.m[static_cast<std::size_t>(k * n + s) * dim + (j * n + r)];
                }
            t.at(j, k) = g;
        }
    return t;
}

std::vector<cxd> vector_slice(const ModuleVector& x, int a) {
    const int m = x.rank(), n = x.desc.n;
    std::vector<cxd> u(static_cast<std::size_t>(m) * n);
    for (int j = 0; j < m; ++j)
        for (int r = 0; r < n; ++r) u[j * n + r] = x.components[j].at(a, r);
    return u;
}

ModuleVector vector_from_slices(AlgebraDescriptor d, int rank,
                                const std::vector<std::vector<cxd>>& slices) {
    if (static_cast<int>(slices.size()) != d.n)
        throw std::invalid_argument("vector_from_slices: need n slices");
    ModuleVector x(d, rank);
    for (int a = 0; a < d.n; ++a) {
        if (static_cast<int>(slices[a].size()) != rank * d.n)
            throw std::invalid_argument("vector_from_slices: slice length");
        for (int j = 0; j < rank; ++j)
            for (int r = 0; r < d.n; ++r) {
                if (d.kind == AlgebraKind::diagonal && a != r) continue;
                x.components[j].at(a, r) = slices[a][j * d.n + r];
            }
    }
    return x;
}

namespace {

std::vector<cxd> hermitian_part(const std::vector<cxd>& m, int dim) {
    std::vector<cxd> h(m.size());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            h[static_cast<std::size_t>(i) * dim + j] =
                0.5 * (m[static_cast<std::size_t>(i) * dim + j] +
                       std::conj(m[static_cast<std::size_t>(j) * dim + i]));
    return h;
}

double herm_defect(const std::vector<cxd>& m, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            s += std::norm(m[static_cast<std::size_t>(i) * dim + j] -
                           std::conj(m[static_cast<std::size_t>(j) * dim + i]));
    return 0.5 * std::sqrt(s);
}

}  // namespace

double operator_norm(const ModuleOperator& t) {
    const auto b = block_realization(t);
    return kern::sigma_max(b.m, b.dim, b.dim);
}

bool is_positive_operator(const ModuleOperator& t, double tol) {
    const auto b = block_realization(t);
    const double gauge = std::max(1.0, kern::frob_norm(b.m));
    if (herm_defect(b.m, b.dim) > tol * gauge) return false;
    const auto eig = kern::herm_eig(hermitian_part(b.m, b.dim), b.dim);
    return eig.values.front() >= -tol * gauge;
}

bool is_gl_plus(const ModuleOperator& t, double tol) {
    if (!is_positive_operator(t, tol)) return false;
    const auto b = block_realization(t);
    const auto eig = kern::herm_eig(hermitian_part(b.m, b.dim), b.dim);
    const double gate = tol * std::max(1.0, eig.values.back());
    return eig.values.front() >= gate;
}

ModuleOperator operator_sqrt(const ModuleOperator& t, double tol) {
    if (!is_positive_operator(t, tol))
        throw std::invalid_argument("operator_sqrt: operator is not positive");
    const auto b = block_realization(t);
    BlockRealization r;
    r.dim = b.dim;
    r.m = kern::herm_function(hermitian_part(b.m, b.dim), b.dim,
                              +[](double x) { return std::sqrt(std::max(0.0, x)); });
    return operator_from_block(t.desc, t.rank, r);
}

double bounded_below_constant(const ModuleOperator& t) {
    const auto b = block_realization(t);
    return kern::sigma_min(b.m, b.dim, b.dim);
}

ModuleOperator operator_inverse(const ModuleOperator& t) {
    const auto b = block_realization(t);
    const double smin = kern::sigma_min(b.m, b.dim, b.dim);
    const double smax = kern::sigma_max(b.m, b.dim, b.dim);
    if (smin < 1e-12 * std::max(1.0, smax))
        throw std::invalid_argument("operator_inverse: singular to tolerance");
    BlockRealization r;
    r.dim = b.dim;
    if (!kern::invert(b.m, r.m, b.dim))
        throw std::invalid_argument("operator_inverse: pivot breakdown");
    return operator_from_block(t.desc, t.rank, r);
}

std::pair<double, double> gram_envelope(const ModuleOperator& t, double tol) {
    const auto b = block_realization(t);
    const double sigma_lo = kern::sigma_min(b.m, b.dim, b.dim);
    const double sigma_hi = kern::sigma_max(b.m, b.dim, b.dim);
    if (sigma_lo <= tol * std::max(1.0, sigma_hi))
        throw std::invalid_argument("gram_envelope: operator not injective");

    const double lower = sigma_lo * sigma_lo;
    const double upper = sigma_hi * sigma_hi;

    // PSD certificates on the Gram realization.
    const ModuleOperator gram = compose(adjoint(t), t);
    const auto g = block_realization(gram);
    const auto eig = kern::herm_eig(hermitian_part(g.m, g.dim), g.dim);
    const double gauge = tol * std::max(1.0, upper);
    if (eig.values.front() < lower - gauge || eig.values.back() > upper + gauge)
        throw std::runtime_error("gram_envelope: certificate failed");
    return {lower, upper};
}

std::optional<cxd> as_scalar_operator(const ModuleOperator& t, double tol) {
    const cxd c = t.at(0, 0).at(0, 0);
    const double gauge = std::max(1.0, std::abs(c));
    for (int j = 0; j < t.rank; ++j)
        for (int k = 0; k < t.rank; ++k) {
            const AlgebraElement& g = t.at(j, k);
            for (int r = 0; r < g.n(); ++r)
                for (int s = 0; s < g.n(); ++s) {
                    const cxd want = (j == k && r == s) ? c : cxd{0.0, 0.0};
                    if (std::abs(g.at(r, s) - want) > tol * gauge)
                        return std::nullopt;
                }
        }
    return c;
}

double commutator_norm(const ModuleOperator& t, const ModuleOperator& u) {
    return operator_norm(sub(compose(t, u), compose(u, t)));
}

}  // namespace opframe
