#include "opframe/random_vectors.hpp"

#include <cmath>

namespace opframe {

AlgebraElement random_element(AlgebraDescriptor d, Rng& rng) {
    AlgebraElement a(d);
    if (d.kind == AlgebraKind::diagonal) {
        for (int i = 0; i < d.n; ++i) a.at(i, i) = rng.cnormal();
        return a;
    }
    for (int i = 0; i < d.n; ++i)
        for (int j = 0; j < d.n; ++j) a.at(i, j) = rng.cnormal();
    return a;
}

AlgebraElement random_hermitian(AlgebraDescriptor d, Rng& rng) {
    const AlgebraElement g = random_element(d, rng);
    return scale(0.5, add(g, star(g)));
}

AlgebraElement random_positive_element(AlgebraDescriptor d, Rng& rng,
                                       double shift) {
    const AlgebraElement g = random_element(d, rng);
    AlgebraElement p = multiply(g, star(g));
    p = scale(1.0 / d.n, p);
    return add(p, scale(shift, unit_element(d)));
}

AlgebraElement random_unitary(AlgebraDescriptor d, Rng& rng) {
    AlgebraElement u(d);
    if (d.kind == AlgebraKind::diagonal) {
        for (int i = 0; i < d.n; ++i) {
            const double phi = rng.uniform(0.0, 6.283185307179586);
            u.at(i, i) = cxd{std::cos(phi), std::sin(phi)};
        }
        return u;
    }
    // Gram-Schmidt over the rows of a Gaussian draw, one re-orthogonalization
    // pass to push unitarity to rounding level.
    const int n = d.n;
    AlgebraElement g = random_element(d, rng);
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                cxd proj{0.0, 0.0};
                for (int k = 0; k < n; ++k)
                    proj += g.at(i, k) * std::conj(g.at(j, k));
                for (int k = 0; k < n; ++k) g.at(i, k) -= proj * g.at(j, k);
            }
            double nrm = 0.0;
            for (int k = 0; k < n; ++k) nrm += std::norm(g.at(i, k));
            nrm = std::sqrt(nrm);
            for (int k = 0; k < n; ++k) g.at(i, k) /= nrm;
        }
    }
    u = g;
    return u;
}

ModuleVector random_module_vector(AlgebraDescriptor d, int rank, Rng& rng) {
    ModuleVector x(d, rank);
    for (int k = 0; k < rank; ++k) x.components[k] = random_element(d, rng);
    return x;
}

ModuleVector random_unit_vector(AlgebraDescriptor d, int rank, Rng& rng) {
    ModuleVector x = random_module_vector(d, rank, rng);
    const double nrm = module_norm(x);
    return scale(cxd{1.0 / nrm, 0.0}, x);
}

ModuleOperator random_operator(AlgebraDescriptor d, int rank, Rng& rng) {
    ModuleOperator t(d, rank);
    const double s = 1.0 / std::sqrt(static_cast<double>(rank) * d.n);
    for (int j = 0; j < rank; ++j)
        for (int k = 0; k < rank; ++k)
            t.at(j, k) = scale(s, random_element(d, rng));
    return t;
}

ModuleOperator random_gl_plus_operator(AlgebraDescriptor d, int rank, Rng& rng,
                                       double shift) {
    const ModuleOperator g = random_operator(d, rank, rng);
    return add(compose(adjoint(g), g),
               scalar_operator(d, rank, rng.uniform(shift, shift + 1.0)));
}

ModuleOperator random_invertible_operator(AlgebraDescriptor d, int rank,
                                          Rng& rng) {
    const ModuleOperator g = random_operator(d, rank, rng);
    return add(g, scalar_operator(d, rank, rng.uniform(0.75, 1.5)));
}

ModuleOperator random_unitary_operator(AlgebraDescriptor d, int rank, Rng& rng) {
    if (d.kind == AlgebraKind::diagonal) {
        // Per-slot phases on the diagonal grid keep the structure exact.
        ModuleOperator t(d, rank);
        for (int j = 0; j < rank; ++j) t.at(j, j) = random_unitary(d, rng);
        return t;
    }
    const int dim = rank * d.n;
    AlgebraDescriptor big{AlgebraKind::full, dim};
    const AlgebraElement u = random_unitary(big, rng);
    BlockRealization b;
    b.dim = dim;
    b.m = u.entries;
    return operator_from_block(d, rank, b);
}

}  // namespace opframe
