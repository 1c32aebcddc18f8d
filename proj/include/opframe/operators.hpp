/*
 * operators.hpp — adjointable operators on H = A^m.
 *
 * An operator is an m-by-m grid of algebra elements acting by right
 * multiplication, (T x)_k = sum_j x_j g(j,k), which makes A-linearity over
 * the left action exact by construction.
 *
 * block_realization maps an operator to an (m n)-by-(m n) complex matrix B
 * with B(T given U composed) = B(T) B(U), B(adjoint) = B^H and B(id) = id,
 * an isomorphism of *-algebras. Every order statement about operators
 * (positivity, GL+ membership, spectral envelopes) reduces to a Hermitian
 * eigenvalue problem for B. The index layout pairs module slot j with
 * algebra column r; the column vectors u_a with u_a[j n + r] = x_j(a, r),
 * one per algebra row a, transform as u_a -> B(T) u_a under the action.
 */

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "opframe/module_space.hpp"

namespace opframe {

struct ModuleOperator {
    AlgebraDescriptor desc;
    int rank = 1;
    std::vector<AlgebraElement> grid;  // row-major m*m

    ModuleOperator() = default;
    ModuleOperator(AlgebraDescriptor d, int m)
        : desc(d), rank(m), grid(static_cast<std::size_t>(m) * m, AlgebraElement(d)) {
        if (m < 1) throw std::invalid_argument("operator rank must be >= 1");
    }

    AlgebraElement& at(int j, int k) {
        return grid[static_cast<std::size_t>(j) * rank + k];
    }
    const AlgebraElement& at(int j, int k) const {
        return grid[static_cast<std::size_t>(j) * rank + k];
    }

    int block_dim() const { return rank * desc.n; }
};

struct BlockRealization {
    int dim = 0;
    std::vector<cxd> m;  // row-major dim*dim
};

ModuleOperator zero_operator(AlgebraDescriptor d, int rank);
ModuleOperator identity_operator(AlgebraDescriptor d, int rank);
ModuleOperator scalar_operator(AlgebraDescriptor d, int rank, cxd c);

void require_same_shape(const ModuleOperator& t, const ModuleOperator& u);

ModuleVector apply(const ModuleOperator& t, const ModuleVector& x);
ModuleOperator adjoint(const ModuleOperator& t);
// apply(compose(t, u), x) == apply(t, apply(u, x)).
ModuleOperator compose(const ModuleOperator& t, const ModuleOperator& u);
ModuleOperator add(const ModuleOperator& t, const ModuleOperator& u);
ModuleOperator sub(const ModuleOperator& t, const ModuleOperator& u);
ModuleOperator scale(cxd c, const ModuleOperator& t);

BlockRealization block_realization(const ModuleOperator& t);
// Inverse of block_realization. For diagonal descriptors the off-diagonal
// garbage (at rounding scale) is projected away so diagonal closure is exact.
ModuleOperator operator_from_block(AlgebraDescriptor d, int rank,
                                   const BlockRealization& b);

// Column slices of a vector in the realization coordinates and back:
// slice a holds x_j(a, r) at position j*n + r.
std::vector<cxd> vector_slice(const ModuleVector& x, int a);
ModuleVector vector_from_slices(AlgebraDescriptor d, int rank,
                                const std::vector<std::vector<cxd>>& slices);

double operator_norm(const ModuleOperator& t);
bool is_positive_operator(const ModuleOperator& t, double tol = kDefaultTol);
bool is_gl_plus(const ModuleOperator& t, double tol = kDefaultTol);
ModuleOperator operator_sqrt(const ModuleOperator& t, double tol = kDefaultTol);
// Smallest singular value of the realization; > 0 to tolerance is the
// finite-scale criterion for injectivity and surjectivity alike.
double bounded_below_constant(const ModuleOperator& t);
ModuleOperator operator_inverse(const ModuleOperator& t);

// For injective T: bounds (|(T*T)^{-1}|^{-1}, |T|^2) together with PSD
// certificates of  lower*Id <= T*T <= upper*Id. Throws when T is not
// injective to tolerance.
std::pair<double, double> gram_envelope(const ModuleOperator& t,
                                        double tol = kDefaultTol);

// The scalar c with t = c * identity, when one exists to tolerance.
std::optional<cxd> as_scalar_operator(const ModuleOperator& t,
                                      double tol = 1e-12);

double commutator_norm(const ModuleOperator& t, const ModuleOperator& u);

}  // namespace opframe
