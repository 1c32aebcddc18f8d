/*
 * module_space.hpp — the Hilbert module H = A^m.
 *
 * A vector is an m-tuple of algebra elements; the inner product
 * <x,y> = sum_k x_k y_k* takes values in A and is linear in the first slot
 * under the left action (a x)_k = a x_k. CoefficientSequence is the finite
 * stand-in for square-summable families of vectors used by the synthesis and
 * analysis maps.
 */

#pragma once

#include <vector>

#include "opframe/algebra.hpp"

namespace opframe {

struct ModuleVector {
    AlgebraDescriptor desc;
    std::vector<AlgebraElement> components;  // size m

    ModuleVector() = default;
    ModuleVector(AlgebraDescriptor d, int rank)
        : desc(d), components(rank, AlgebraElement(d)) {
        if (rank < 1) throw std::invalid_argument("module rank must be >= 1");
    }

    int rank() const { return static_cast<int>(components.size()); }
};

struct CoefficientSequence {
    std::vector<ModuleVector> entries;

    int size() const { return static_cast<int>(entries.size()); }
};

ModuleVector zero_vector(AlgebraDescriptor d, int rank);
// k-th basis vector: the algebra unit in slot k, zero elsewhere.
ModuleVector basis_vector(AlgebraDescriptor d, int rank, int k);

void require_same_shape(const ModuleVector& x, const ModuleVector& y);

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y);
ModuleVector left_action(const AlgebraElement& a, const ModuleVector& x);
ModuleVector add(const ModuleVector& x, const ModuleVector& y);
ModuleVector sub(const ModuleVector& x, const ModuleVector& y);
ModuleVector scale(cxd c, const ModuleVector& x);

double module_norm(const ModuleVector& x);
AlgebraElement a_valued_modulus(const ModuleVector& x);

AlgebraElement seq_inner_product(const CoefficientSequence& u,
                                 const CoefficientSequence& v);

}  // namespace opframe
