/*
 * random_vectors.hpp — seeded random algebra elements, module vectors and
 * operators. Diagonal descriptors draw diagonal data only, so generated
 * values always satisfy the kind invariants.
 */

#pragma once

#include "opframe/operators.hpp"
#include "opframe/rng.hpp"

namespace opframe {

AlgebraElement random_element(AlgebraDescriptor d, Rng& rng);
AlgebraElement random_hermitian(AlgebraDescriptor d, Rng& rng);
// g g* + shift, strictly positive definite.
AlgebraElement random_positive_element(AlgebraDescriptor d, Rng& rng,
                                       double shift = 0.5);
// Unitary via Gram-Schmidt on a Gaussian draw (full kind); diagonal kind
// draws a random phase per slot.
AlgebraElement random_unitary(AlgebraDescriptor d, Rng& rng);

ModuleVector random_module_vector(AlgebraDescriptor d, int rank, Rng& rng);
ModuleVector random_unit_vector(AlgebraDescriptor d, int rank, Rng& rng);

ModuleOperator random_operator(AlgebraDescriptor d, int rank, Rng& rng);
// G* G + shift Id, a GL+ controller.
ModuleOperator random_gl_plus_operator(AlgebraDescriptor d, int rank, Rng& rng,
                                       double shift = 0.5);
// Injective (equivalently surjective at this scale) with sigma_min bounded
// away from zero: random draw plus a scaled identity.
ModuleOperator random_invertible_operator(AlgebraDescriptor d, int rank,
                                          Rng& rng);
// Full kind only: maps a Haar-ish unitary block matrix back to a grid.
ModuleOperator random_unitary_operator(AlgebraDescriptor d, int rank, Rng& rng);

}  // namespace opframe
