/*
 * kern.hpp — dense complex matrix kernels.
 *
 * Row-major std::complex<double> matrices stored in flat vectors. The
 * multiply kernel exists twice: matmul_ref is the plain serial triple loop
 * kept as the reference, matmul parallelizes the row loop with OpenMP when
 * the problem is large enough. Both accumulate each output entry in the
 * same order, so their results are bit-identical; the tests rely on that.
 *
 * herm_eig is a cyclic Jacobi eigensolver for Hermitian matrices. It skips
 * rotations on entries that are exactly zero, so block structure made of
 * exact zeros (diagonal algebras, slot-decoupled realizations) survives the
 * decomposition exactly.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace opframe::kern {

using cxd = std::complex<double>;

// c = a * b with a n-by-k, b k-by-m, c n-by-m. c must not alias a or b.
void matmul_ref(const cxd* a, const cxd* b, cxd* c, int n, int k, int m);
void matmul(const cxd* a, const cxd* b, cxd* c, int n, int k, int m);

std::vector<cxd> matmul(const std::vector<cxd>& a, const std::vector<cxd>& b,
                        int n, int k, int m);

// out = a^H with a n-by-m (out is m-by-n).
std::vector<cxd> dagger(const std::vector<cxd>& a, int n, int m);

double frob_norm(const cxd* a, std::size_t len);
double frob_norm(const std::vector<cxd>& a);

// Eigendecomposition a = V diag(values) V^H of a Hermitian n-by-n matrix.
// values ascending; vectors holds V row-major (eigenvectors are columns).
struct HermEig {
    std::vector<double> values;
    std::vector<cxd> vectors;
};
HermEig herm_eig(const std::vector<cxd>& a, int n);

// Largest/smallest singular value of a general n-by-m matrix, via the
// spectrum of a^H a.
double sigma_max(const std::vector<cxd>& a, int n, int m);
double sigma_min(const std::vector<cxd>& a, int n, int m);

// Gauss-Jordan inverse with partial pivoting. Returns false on a pivot
// breakdown (matrix singular to working precision).
bool invert(const std::vector<cxd>& a, std::vector<cxd>& out, int n);

// Apply f to the spectrum of a Hermitian matrix: V f(diag) V^H.
std::vector<cxd> herm_function(const std::vector<cxd>& a, int n,
                               double (*f)(double));

}  // namespace opframe::kern
