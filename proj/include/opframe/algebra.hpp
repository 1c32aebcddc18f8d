/*
 * algebra.hpp — elements of a finite-dimensional C*-algebra.
 *
 * Two realizations: the full matrix algebra M_n and the commutative diagonal
 * algebra D_n. An element is an n-by-n complex grid; diagonal elements keep
 * exact zeros off the diagonal and every operation preserves that, so the
 * diagonal algebra is closed under the whole calculus.
 *
 * Spectral operations (spectrum, positive_sqrt, norm) go through the Jacobi
 * eigensolver in kern.hpp. Positivity and invertibility are tolerance
 * decisions: relative thresholds against max(1, |a|).
 */

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "opframe/kern.hpp"

namespace opframe {

using cxd = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

enum class AlgebraKind { full, diagonal };

struct AlgebraDescriptor {
    AlgebraKind kind = AlgebraKind::full;
    int n = 1;

    bool operator==(const AlgebraDescriptor&) const = default;
};

struct AlgebraElement {
    AlgebraDescriptor desc;
    std::vector<cxd> entries;  // row-major n*n

    AlgebraElement() : entries(1, cxd{0.0, 0.0}) {}
    explicit AlgebraElement(AlgebraDescriptor d)
        : desc(d), entries(static_cast<std::size_t>(d.n) * d.n, cxd{0.0, 0.0}) {
        if (d.n < 1) throw std::invalid_argument("algebra size must be >= 1");
    }

    int n() const { return desc.n; }
    AlgebraKind kind() const { return desc.kind; }

    cxd& at(int r, int c) { return entries[static_cast<std::size_t>(r) * desc.n + c]; }
    const cxd& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * desc.n + c];
    }
};

AlgebraElement zero_element(AlgebraDescriptor d);
AlgebraElement unit_element(AlgebraDescriptor d);
// Diagonal matrix with the given diagonal; valid for both kinds.
AlgebraElement diag_element(AlgebraDescriptor d, const std::vector<cxd>& diag);

bool same_descriptor(const AlgebraElement& a, const AlgebraElement& b);
void require_same_descriptor(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement star(const AlgebraElement& a);
AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(cxd c, const AlgebraElement& a);

inline AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    return add(a, b);
}
inline AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return sub(a, b);
}
inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    return multiply(a, b);
}

// Frobenius norm; cheap gauge used for relative tolerances.
double frob(const AlgebraElement& a);

// C*-norm: largest singular value.
double norm(const AlgebraElement& a);

// Eigenvalues of a Hermitian element, ascending. Throws on inputs that are
// not Hermitian within tol * max(1, frob).
std::vector<double> spectrum(const AlgebraElement& a, double tol = kDefaultTol);

bool is_positive(const AlgebraElement& a, double tol = kDefaultTol);

// Unique positive square root of a positive element. Eigenvalues inside the
// tolerance band below zero are clamped to zero first.
AlgebraElement positive_sqrt(const AlgebraElement& a, double tol = kDefaultTol);

// |a| = (a* a)^(1/2).
AlgebraElement abs_value(const AlgebraElement& a);

double smallest_singular_value(const AlgebraElement& a);

// Throws when the smallest singular value falls under 1e-12 * max(1, norm).
AlgebraElement inverse(const AlgebraElement& a);

// {is_positive, smallest eigenvalue of the Hermitian part}. The margin is
// reported even when the element fails the Hermitian gate.
std::pair<bool, double> positivity_check(const AlgebraElement& a,
                                         double tol = kDefaultTol);

double real_trace(const AlgebraElement& a);

// The scalar c with a = c * unit, when one exists to tolerance.
std::optional<cxd> as_scalar_multiple(const AlgebraElement& a,
                                      double tol = 1e-12);

}  // namespace opframe
