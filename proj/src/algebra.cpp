#include "opframe/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace opframe {

AlgebraElement zero_element(AlgebraDescriptor d) { return AlgebraElement(d); }

AlgebraElement unit_element(AlgebraDescriptor d) {
    AlgebraElement e(d);
    for (int i = 0; i < d.n; ++i) e.at(i, i) = 1.0;
    return e;
}

AlgebraElement diag_element(AlgebraDescriptor d, const std::vector<cxd>& diag) {
    if (static_cast<int>(diag.size()) != d.n)
        throw std::invalid_argument("diag_element: length mismatch");
    AlgebraElement e(d);
    for (int i = 0; i < d.n; ++i) e.at(i, i) = diag[i];
    return e;
}

bool same_descriptor(const AlgebraElement& a, const AlgebraElement& b) {
    return a.desc == b.desc;
}

void require_same_descriptor(const AlgebraElement& a, const AlgebraElement& b) {
    if (!same_descriptor(a, b))
        throw std::invalid_argument("algebra descriptor mismatch");
}

AlgebraElement star(const AlgebraElement& a) {
    AlgebraElement out(a.desc);
    const int n = a.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = std::conj(a.at(j, i));
    return out;
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_descriptor(a, b);
    AlgebraElement out(a.desc);
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = a.entries[i] + b.entries[i];
    return out;
}

AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_descriptor(a, b);
    AlgebraElement out(a.desc);
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = a.entries[i] - b.entries[i];
    return out;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_descriptor(a, b);
    const int n = a.n();
    AlgebraElement out(a.desc);
    if (a.kind() == AlgebraKind::diagonal) {
        // Slotwise product; off-diagonal stays exactly zero.
        for (int i = 0; i < n; ++i) out.at(i, i) = a.at(i, i) * b.at(i, i);
        return out;
    }
    kern::matmul(a.entries.data(), b.entries.data(), out.entries.data(), n, n, n);
    return out;
}

AlgebraElement scale(cxd c, const AlgebraElement& a) {
    AlgebraElement out(a.desc);
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = c * a.entries[i];
    return out;
}

double frob(const AlgebraElement& a) { return kern::frob_norm(a.entries); }

double norm(const AlgebraElement& a) {
    if (a.kind() == AlgebraKind::diagonal) {
        double best = 0.0;
        for (int i = 0; i < a.n(); ++i) best = std::max(best, std::abs(a.at(i, i)));
        return best;
    }
    return kern::sigma_max(a.entries, a.n(), a.n());
}

namespace {

double herm_defect(const AlgebraElement& a) {
    double s = 0.0;
    const int n = a.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cxd d = a.at(i, j) - std::conj(a.at(j, i));
            s += std::norm(d);
        }
    return std::sqrt(s) * 0.5;
}

AlgebraElement hermitian_part(const AlgebraElement& a) {
    AlgebraElement h(a.desc);
    const int n = a.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h.at(i, j) = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
    return h;
}

}  // namespace

std::vector<double> spectrum(const AlgebraElement& a, double tol) {
    if (herm_defect(a) > tol * std::max(1.0, frob(a)))
        throw std::invalid_argument("spectrum: element is not Hermitian");
    const int n = a.n();
    if (a.kind() == AlgebraKind::diagonal) {
        std::vector<double> vals(n);
        for (int i = 0; i < n; ++i) vals[i] = a.at(i, i).real();
        std::sort(vals.begin(), vals.end());
        return vals;
    }
    return kern::herm_eig(hermitian_part(a).entries, n).values;
}

bool is_positive(const AlgebraElement& a, double tol) {
    return positivity_check(a, tol).first;
}

std::pair<bool, double> positivity_check(const AlgebraElement& a, double tol) {
    const double gauge = std::max(1.0, frob(a));
    const auto vals = spectrum(hermitian_part(a), 1.0);
    const bool hermitian_ok = herm_defect(a) <= tol * gauge;
    return {hermitian_ok && vals.front() >= -tol * gauge, vals.front()};
}

double real_trace(const AlgebraElement& a) {
    double s = 0.0;
    for (int i = 0; i < a.n(); ++i) s += a.at(i, i).real();
    return s;
}

std::optional<cxd> as_scalar_multiple(const AlgebraElement& a, double tol) {
    const cxd c = a.at(0, 0);
    const double gauge = std::max(1.0, std::abs(c));
    const int n = a.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cxd want = (i == j) ? c : cxd{0.0, 0.0};
            if (std::abs(a.at(i, j) - want) > tol * gauge) return std::nullopt;
        }
    return c;
}

AlgebraElement positive_sqrt(const AlgebraElement& a, double tol) {
    if (!is_positive(a, tol))
        throw std::invalid_argument("positive_sqrt: element is not positive");
    const int n = a.n();
    AlgebraElement out(a.desc);
    if (a.kind() == AlgebraKind::diagonal) {
        for (int i = 0; i < n; ++i)
            out.at(i, i) = std::sqrt(std::max(0.0, a.at(i, i).real()));
        return out;
    }
    out.entries = kern::herm_function(
        hermitian_part(a).entries, n,
        +[](double x) { return std::sqrt(std::max(0.0, x)); });
    return out;
}

AlgebraElement abs_value(const AlgebraElement& a) {
    return positive_sqrt(multiply(star(a), a), kDefaultTol);
}

double smallest_singular_value(const AlgebraElement& a) {
    if (a.kind() == AlgebraKind::diagonal) {
        double worst = std::abs(a.at(0, 0));
        for (int i = 1; i < a.n(); ++i)
            worst = std::min(worst, std::abs(a.at(i, i)));
        return worst;
    }
    return kern::sigma_min(a.entries, a.n(), a.n());
}

AlgebraElement inverse(const AlgebraElement& a) {
    const double guard = 1e-12 * std::max(1.0, norm(a));
    if (smallest_singular_value(a) < guard)
        throw std::invalid_argument("inverse: element singular to tolerance");
    const int n = a.n();
    AlgebraElement out(a.desc);
    if (a.kind() == AlgebraKind::diagonal) {
        for (int i = 0; i < n; ++i) out.at(i, i) = 1.0 / a.at(i, i);
        return out;
    }
    if (!kern::invert(a.entries, out.entries, n))
        throw std::invalid_argument("inverse: pivot breakdown");
    return out;
}

}  // namespace opframe
