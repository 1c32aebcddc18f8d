#include "opframe/module_space.hpp"

#include <cmath>

namespace opframe {

ModuleVector zero_vector(AlgebraDescriptor d, int rank) {
    return ModuleVector(d, rank);
}

ModuleVector basis_vector(AlgebraDescriptor d, int rank, int k) {
    if (k < 0 || k >= rank) throw std::invalid_argument("basis index out of range");
    ModuleVector x(d, rank);
    x.components[k] = unit_element(d);
    return x;
}

void require_same_shape(const ModuleVector& x, const ModuleVector& y) {
    if (!(x.desc == y.desc) || x.rank() != y.rank())
        throw std::invalid_argument("module vector shape mismatch");
}

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y) {
    require_same_shape(x, y);
    AlgebraElement acc(x.desc);
    for (int k = 0; k < x.rank(); ++k)
        acc = add(acc, multiply(x.components[k], star(y.components[k])));
    return acc;
}

ModuleVector left_action(const AlgebraElement& a, const ModuleVector& x) {
    if (!(a.desc == x.desc))
        throw std::invalid_argument("left_action: descriptor mismatch");
    ModuleVector out(x.desc, x.rank());
    for (int k = 0; k < x.rank(); ++k)
        out.components[k] = multiply(a, x.components[k]);
    return out;
}

ModuleVector add(const ModuleVector& x, const ModuleVector& y) {
    require_same_shape(x, y);
    ModuleVector out(x.desc, x.rank());
    for (int k = 0; k < x.rank(); ++k)
        out.components[k] = add(x.components[k], y.components[k]);
    return out;
}

ModuleVector sub(const ModuleVector& x, const ModuleVector& y) {
    require_same_shape(x, y);
    ModuleVector out(x.desc, x.rank());
    for (int k = 0; k < x.rank(); ++k)
        out.components[k] = sub(x.components[k], y.components[k]);
    return out;
}

ModuleVector scale(cxd c, const ModuleVector& x) {
    ModuleVector out(x.desc, x.rank());
    for (int k = 0; k < x.rank(); ++k) out.components[k] = scale(c, x.components[k]);
    return out;
}

double module_norm(const ModuleVector& x) {
    return std::sqrt(std::max(0.0, norm(inner_product(x, x))));
}

AlgebraElement a_valued_modulus(const ModuleVector& x) {
    return positive_sqrt(inner_product(x, x));
}

AlgebraElement seq_inner_product(const CoefficientSequence& u,
                                 const CoefficientSequence& v) {
    if (u.size() == 0 || u.size() != v.size())
        throw std::invalid_argument("seq_inner_product: length mismatch");
    AlgebraElement acc(u.entries.front().desc);
    for (int i = 0; i < u.size(); ++i)
        acc = add(acc, inner_product(u.entries[i], v.entries[i]));
    return acc;
}

}  // namespace opframe
