#include "opframe/generators.hpp"

namespace opframe {

namespace {

Instance generate_scalar_controller(const GenSpec& spec, Rng& rng) {
    const AlgebraDescriptor d{AlgebraKind::full, spec.n};
    OperatorFamily family;
    family.C = scalar_operator(d, spec.m, rng.uniform(0.5, 2.0));
    family.C_prime = scalar_operator(d, spec.m, rng.uniform(0.5, 2.0));
    family.ops.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i)
        family.ops.push_back(random_operator(d, spec.m, rng));
    return {family, std::nullopt};
}

Instance generate_diagonal(const GenSpec& spec, Rng& rng) {
    const AlgebraDescriptor d{AlgebraKind::diagonal, spec.n};
    OperatorFamily family;
    // Positive diagonal controllers commute with everything diagonal.
    auto controller = [&] {
        ModuleOperator c(d, spec.m);
        for (int j = 0; j < spec.m; ++j) {
            AlgebraElement g(d);
            for (int r = 0; r < spec.n; ++r) g.at(r, r) = rng.uniform(0.5, 2.0);
            c.at(j, j) = g;
        }
        return c;
    };
    family.C = controller();
    family.C_prime = controller();
    family.ops.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        // Diagonal grids: T*T stays diagonal, so the gate residual is zero.
        ModuleOperator t(d, spec.m);
        for (int j = 0; j < spec.m; ++j)
            for (int k = 0; k < spec.m; ++k)
                if (j == k) t.at(j, k) = random_element(d, rng);
        family.ops.push_back(t);
    }
    return {family, std::nullopt};
}

}  // namespace

Instance generate_instance(const GenSpec& spec, std::uint64_t seed) {
    if (spec.count < 1)
        throw std::invalid_argument("generate_instance: count must be >= 1");
    if (spec.n < 1 || spec.m < 1)
        throw std::invalid_argument("generate_instance: sizes must be >= 1");

    Rng rng(splitmix64(seed));
    Instance inst;
    switch (spec.kind) {
        case InstanceKind::scalar_controller:
            inst = generate_scalar_controller(spec, rng);
            break;
        case InstanceKind::diagonal:
            inst = generate_diagonal(spec, rng);
            break;
        case InstanceKind::harmonic:
            inst = {make_harmonic_family(spec.d, spec.alpha),
                    StarBoundPair{harmonic_bound_element(spec.d),
                                  harmonic_bound_element(spec.d)}};
            return inst;
    }

    if (spec.with_bounds) {
        const auto scalars = optimal_scalar_bounds(inst.family);
        if (scalars.first > kDefaultTol)
            inst.bounds = promote_scalar_to_star(inst.family.descriptor(),
                                                 scalars.first, scalars.second);
    }
    return inst;
}

std::optional<InstanceKind> instance_kind_from_name(const std::string& name) {
    if (name == "scalar_controller") return InstanceKind::scalar_controller;
    if (name == "diagonal") return InstanceKind::diagonal;
    if (name == "harmonic") return InstanceKind::harmonic;
    return std::nullopt;
}

std::string instance_kind_name(InstanceKind k) {
    switch (k) {
        case InstanceKind::scalar_controller: return "scalar_controller";
        case InstanceKind::diagonal: return "diagonal";
        case InstanceKind::harmonic: return "harmonic";
    }
    return "scalar_controller";
}

}  // namespace opframe
