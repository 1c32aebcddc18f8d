/*
 * generators.hpp — seeded instance synthesis.
 *
 * Three kinds. scalar_controller draws full-algebra operators with scalar
 * controllers (commutation is exact); diagonal draws everything diagonal
 * (also exact); harmonic builds the worked tight instance. Generated
 * instances always pass the commutation gate by construction.
 */

#pragma once

#include "opframe/frames.hpp"
#include "opframe/random_vectors.hpp"

namespace opframe {

enum class InstanceKind { scalar_controller, diagonal, harmonic };

struct GenSpec {
    InstanceKind kind = InstanceKind::scalar_controller;
    int n = 2;      // algebra size
    int m = 2;      // module rank
    int count = 4;  // family size
    int d = 3;      // harmonic truncation
    double alpha = 2.0;
    bool with_bounds = true;  // attach the natural star bounds
};

Instance generate_instance(const GenSpec& spec, std::uint64_t seed);

std::optional<InstanceKind> instance_kind_from_name(const std::string& name);
std::string instance_kind_name(InstanceKind k);

}  // namespace opframe
