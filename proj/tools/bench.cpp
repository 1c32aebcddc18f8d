/*
 * bench — serial reference vs OpenMP kernel timings.
 *
 * Times the dense complex multiply against matmul_ref and a certification
 * sampling run against its serial execution, checking on the way that the
 * parallel paths reproduce the reference results exactly.
 */

#include <chrono>
#include <cstdio>
#include <vector>

#include "opframe/generators.hpp"
#include "opframe/json_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using opframe::cxd;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<cxd> random_matrix(int n, opframe::Rng& rng) {
    std::vector<cxd> m(static_cast<std::size_t>(n) * n);
    for (auto& z : m) z = rng.cnormal();
    return m;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled (serial build)\n");
#endif

    opframe::Rng rng(20240817);

    std::printf("\n%-28s %10s %10s %8s\n", "kernel", "serial[s]", "parallel[s]",
                "speedup");

    for (int n : {96, 192, 384}) {
        const auto a = random_matrix(n, rng);
        const auto b = random_matrix(n, rng);
        std::vector<cxd> c_ref(a.size()), c_par(a.size());

        const int reps = n <= 96 ? 40 : (n <= 192 ? 10 : 3);

        auto t0 = clock_type::now();
        for (int r = 0; r < reps; ++r)
            opframe::kern::matmul_ref(a.data(), b.data(), c_ref.data(), n, n, n);
        const double ts = seconds_since(t0) / reps;

        t0 = clock_type::now();
        for (int r = 0; r < reps; ++r)
            opframe::kern::matmul(a.data(), b.data(), c_par.data(), n, n, n);
        const double tp = seconds_since(t0) / reps;

        bool identical = c_ref == c_par;
        std::printf("matmul %4dx%-4d %15.6f %10.6f %8.2f %s\n", n, n, ts, tp,
                    ts / tp, identical ? "" : "MISMATCH");
    }

    // Certification sampling loop: same certificate must come out of the
    // serial and parallel paths.
    opframe::GenSpec spec;
    spec.kind = opframe::InstanceKind::scalar_controller;
    spec.n = 4;
    spec.m = 4;
    spec.count = 8;
    const opframe::Instance inst = opframe::generate_instance(spec, 7);

    // Non-scalar bounds force the sampled certification path.
    const auto sc = opframe::optimal_scalar_bounds(inst.family);
    opframe::Rng brng(99);
    opframe::AlgebraElement perturb =
        opframe::random_positive_element(inst.family.descriptor(), brng, 1.0);
    perturb = opframe::scale(0.05 / opframe::norm(perturb), perturb);
    const opframe::StarBoundPair bounds{
        opframe::scale(std::sqrt(sc.first) * 0.5,
                       opframe::unit_element(inst.family.descriptor())),
        opframe::add(opframe::scale(std::sqrt(sc.second) * 1.5,
                                    opframe::unit_element(
                                        inst.family.descriptor())),
                     perturb)};

    opframe::CertifyOptions serial_opt;
    serial_opt.samples = 2000;
    serial_opt.parallel = false;
    opframe::CertifyOptions parallel_opt = serial_opt;
    parallel_opt.parallel = true;

    auto t0 = clock_type::now();
    const auto cert_s =
        opframe::certify_star_bounds(inst.family, bounds, serial_opt);
    const double ts = seconds_since(t0);

    t0 = clock_type::now();
    const auto cert_p =
        opframe::certify_star_bounds(inst.family, bounds, parallel_opt);
    const double tp = seconds_since(t0);

    const bool identical =
        opframe::to_json(cert_s).dump() == opframe::to_json(cert_p).dump();
    std::printf("certify 2000 samples %12.6f %10.6f %8.2f %s\n", ts, tp,
                ts / tp, identical ? "" : "MISMATCH");
    std::printf("\ncertificate verdict: %s\n",
                opframe::verdict_name(cert_s.verdict).c_str());
    return identical ? 0 : 1;
}
