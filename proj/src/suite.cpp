#include "opframe/suite.hpp"

#include <algorithm>
#include <cmath>

#include "opframe/transforms.hpp"

namespace opframe {

namespace {

double max_abs_entry(const AlgebraElement& a) {
    double best = 0.0;
    for (const auto& z : a.entries) best = std::max(best, std::abs(z));
    return best;
}

struct Worst {
    double value = 0.0;
    void fold(double r) { value = std::max(value, r); }
};

CertifyOptions options_of(const SuiteConfig& cfg) {
    CertifyOptions opt;
    opt.samples = cfg.samples;
    opt.seed = cfg.seed;
    opt.tol = cfg.tol;
    opt.parallel = cfg.parallel;
    return opt;
}

ModuleOperator random_commuting_invertible(const OperatorFamily& family,
                                           Rng& rng) {
    const AlgebraDescriptor d = family.descriptor();
    const int m = family.rank();
    for (int attempt = 0; attempt < 32; ++attempt) {
        ModuleOperator theta(d, m);
        if (d.kind == AlgebraKind::diagonal) {
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    if (j == k)
                        theta.at(j, k) = add(random_element(d, rng),
                                             scale(rng.uniform(0.75, 1.5),
                                                   unit_element(d)));
        } else {
            theta = random_invertible_operator(d, m, rng);
        }
        if (bounded_below_constant(theta) > 0.1) return theta;
    }
    throw std::runtime_error("could not draw a well-conditioned theta");
}

}  // namespace

Instance suite_instance(std::uint64_t seed, int index) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        const std::uint64_t s =
            sub_seed(seed, static_cast<std::uint64_t>(index) * 64 + attempt);
        Rng shape(sub_seed(s, 0xA11CE));
        GenSpec spec;
        spec.kind = (index % 2 == 0) ? InstanceKind::scalar_controller
                                     : InstanceKind::diagonal;
        spec.n = 2 + static_cast<int>(shape.bits() % 3);   // 2..4
        spec.m = 1 + static_cast<int>(shape.bits() % 3);   // 1..3
        spec.count = 2 + static_cast<int>(shape.bits() % 7);  // 2..8
        Instance inst = generate_instance(spec, s);
        const auto sc = optimal_scalar_bounds(inst.family);
        if (sc.first > 1e-3) return inst;
    }
    throw std::runtime_error("could not draw a certifiable suite instance");
}

SuiteResult run_harmonic_example(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "harmonic_example";
    const CertifyOptions opt = options_of(cfg);

    const int ds[] = {1, 3, 8};
    const double alphas[] = {0.5, 1.0, 2.0, 10.0};
    Worst worst;

    for (int d : ds) {
        // alpha independence: the frame operator of every alpha must agree
        // with the alpha = 1 one entrywise.
        const ModuleOperator s_ref =
            frame_operator(make_harmonic_family(d, 1.0));
        for (double alpha : alphas) {
            ++res.total;
            bool ok = true;
            const OperatorFamily family = make_harmonic_family(d, alpha);
            const AlgebraElement a = harmonic_bound_element(d);

            for (int k = 0; k < 20; ++k) {
                Rng rng(sub_seed(cfg.seed, 7000 + 100 * d + k));
                const ModuleVector x =
                    random_unit_vector(family.descriptor(), 1, rng);
                const AlgebraElement lhs = sum_of_inner_products(family, x);
                const AlgebraElement rhs =
                    multiply(multiply(a, inner_product(x, x)), star(a));
                const double r = max_abs_entry(sub(lhs, rhs));
                worst.fold(r);
                ok = ok && r <= 1e-12;
            }

            const FrameCertificate cert =
                certify_star_bounds(family, {a, a}, opt);
            const double a_expect =
                std::pow(1.0 + 1.0 / static_cast<double>(d), 2.0);
            ok = ok && cert.verdict == Verdict::controlled_star_frame;
            ok = ok && cert.tight;
            ok = ok && std::abs(cert.scalar_lower - a_expect) <= 1e-10;
            ok = ok && std::abs(cert.scalar_upper - 4.0) <= 1e-10;
            ok = ok && cert.star_residual_min >= -1e-10;

            const double sweep = operator_norm(
                sub(frame_operator(family), s_ref));
            worst.fold(sweep);
            ok = ok && sweep <= 1e-12;

            if (ok) ++res.passed;
        }
    }
    res.worst_residual = worst.value;
    return res;
}

SuiteResult run_frame_operator_properties(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "frame_operator_properties";
    res.total = cfg.instances;
    const CertifyOptions opt = options_of(cfg);
    Worst worst;

    for (int i = 0; i < cfg.instances; ++i) {
        const Instance inst = suite_instance(cfg.seed, i);
        const OperatorFamily& fam = inst.family;
        bool ok = true;

        const ModuleOperator s = frame_operator(fam);
        const double s_norm = operator_norm(s);
        const double selfadj = operator_norm(sub(s, adjoint(s)));
        worst.fold(selfadj / std::max(1.0, s_norm));
        ok = ok && selfadj <= 1e-10 * std::max(1.0, s_norm);

        const auto sc = optimal_scalar_bounds(fam);
        ok = ok && sc.first >= -1e-9 * s_norm;  // positivity

        const FrameCertificate cert = certify_instance(inst, opt);
        ok = ok && cert.verdict == Verdict::controlled_star_frame;
        ok = ok && sc.first >= cert.scalar_lower - 1e-9;  // invertibility

        for (int k = 0; k < 5; ++k) {
            Rng rng(sub_seed(cfg.seed, 9000 + 16 * i + k));
            const ModuleVector x =
                random_unit_vector(fam.descriptor(), fam.rank(), rng);
            const AlgebraElement via_sum = sum_of_inner_products(fam, x);
            const AlgebraElement via_op = inner_product(apply(s, x), x);
            const double r = norm(sub(via_sum, via_op));
            worst.fold(r);
            ok = ok && r <= 1e-10 * std::max(1.0, s_norm);
        }
        if (ok) ++res.passed;
    }
    res.worst_residual = worst.value;
    return res;
}

SuiteResult run_norm_characterization(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "norm_characterization";
    res.total = cfg.instances;
    const CertifyOptions opt = options_of(cfg);
    Worst worst;

    for (int i = 0; i < cfg.instances; ++i) {
        const Instance inst = suite_instance(cfg.seed ^ 0x6e6f726dull, i);
        bool ok = inst.bounds.has_value();
        if (ok) {
            const FrameCertificate cert = certify_instance(inst, opt);
            ok = cert.verdict == Verdict::controlled_star_frame;
            const NormCharacterization nc = certify_norm_characterization(
                inst.family, *inst.bounds, opt);
            worst.fold(std::max(0.0, -nc.worst_lower_slack));
            worst.fold(std::max(0.0, -nc.worst_upper_slack));
            ok = ok && nc.held;
        }
        if (ok) ++res.passed;
    }
    res.worst_residual = worst.value;
    return res;
}

SuiteResult run_c2_equivalence(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "c2_equivalence";
    res.total = cfg.instances;
    const CertifyOptions opt = options_of(cfg);

    for (int i = 0; i < cfg.instances; ++i) {
        const Instance inst = suite_instance(cfg.seed ^ 0xc2c2ull, i);
        const auto& ops = inst.family.ops;
        const AlgebraDescriptor d = inst.family.descriptor();
        const int m = inst.family.rank();
        Rng rng(sub_seed(cfg.seed ^ 0xc2c2ull, 5000 + i));

        // Scalar C on full instances, diagonal positive C on diagonal ones.
        ModuleOperator c(d, m);
        if (d.kind == AlgebraKind::diagonal) {
            for (int j = 0; j < m; ++j) {
                AlgebraElement g(d);
                for (int r = 0; r < d.n; ++r) g.at(r, r) = rng.uniform(0.5, 2.0);
                c.at(j, j) = g;
            }
        } else {
            c = scalar_operator(d, m, rng.uniform(0.5, 2.0));
        }

        bool ok = true;
        try {
            OperatorFamily controlled{ops, c, c};
            const auto sc_c = optimal_scalar_bounds(controlled);
            const auto sc_p =
                optimal_scalar_bounds({ops, identity_operator(d, m),
                                       identity_operator(d, m)});
            ok = sc_c.first > cfg.tol && sc_p.first > cfg.tol;
            if (ok) {
                const StarBoundPair pair_c =
                    promote_scalar_to_star(d, sc_c.first, sc_c.second);
                const StarBoundPair pair_p =
                    promote_scalar_to_star(d, sc_p.first, sc_p.second);
                const TransformReport to_plain = c2_equivalence(
                    ops, c, C2Direction::controlled_to_plain, pair_c, opt);
                const TransformReport to_controlled = c2_equivalence(
                    ops, c, C2Direction::plain_to_controlled, pair_p, opt);
                ok = to_plain.held && to_controlled.held;
            }
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok) ++res.passed;
    }
    return res;
}

SuiteResult run_compose_right(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "compose_right";
    res.total = cfg.instances;
    const CertifyOptions opt = options_of(cfg);
    Worst worst;

    for (int i = 0; i < cfg.instances; ++i) {
        const Instance inst = suite_instance(cfg.seed ^ 0x0c31ull, i);
        Rng rng(sub_seed(cfg.seed ^ 0x0c31ull, 4000 + i));
        bool ok = true;
        try {
            const ModuleOperator theta =
                random_commuting_invertible(inst.family, rng);
            const TransformResult right =
                compose_right(inst.family, theta, inst.bounds, opt);
            ok = right.report.held;
            if (right.report.frame_operator_residual)
                worst.fold(*right.report.frame_operator_residual);

            const TransformResult canonical =
                canonical_rescale(inst.family, inst.bounds, opt);
            ok = ok && canonical.report.held;

            // Identity controllers: the rescaled frame operator is S^{-1}.
            OperatorFamily plain = inst.family;
            const AlgebraDescriptor d = inst.family.descriptor();
            plain.C = identity_operator(d, inst.family.rank());
            plain.C_prime = plain.C;
            const auto sc = optimal_scalar_bounds(plain);
            if (sc.first > cfg.tol) {
                const TransformResult canon_id =
                    canonical_rescale(plain, std::nullopt, opt);
                ok = ok && canon_id.report.held &&
                     canon_id.report.canonical_residual.has_value();
                if (canon_id.report.canonical_residual)
                    worst.fold(*canon_id.report.canonical_residual);
            }
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok) ++res.passed;
    }
    res.worst_residual = worst.value;
    return res;
}

SuiteResult run_compose_left(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "compose_left";
    res.total = cfg.instances;
    const CertifyOptions opt = options_of(cfg);
    int report_only_held = 0;
    int report_only_total = 0;

    for (int i = 0; i < cfg.instances; ++i) {
        bool ok = true;
        try {
            // Scalar controllers (even suite indices): assert mode must hold.
            const Instance inst = suite_instance(cfg.seed ^ 0x1e57ull, 2 * i);
            Rng rng(sub_seed(cfg.seed ^ 0x1e57ull, 9000 + i));
            const ModuleOperator theta =
                (i % 4 == 0)
                    ? random_unitary_operator(inst.family.descriptor(),
                                              inst.family.rank(), rng)
                    : random_commuting_invertible(inst.family, rng);
            const TransformResult left = compose_left(
                inst.family, theta, TransformMode::assert_mode, inst.bounds,
                opt);
            ok = left.report.held;

            // General controllers: report_only, outcome recorded.
            const Instance gen_inst =
                suite_instance(cfg.seed ^ 0x1e58ull, 2 * i + 1);
            Rng rng2(sub_seed(cfg.seed ^ 0x1e58ull, 9500 + i));
            const ModuleOperator theta2 =
                random_commuting_invertible(gen_inst.family, rng2);
            const TransformResult rep = compose_left(
                gen_inst.family, theta2, TransformMode::report_only,
                gen_inst.bounds, opt);
            ++report_only_total;
            if (rep.report.held) ++report_only_held;
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok) ++res.passed;
    }
    res.note = "report_only held " + std::to_string(report_only_held) + "/" +
               std::to_string(report_only_total);
    return res;
}

SuiteResult run_synthesis_bound(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "synthesis_bound";
    res.total = cfg.instances;
    Worst worst;

    for (int i = 0; i < cfg.instances; ++i) {
        const Instance inst = suite_instance(cfg.seed ^ 0x5b0ull, i);
        bool ok = inst.bounds.has_value();
        if (ok) {
            const OperatorFamily& fam = inst.family;
            ok = synthesis_bound_check(fam, *inst.bounds);
            worst.fold(std::max(
                0.0, synthesis_operator_norm(fam) - norm(inst.bounds->B)));

            // Adjointness of synthesis and analysis on random data.
            Rng rng(sub_seed(cfg.seed ^ 0x5b0ull, 3000 + i));
            CoefficientSequence coeffs;
            for (int j = 0; j < fam.size(); ++j)
                coeffs.entries.push_back(
                    random_unit_vector(fam.descriptor(), fam.rank(), rng));
            const ModuleVector x =
                random_unit_vector(fam.descriptor(), fam.rank(), rng);
            const AlgebraElement lhs = inner_product(synthesis(fam, coeffs), x);
            const AlgebraElement rhs =
                seq_inner_product(coeffs, analysis(fam, x));
            const double r = norm(sub(lhs, rhs));
            worst.fold(r);
            ok = ok && r <= 1e-10 * (1.0 + synthesis_operator_norm(fam));
        }
        if (ok) ++res.passed;
    }
    res.worst_residual = worst.value;
    return res;
}

SuiteResult run_transport(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "homomorphism_transport";
    res.total = cfg.instances;
    const CertifyOptions opt = options_of(cfg);
    Worst worst;

    // Scalar-entry grids commute with every unitary by construction; retry
    // sub-seeds until the drawn family has a healthy lower bound.
    auto draw_family = [&](int index) {
        for (int attempt = 0; attempt < 32; ++attempt) {
            Rng rng(sub_seed(cfg.seed ^ 0x7a7ull,
                             static_cast<std::uint64_t>(index) * 64 + attempt));
            const AlgebraDescriptor d{AlgebraKind::full,
                                      2 + static_cast<int>(rng.bits() % 3)};
            const int m = 1 + static_cast<int>(rng.bits() % 3);
            const int count = 2 + static_cast<int>(rng.bits() % 5);

            OperatorFamily fam;
            fam.C = scalar_operator(d, m, rng.uniform(0.5, 2.0));
            fam.C_prime = scalar_operator(d, m, rng.uniform(0.5, 2.0));
            for (int t = 0; t < count; ++t) {
                ModuleOperator op(d, m);
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k)
                        op.at(j, k) = scale(rng.cnormal() / std::sqrt(1.0 * m),
                                            unit_element(d));
                fam.ops.push_back(op);
            }
            if (optimal_scalar_bounds(fam).first > 1e-3)
                return std::pair<OperatorFamily, AlgebraElement>{
                    fam, random_unitary(fam.descriptor(), rng)};
        }
        throw std::runtime_error("could not draw a transport family");
    };

    for (int i = 0; i < cfg.instances; ++i) {
        bool ok = true;
        try {
            const auto [fam, u] = draw_family(i);
            const auto sc = optimal_scalar_bounds(fam);
            const StarBoundPair bounds = promote_scalar_to_star(
                fam.descriptor(), sc.first, sc.second);
            const TransportReport rep =
                homomorphism_transport(fam, u, bounds, opt);
            worst.fold(rep.defining_relation_residual);
            worst.fold(rep.intertwining_residual);
            ok = rep.held;

            // Functoriality: conjugating back returns the family.
            const TransportReport back = homomorphism_transport(
                rep.transported, star(u), rep.transported_bounds, opt);
            double round_trip = 0.0;
            for (int t = 0; t < fam.size(); ++t)
                round_trip = std::max(
                    round_trip, operator_norm(sub(back.transported.ops[t],
                                                  fam.ops[t])));
            worst.fold(round_trip);
            ok = ok && round_trip <= 1e-11;
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok) ++res.passed;
    }
    res.worst_residual = worst.value;
    return res;
}

SuiteResult run_reconstruction(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "reconstruction";
    res.total = cfg.instances;
    Worst worst;

    for (int i = 0; i < cfg.instances; ++i) {
        const Instance inst = suite_instance(cfg.seed ^ 0x4ec0ull, i);
        const OperatorFamily& fam = inst.family;
        bool ok = true;
        const ModuleOperator s = frame_operator(fam);
        const ModuleOperator sinv = operator_inverse(s);
        for (int k = 0; k < 100; ++k) {
            Rng rng(sub_seed(cfg.seed ^ 0x4ec0ull, 1000 + 128 * i + k));
            const ModuleVector x =
                random_unit_vector(fam.descriptor(), fam.rank(), rng);
            const ModuleVector back = apply(sinv, apply(s, x));
            const double r = module_norm(sub(back, x));
            worst.fold(r);
            ok = ok && r <= 1e-8;
        }
        if (ok) ++res.passed;
    }
    res.worst_residual = worst.value;
    return res;
}

SuiteResult run_rayleigh_envelope(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "rayleigh_envelope";
    res.total = cfg.instances;
    Worst worst;

    for (int i = 0; i < cfg.instances; ++i) {
        const Instance inst = suite_instance(cfg.seed ^ 0x4a1ull, i);
        const auto sc = optimal_scalar_bounds(inst.family);
        const auto env = sampled_rayleigh_envelope(
            inst.family, 1000, sub_seed(cfg.seed ^ 0x4a1ull, 700 + i));
        bool ok = env.first >= sc.first - 1e-9;   // spectral value envelops
        ok = ok && env.second <= sc.second + 1e-9;
        ok = ok && env.first <= sc.first + 1e-2;  // samples reach the extremes
        ok = ok && env.second >= sc.second - 1e-2;
        worst.fold(std::max(0.0, sc.first - env.first));
        worst.fold(std::max(0.0, env.second - sc.second));
        if (ok) ++res.passed;
    }
    res.worst_residual = worst.value;
    return res;
}

SuiteResult run_star_to_controlled(const SuiteConfig& cfg) {
    SuiteResult res;
    res.name = "star_to_controlled";
    res.total = cfg.instances;
    const CertifyOptions opt = options_of(cfg);
    int held = 0;

    for (int i = 0; i < cfg.instances; ++i) {
        const Instance inst = suite_instance(cfg.seed ^ 0x52a2ull, i);
        const AlgebraDescriptor d = inst.family.descriptor();
        const int m = inst.family.rank();
        const auto id = identity_operator(d, m);
        bool ok = true;
        try {
            const auto sc_p = optimal_scalar_bounds({inst.family.ops, id, id});
            if (sc_p.first <= 1e-3) {
                ok = true;  // unlucky plain spectrum, skip
            } else {
                const auto plain_pair =
                    promote_scalar_to_star(d, sc_p.first, sc_p.second);
                const TransformReport rep = star_frame_to_controlled(
                    inst.family.ops, inst.family.C, inst.family.C_prime,
                    plain_pair, opt);
                ok = rep.certificate.verdict == Verdict::controlled_star_frame;
                if (rep.held) ++held;
            }
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok) ++res.passed;
    }
    res.note = "norm envelope held " + std::to_string(held) + "/" +
               std::to_string(cfg.instances);
    return res;
}

std::vector<SuiteResult> run_all_suites(const SuiteConfig& cfg) {
    return {run_harmonic_example(cfg),
            run_frame_operator_properties(cfg),
            run_norm_characterization(cfg),
            run_c2_equivalence(cfg),
            run_compose_right(cfg),
            run_compose_left(cfg),
            run_synthesis_bound(cfg),
            run_transport(cfg),
            run_reconstruction(cfg),
            run_rayleigh_envelope(cfg),
            run_star_to_controlled(cfg)};
}

}  // namespace opframe
