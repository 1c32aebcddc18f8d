#include "opframe/frames.hpp"

#include <algorithm>
#include <cmath>

#include "opframe/random_vectors.hpp"

namespace opframe {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::controlled_star_frame: return "controlled_star_frame";
        case Verdict::bessel_only: return "bessel_only";
        case Verdict::not_frame: return "not_frame";
    }
    return "not_frame";
}

void validate_family(const OperatorFamily& family) {
    if (family.ops.empty())
        throw std::invalid_argument("operator family is empty");
    const AlgebraDescriptor d = family.C.desc;
    const int m = family.C.rank;
    if (!(family.C_prime.desc == d) || family.C_prime.rank != m)
        throw std::invalid_argument("controller shapes differ");
    for (const auto& t : family.ops)
        if (!(t.desc == d) || t.rank != m)
            throw std::invalid_argument("family operator shape mismatch");
}

namespace {

ModuleOperator gram_term(const ModuleOperator& t) {
    return compose(adjoint(t), t);
}

ModuleOperator frame_operator_unchecked(const OperatorFamily& family) {
    const AlgebraDescriptor d = family.descriptor();
    const int m = family.rank();
    ModuleOperator s = zero_operator(d, m);
    for (const auto& t : family.ops) {
        // C' T* T C, built as C' applied last.
        const ModuleOperator term =
            compose(family.C_prime, compose(adjoint(t), compose(t, family.C)));
        s = add(s, term);
    }
    return s;
}

std::vector<cxd> herm_part(const std::vector<cxd>& m, int dim) {
    std::vector<cxd> h(m.size());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            h[static_cast<std::size_t>(i) * dim + j] =
                0.5 * (m[static_cast<std::size_t>(i) * dim + j] +
                       std::conj(m[static_cast<std::size_t>(j) * dim + i]));
    return h;
}

kern::HermEig frame_spectrum(const ModuleOperator& s) {
    const auto b = block_realization(s);
    return kern::herm_eig(herm_part(b.m, b.dim), b.dim);
}

void require_invertible_bound(const AlgebraElement& a, const char* which) {
    if (smallest_singular_value(a) < 1e-12 * std::max(1.0, norm(a)))
        throw std::invalid_argument(std::string("star bound ") + which +
                                    " is singular to tolerance");
}

// Probe vector whose Rayleigh quotient equals the eigenvalue the
// realization eigenvector v belongs to. Diagonal kinds restrict components
// to the dominant algebra slot so the probe stays in the algebra.
ModuleVector probe_vector(AlgebraDescriptor d, int rank,
                          const std::vector<cxd>& v) {
    const int n = d.n;
    std::vector<std::vector<cxd>> slices(
        n, std::vector<cxd>(static_cast<std::size_t>(rank) * n, cxd{0.0, 0.0}));
    int target = 0;
    if (d.kind == AlgebraKind::diagonal) {
        double best = -1.0;
        for (int s = 0; s < n; ++s) {
            double w = 0.0;
            for (int j = 0; j < rank; ++j) w += std::norm(v[j * n + s]);
            if (w > best) {
                best = w;
                target = s;
            }
        }
    }
    slices[target] = v;
    return vector_from_slices(d, rank, slices);
}

}  // namespace

double commutation_residual(const OperatorFamily& family) {
    validate_family(family);
    double worst = commutator_norm(family.C, family.C_prime);
    for (const auto& t : family.ops) {
        const ModuleOperator g = gram_term(t);
        worst = std::max(worst, commutator_norm(family.C, g));
        worst = std::max(worst, commutator_norm(family.C_prime, g));
    }
    return worst;
}

double commutation_gate(const OperatorFamily& family) {
    double top = 0.0;
    for (const auto& t : family.ops) {
        const double nt = operator_norm(t);
        top = std::max(top, nt * nt);
    }
    return 1e-8 *
           (1.0 + operator_norm(family.C) * operator_norm(family.C_prime) * top);
}

ModuleOperator frame_operator(const OperatorFamily& family) {
    validate_family(family);
    const double resid = commutation_residual(family);
    if (resid > commutation_gate(family))
        throw gate_error("commutation gate failed: residual " +
                         std::to_string(resid));
    return frame_operator_unchecked(family);
}

AlgebraElement sum_of_inner_products(const OperatorFamily& family,
                                     const ModuleVector& x) {
    const ModuleVector cx = apply(family.C, x);
    const ModuleVector cpx = apply(family.C_prime, x);
    AlgebraElement acc(family.descriptor());
    for (const auto& t : family.ops)
        acc = add(acc, inner_product(apply(t, cx), apply(t, cpx)));
    return acc;
}

ModuleVector synthesis(const OperatorFamily& family,
                       const CoefficientSequence& coeffs) {
    if (coeffs.size() != family.size())
        throw std::invalid_argument("synthesis: coefficient count mismatch");
    const ModuleOperator root =
        operator_sqrt(compose(family.C, family.C_prime));
    ModuleVector acc = zero_vector(family.descriptor(), family.rank());
    for (int i = 0; i < family.size(); ++i)
        acc = add(acc, apply(root, apply(adjoint(family.ops[i]),
                                         coeffs.entries[i])));
    return acc;
}

CoefficientSequence analysis(const OperatorFamily& family,
                             const ModuleVector& x) {
    const ModuleOperator root =
        operator_sqrt(compose(family.C_prime, family.C));
    const ModuleVector rx = apply(root, x);
    CoefficientSequence out;
    out.entries.reserve(family.ops.size());
    for (const auto& t : family.ops) out.entries.push_back(apply(t, rx));
    return out;
}

std::pair<double, double> optimal_scalar_bounds(const OperatorFamily& family) {
    const auto eig = frame_spectrum(frame_operator(family));
    return {eig.values.front(), eig.values.back()};
}

FrameCertificate certify_star_bounds(const OperatorFamily& family,
                                     const StarBoundPair& bounds,
                                     const CertifyOptions& opt) {
    validate_family(family);
    if (!(bounds.A.desc == family.descriptor()) ||
        !(bounds.B.desc == family.descriptor()))
        throw std::invalid_argument("star bounds live in the wrong algebra");
    require_invertible_bound(bounds.A, "A");
    require_invertible_bound(bounds.B, "B");
    if (!is_gl_plus(family.C, opt.tol) || !is_gl_plus(family.C_prime, opt.tol))
        throw gate_error("controllers are not in GL+");

    const double resid = commutation_residual(family);
    if (resid > commutation_gate(family))
        throw gate_error("commutation gate failed: residual " +
                         std::to_string(resid));

    const ModuleOperator s = frame_operator_unchecked(family);
    const auto eig = frame_spectrum(s);
    const double a_opt = eig.values.front();
    const double b_opt = eig.values.back();

    FrameCertificate cert;
    cert.commutation_residual = resid;
    cert.tol = opt.tol;
    cert.samples = opt.samples;
    cert.seed = opt.seed;
    cert.scalar_lower = a_opt;
    cert.scalar_upper = b_opt;

    bool lower_ok = true, upper_ok = true;

    const auto alpha = as_scalar_multiple(bounds.A);
    const auto beta = as_scalar_multiple(bounds.B);
    if (alpha && beta) {
        // Central bounds collapse the sandwich to |alpha|^2 <x,x>, so the
        // whole condition is two exact PSD certificates on the spectrum.
        const double lo = std::norm(*alpha);
        const double hi = std::norm(*beta);
        const double gauge = opt.tol * std::max(1.0, b_opt);
        lower_ok = a_opt >= lo - gauge;
        upper_ok = b_opt <= hi + gauge;
        cert.check_residuals = {a_opt - lo, hi - b_opt};
        cert.star_residual_min = std::min(cert.check_residuals[0],
                                          cert.check_residuals[1]);
    } else {
        const AlgebraDescriptor d = family.descriptor();
        const int m = family.rank();
        const int total = opt.samples;
        std::vector<double> low_margin(total + m), up_margin(total + m);
        std::vector<char> low_ok(total + m), up_ok(total + m);

        auto run_check = [&](const ModuleVector& x, int slot) {
            const AlgebraElement g = sum_of_inner_products(family, x);
            const AlgebraElement e = inner_product(x, x);
            const AlgebraElement dl =
                sub(g, multiply(multiply(bounds.A, e), star(bounds.A)));
            const AlgebraElement du =
                sub(multiply(multiply(bounds.B, e), star(bounds.B)), g);
            const auto cl = positivity_check(dl, opt.tol);
            const auto cu = positivity_check(du, opt.tol);
            low_ok[slot] = cl.first;
            low_margin[slot] = cl.second;
            up_ok[slot] = cu.first;
            up_margin[slot] = cu.second;
        };

#pragma omp parallel for schedule(static) if (opt.parallel)
        for (int k = 0; k < total; ++k) {
            Rng rng(sub_seed(opt.seed, static_cast<std::uint64_t>(k)));
            run_check(random_unit_vector(d, m, rng), k);
        }
        for (int b = 0; b < m; ++b) run_check(basis_vector(d, m, b), total + b);

        cert.star_residual_min = low_margin[0];
        cert.check_residuals.reserve(2 * (total + m));
        for (int k = 0; k < total + m; ++k) {
            lower_ok = lower_ok && low_ok[k];
            upper_ok = upper_ok && up_ok[k];
            cert.star_residual_min =
                std::min({cert.star_residual_min, low_margin[k], up_margin[k]});
            cert.check_residuals.push_back(low_margin[k]);
            cert.check_residuals.push_back(up_margin[k]);
        }
    }

    if (lower_ok && upper_ok && a_opt > opt.tol)
        cert.verdict = Verdict::controlled_star_frame;
    else if (upper_ok)
        cert.verdict = Verdict::bessel_only;
    else
        cert.verdict = Verdict::not_frame;

    const bool scalar_tight = (b_opt - a_opt) <= 1e-8 * b_opt;
    const bool star_tight =
        cert.verdict == Verdict::controlled_star_frame &&
        frob(sub(bounds.A, bounds.B)) <= 1e-10 * std::max(1.0, frob(bounds.B));
    cert.tight = scalar_tight || star_tight;
    cert.parseval = scalar_tight && std::abs(a_opt - 1.0) <= 1e-8;
    return cert;
}

FrameCertificate certify_instance(const Instance& inst,
                                  const CertifyOptions& opt) {
    if (inst.bounds) return certify_star_bounds(inst.family, *inst.bounds, opt);

    validate_family(inst.family);
    if (!is_gl_plus(inst.family.C, opt.tol) ||
        !is_gl_plus(inst.family.C_prime, opt.tol))
        throw gate_error("controllers are not in GL+");
    const double resid = commutation_residual(inst.family);
    if (resid > commutation_gate(inst.family))
        throw gate_error("commutation gate failed: residual " +
                         std::to_string(resid));

    const auto eig = frame_spectrum(frame_operator_unchecked(inst.family));
    const double a_opt = eig.values.front();
    const double b_opt = eig.values.back();

    if (a_opt > opt.tol) {
        const StarBoundPair promoted =
            promote_scalar_to_star(inst.family.descriptor(), a_opt, b_opt);
        return certify_star_bounds(inst.family, promoted, opt);
    }

    FrameCertificate cert;
    cert.verdict = Verdict::not_frame;
    cert.scalar_lower = a_opt;
    cert.scalar_upper = b_opt;
    cert.star_residual_min = a_opt;
    cert.commutation_residual = resid;
    cert.tol = opt.tol;
    cert.samples = opt.samples;
    cert.seed = opt.seed;
    cert.check_residuals = {a_opt};
    cert.tight = false;
    cert.parseval = false;
    return cert;
}

NormCharacterization certify_norm_characterization(
    const OperatorFamily& family, const StarBoundPair& bounds,
    const CertifyOptions& opt) {
    validate_family(family);
    const double lower_coeff = std::pow(norm(inverse(bounds.A)), -2.0);
    const double upper_coeff = std::pow(norm(bounds.B), 2.0);

    NormCharacterization out;
    out.held = true;
    bool first = true;
    const AlgebraDescriptor d = family.descriptor();
    for (int k = 0; k < opt.samples; ++k) {
        Rng rng(sub_seed(opt.seed, static_cast<std::uint64_t>(k)));
        const ModuleVector x = random_unit_vector(d, family.rank(), rng);
        const double mid = norm(sum_of_inner_products(family, x));
        const double xx = norm(inner_product(x, x));
        const double lo_slack = mid - lower_coeff * xx;
        const double up_slack = upper_coeff * xx - mid;
        if (first || lo_slack < out.worst_lower_slack)
            out.worst_lower_slack = lo_slack;
        if (first || up_slack < out.worst_upper_slack)
            out.worst_upper_slack = up_slack;
        first = false;
        if (lo_slack < -1e-9 || up_slack < -1e-9) out.held = false;
    }
    return out;
}

StarBoundPair promote_scalar_to_star(AlgebraDescriptor d, double lower,
                                     double upper) {
    if (!(lower > 0.0) || !(lower <= upper))
        throw std::invalid_argument("promote_scalar_to_star: need 0 < A <= B");
    return {scale(std::sqrt(lower), unit_element(d)),
            scale(std::sqrt(upper), unit_element(d))};
}

double synthesis_operator_norm(const OperatorFamily& family) {
    const ModuleOperator root =
        operator_sqrt(compose(family.C, family.C_prime));
    const int dim = family.C.block_dim();
    std::vector<cxd> gram(static_cast<std::size_t>(dim) * dim, cxd{0.0, 0.0});
    for (const auto& t : family.ops) {
        const auto b = block_realization(compose(root, adjoint(t)));
        const auto prod = kern::matmul(b.m, kern::dagger(b.m, dim, dim), dim,
                                       dim, dim);
        for (std::size_t i = 0; i < gram.size(); ++i) gram[i] += prod[i];
    }
    const auto eig = kern::herm_eig(herm_part(gram, dim), dim);
    return std::sqrt(std::max(0.0, eig.values.back()));
}

bool synthesis_bound_check(const OperatorFamily& family,
                           const StarBoundPair& bounds) {
    return synthesis_operator_norm(family) <= norm(bounds.B) + 1e-9;
}

ModuleVector reconstruct(const OperatorFamily& family, const ModuleVector& x) {
    const ModuleOperator s = frame_operator(family);
    const ModuleOperator sinv = operator_inverse(s);
    return apply(sinv, apply(s, x));
}

std::pair<double, double> sampled_rayleigh_envelope(const OperatorFamily& family,
                                                    int samples,
                                                    std::uint64_t seed) {
    const ModuleOperator s = frame_operator(family);
    const auto eig = frame_spectrum(s);
    const AlgebraDescriptor d = family.descriptor();
    const int m = family.rank();
    const int dim = m * d.n;

    auto quotient = [&](const ModuleVector& x) {
        return real_trace(sum_of_inner_products(family, x)) /
               real_trace(inner_product(x, x));
    };

    double lo = 0.0, hi = 0.0;
    bool first = true;
    auto fold = [&](double q) {
        if (first) {
            lo = hi = q;
            first = false;
        } else {
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
    };

    for (int k = 0; k < samples; ++k) {
        Rng rng(sub_seed(seed, static_cast<std::uint64_t>(k)));
        fold(quotient(random_unit_vector(d, m, rng)));
    }

    // Extremal probes: eigenvector columns 0 and dim-1 of the realization.
    for (int which : {0, dim - 1}) {
        std::vector<cxd> v(dim);
        for (int i = 0; i < dim; ++i)
            v[i] = eig.vectors[static_cast<std::size_t>(i) * dim + which];
        fold(quotient(probe_vector(d, m, v)));
    }
    return {lo, hi};
}

OperatorFamily make_harmonic_family(int d, double alpha) {
    if (d < 1) throw std::invalid_argument("harmonic family: d must be >= 1");
    if (alpha == 0.0)
        throw std::invalid_argument("harmonic family: alpha must be nonzero");
    const AlgebraDescriptor desc{AlgebraKind::diagonal, d};
    OperatorFamily family;
    family.C = scalar_operator(desc, 1, alpha);
    family.C_prime = scalar_operator(desc, 1, 1.0 / alpha);
    family.ops.reserve(d);
    for (int j = 0; j < d; ++j) {
        ModuleOperator t(desc, 1);
        AlgebraElement g(desc);
        g.at(j, j) = 1.0 + 1.0 / static_cast<double>(j + 1);
        t.at(0, 0) = g;
        family.ops.push_back(t);
    }
    return family;
}

AlgebraElement harmonic_bound_element(int d) {
    const AlgebraDescriptor desc{AlgebraKind::diagonal, d};
    AlgebraElement a(desc);
    for (int j = 0; j < d; ++j)
        a.at(j, j) = 1.0 + 1.0 / static_cast<double>(j + 1);
    return a;
}

}  // namespace opframe
