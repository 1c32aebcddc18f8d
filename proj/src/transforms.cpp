#include "opframe/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "opframe/random_vectors.hpp"

namespace opframe {

std::string mode_name(TransformMode m) {
    return m == TransformMode::assert_mode ? "assert" : "report_only";
}

namespace {

double envelope_slack(double predicted_upper) {
    return 1e-9 * std::max(1.0, predicted_upper);
}

void require_commutes_with_controllers(const OperatorFamily& family,
                                       const ModuleOperator& theta) {
    const double gate =
        1e-8 * (1.0 + operator_norm(theta) *
                          std::max(operator_norm(family.C),
                                   operator_norm(family.C_prime)));
    if (commutator_norm(theta, family.C) > gate ||
        commutator_norm(theta, family.C_prime) > gate)
        throw gate_error("theta does not commute with the controllers");
}

FrameCertificate certify_maybe(const OperatorFamily& family,
                               const std::optional<StarBoundPair>& bounds,
                               const CertifyOptions& opt) {
    Instance inst{family, bounds};
    return certify_instance(inst, opt);
}

}  // namespace

TransformResult compose_right(const OperatorFamily& family,
                              const ModuleOperator& theta,
                              const std::optional<StarBoundPair>& bounds,
                              const CertifyOptions& opt) {
    validate_family(family);
    const auto envelope = gram_envelope(theta, opt.tol);  // throws unless injective
    require_commutes_with_controllers(family, theta);

    const ModuleOperator s = frame_operator(family);
    const auto old_bounds = optimal_scalar_bounds(family);

    TransformResult out;
    out.family.C = family.C;
    out.family.C_prime = family.C_prime;
    out.family.ops.reserve(family.ops.size());
    for (const auto& t : family.ops)
        out.family.ops.push_back(compose(t, theta));

    const double c_lo = envelope.first;   // sigma_min^2
    const double c_hi = envelope.second;  // |theta|^2

    TransformReport& rep = out.report;
    rep.mode = TransformMode::assert_mode;
    rep.predicted_scalar_lower = c_lo * old_bounds.first;
    rep.predicted_scalar_upper = c_hi * old_bounds.second;
    if (bounds) {
        rep.predicted_lower_element = scale(std::sqrt(c_lo), bounds->A);
        rep.predicted_upper_element = scale(std::sqrt(c_hi), bounds->B);
    }

    const ModuleOperator predicted_s =
        compose(adjoint(theta), compose(s, theta));
    const ModuleOperator new_s = frame_operator(out.family);
    rep.frame_operator_residual = operator_norm(sub(new_s, predicted_s));

    std::optional<StarBoundPair> new_bounds;
    if (bounds)
        new_bounds = StarBoundPair{*rep.predicted_lower_element,
                                   *rep.predicted_upper_element};
    rep.certificate = certify_maybe(out.family, new_bounds, opt);

    const double slack = envelope_slack(rep.predicted_scalar_upper);
    const bool envelope_ok =
        rep.certificate.scalar_lower >= rep.predicted_scalar_lower - slack &&
        rep.certificate.scalar_upper <= rep.predicted_scalar_upper + slack;
    const bool residual_ok =
        *rep.frame_operator_residual <= 1e-9 * std::max(1.0, operator_norm(s));
    const bool verdict_ok =
        rep.certificate.verdict == Verdict::controlled_star_frame;
    rep.held = envelope_ok && residual_ok && verdict_ok;
    return out;
}

TransformResult canonical_rescale(const OperatorFamily& family,
                                  const std::optional<StarBoundPair>& bounds,
                                  const CertifyOptions& opt) {
    const ModuleOperator s = frame_operator(family);
    const auto old_bounds = optimal_scalar_bounds(family);
    if (old_bounds.first <= opt.tol)
        throw gate_error("canonical rescale: frame operator singular");
    const ModuleOperator sinv = operator_inverse(s);

    TransformResult out = compose_right(family, sinv, bounds, opt);

    const auto c_id = as_scalar_operator(family.C);
    const auto cp_id = as_scalar_operator(family.C_prime);
    if (c_id && cp_id && std::abs(*c_id - 1.0) <= 1e-12 &&
        std::abs(*cp_id - 1.0) <= 1e-12) {
        const ModuleOperator new_s = frame_operator(out.family);
        const double resid = operator_norm(sub(new_s, sinv));
        out.report.canonical_residual = resid;
        out.report.held =
            out.report.held &&
            resid <= 1e-8 * std::max(1.0, operator_norm(sinv));
    }
    return out;
}

TransformResult compose_left(const OperatorFamily& family,
                             const ModuleOperator& theta, TransformMode mode,
                             const std::optional<StarBoundPair>& bounds,
                             const CertifyOptions& opt) {
    validate_family(family);
    const double sigma = bounded_below_constant(theta);
    const double top = operator_norm(theta);
    if (sigma <= opt.tol * std::max(1.0, top))
        throw std::invalid_argument("compose_left: theta is not surjective");

    const bool scalar_controllers =
        as_scalar_operator(family.C).has_value() &&
        as_scalar_operator(family.C_prime).has_value();
    if (mode == TransformMode::assert_mode && !scalar_controllers)
        throw std::invalid_argument(
            "compose_left: assert mode needs scalar controllers");

    const auto old_bounds = optimal_scalar_bounds(family);

    TransformResult out;
    out.family.C = family.C;
    out.family.C_prime = family.C_prime;
    out.family.ops.reserve(family.ops.size());
    for (const auto& t : family.ops)
        out.family.ops.push_back(compose(theta, t));

    TransformReport& rep = out.report;
    rep.mode = mode;
    const double c_lo = sigma * sigma;  // |(theta theta*)^{-1}|^{-1}
    const double c_hi = top * top;
    rep.predicted_scalar_lower = c_lo * old_bounds.first;
    rep.predicted_scalar_upper = c_hi * old_bounds.second;
    if (bounds) {
        rep.predicted_lower_element = scale(sigma, bounds->A);
        rep.predicted_upper_element = scale(top, bounds->B);
    }

    std::optional<StarBoundPair> new_bounds;
    if (bounds)
        new_bounds = StarBoundPair{*rep.predicted_lower_element,
                                   *rep.predicted_upper_element};

    bool envelope_ok = false;
    try {
        rep.certificate = certify_maybe(out.family, new_bounds, opt);
        const double slack = envelope_slack(rep.predicted_scalar_upper);
        envelope_ok =
            rep.certificate.scalar_lower >= rep.predicted_scalar_lower - slack &&
            rep.certificate.scalar_upper <= rep.predicted_scalar_upper + slack &&
            (!new_bounds ||
             rep.certificate.verdict == Verdict::controlled_star_frame);
    } catch (const gate_error&) {
        // The transformed family can fall out of the commutation assumption
        // under general controllers; in report mode that is an outcome, not
        // an error.
        if (mode == TransformMode::assert_mode) throw;
        envelope_ok = false;
    }
    rep.held = envelope_ok;
    return out;
}

TransformReport c2_equivalence(const std::vector<ModuleOperator>& ops,
                               const ModuleOperator& C, C2Direction direction,
                               const StarBoundPair& input_bounds,
                               const CertifyOptions& opt) {
    if (ops.empty()) throw std::invalid_argument("c2_equivalence: empty family");
    if (!is_gl_plus(C, opt.tol))
        throw std::invalid_argument("c2_equivalence: C is not in GL+");

    const AlgebraDescriptor d = C.desc;
    const int m = C.rank;
    const ModuleOperator id = identity_operator(d, m);

    const double c_norm = operator_norm(C);
    const double c_inv_norm = 1.0 / bounded_below_constant(C);

    OperatorFamily target;
    target.ops = ops;
    StarBoundPair derived{input_bounds.A, input_bounds.B};
    if (direction == C2Direction::controlled_to_plain) {
        target.C = id;
        target.C_prime = id;
        // Lower A |C|^{-1} follows the stated conversion; the upper needs
        // |C^{-1}| (not |C|^{-1}) to stay an upper bound for non-scalar C.
        derived.A = scale(1.0 / c_norm, input_bounds.A);
        derived.B = scale(c_inv_norm, input_bounds.B);
    } else {
        target.C = C;
        target.C_prime = C;
        derived.A = scale(1.0 / c_inv_norm, input_bounds.A);
        derived.B = scale(c_norm, input_bounds.B);
    }

    TransformReport rep;
    rep.mode = TransformMode::assert_mode;
    rep.predicted_lower_element = derived.A;
    rep.predicted_upper_element = derived.B;
    rep.certificate = certify_star_bounds(target, derived, opt);
    const auto target_bounds = optimal_scalar_bounds(target);
    rep.predicted_scalar_lower = target_bounds.first;
    rep.predicted_scalar_upper = target_bounds.second;
    rep.held = rep.certificate.verdict == Verdict::controlled_star_frame;
    return rep;
}

TransportReport homomorphism_transport(const OperatorFamily& family,
                                       const AlgebraElement& U,
                                       const StarBoundPair& bounds,
                                       const CertifyOptions& opt) {
    validate_family(family);
    const AlgebraDescriptor d = family.descriptor();
    if (d.kind != AlgebraKind::full)
        throw std::invalid_argument("transport: full matrix algebra required");
    if (!(U.desc == d))
        throw std::invalid_argument("transport: U lives in the wrong algebra");

    const AlgebraElement uu = multiply(U, star(U));
    if (frob(sub(uu, unit_element(d))) > 1e-10 * std::sqrt(1.0 * d.n))
        throw std::invalid_argument("transport: U is not unitary");

    auto phi = [&](const AlgebraElement& a) {
        return multiply(multiply(U, a), star(U));
    };
    auto theta = [&](const ModuleVector& x) {
        ModuleVector out(x.desc, x.rank());
        for (int k = 0; k < x.rank(); ++k) out.components[k] = phi(x.components[k]);
        return out;
    };

    TransportReport rep;

    // Gate: every grid entry of the family and controllers must commute
    // with U, otherwise theta does not intertwine the operators.
    double comm = 0.0;
    auto fold_comm = [&](const ModuleOperator& t) {
        for (const auto& g : t.grid) {
            const AlgebraElement c = sub(multiply(U, g), multiply(g, U));
            comm = std::max(comm, frob(c));
        }
    };
    for (const auto& t : family.ops) fold_comm(t);
    fold_comm(family.C);
    fold_comm(family.C_prime);
    rep.commutation_residual = comm;
    double scale_g = 1.0;
    for (const auto& t : family.ops)
        for (const auto& g : t.grid) scale_g = std::max(scale_g, frob(g));
    if (comm > 1e-8 * scale_g)
        throw gate_error("transport: family does not commute with U");

    // Conjugate the whole instance.
    auto conjugate_op = [&](const ModuleOperator& t) {
        ModuleOperator out(t.desc, t.rank);
        for (std::size_t i = 0; i < t.grid.size(); ++i)
            out.grid[i] = phi(t.grid[i]);
        return out;
    };
    rep.transported.C = conjugate_op(family.C);
    rep.transported.C_prime = conjugate_op(family.C_prime);
    rep.transported.ops.reserve(family.ops.size());
    for (const auto& t : family.ops)
        rep.transported.ops.push_back(conjugate_op(t));
    rep.transported_bounds = {phi(bounds.A), phi(bounds.B)};

    // Defining relation <theta x, theta y> = phi(<x,y>) on random pairs.
    const int pairs = std::max(8, opt.samples / 8);
    double defect = 0.0;
    for (int k = 0; k < pairs; ++k) {
        Rng rng(sub_seed(opt.seed ^ 0x7472616e73ull, k));
        const ModuleVector x = random_unit_vector(d, family.rank(), rng);
        const ModuleVector y = random_unit_vector(d, family.rank(), rng);
        defect = std::max(defect, frob(sub(inner_product(theta(x), theta(y)),
                                           phi(inner_product(x, y)))));
    }
    rep.defining_relation_residual = defect;

    rep.certificate =
        certify_star_bounds(rep.transported, rep.transported_bounds, opt);

    // Frame operator intertwining <S_B theta x, theta y> = phi(<S_A x, y>).
    const ModuleOperator s_a = frame_operator(family);
    const ModuleOperator s_b = frame_operator(rep.transported);
    double twine = 0.0;
    for (int k = 0; k < pairs; ++k) {
        Rng rng(sub_seed(opt.seed ^ 0x74776e65ull, k));
        const ModuleVector x = random_unit_vector(d, family.rank(), rng);
        const ModuleVector y = random_unit_vector(d, family.rank(), rng);
        const AlgebraElement lhs =
            inner_product(apply(s_b, theta(x)), theta(y));
        const AlgebraElement rhs = phi(inner_product(apply(s_a, x), y));
        twine = std::max(twine, frob(sub(lhs, rhs)));
    }
    rep.intertwining_residual = twine;

    rep.held = rep.defining_relation_residual <= 1e-10 &&
               rep.intertwining_residual <=
                   1e-9 * std::max(1.0, operator_norm(s_a)) &&
               rep.certificate.verdict == Verdict::controlled_star_frame;
    return rep;
}

TransformReport star_frame_to_controlled(const std::vector<ModuleOperator>& ops,
                                         const ModuleOperator& C,
                                         const ModuleOperator& C_prime,
                                         const StarBoundPair& plain_bounds,
                                         const CertifyOptions& opt) {
    if (ops.empty())
        throw std::invalid_argument("star_frame_to_controlled: empty family");
    if (!is_gl_plus(C, opt.tol) || !is_gl_plus(C_prime, opt.tol))
        throw gate_error("controllers are not in GL+");

    OperatorFamily controlled;
    controlled.ops = ops;
    controlled.C = C;
    controlled.C_prime = C_prime;

    const double cc = operator_norm(C) * operator_norm(C_prime);
    const double pred_lo = std::sqrt(cc) / norm(inverse(plain_bounds.A));
    const double pred_hi = std::sqrt(cc) * norm(plain_bounds.B);

    TransformReport rep;
    rep.mode = TransformMode::report_only;
    rep.predicted_scalar_lower = pred_lo;
    rep.predicted_scalar_upper = pred_hi;
    rep.certificate = certify_instance({controlled, std::nullopt}, opt);

    // Norm-level check of the predicted coefficients on sampled vectors;
    // only the upper direction is derivable, so the outcome is recorded
    // rather than asserted.
    const AlgebraDescriptor d = C.desc;
    bool ok = true;
    for (int k = 0; k < opt.samples; ++k) {
        Rng rng(sub_seed(opt.seed ^ 0x73746172ull, k));
        const ModuleVector x = random_unit_vector(d, C.rank, rng);
        const double mid = norm(sum_of_inner_products(controlled, x));
        const double xx = norm(inner_product(x, x));
        if (mid < pred_lo * pred_lo * xx - 1e-9 ||
            mid > pred_hi * pred_hi * xx + 1e-9)
            ok = false;
    }
    rep.held = ok;
    return rep;
}

}  // namespace opframe
