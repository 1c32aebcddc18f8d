/*
 * transforms.hpp — frame transformations with predicted bounds.
 *
 * Each operation builds a transformed family, computes the predicted bound
 * envelope, re-certifies the result and reports whether the prediction
 * enveloped the certified truth. assert-mode transformations are the ones
 * whose envelope is re-derivable in the A-valued order; the others run
 * report_only and record the outcome instead of asserting it.
 */

#pragma once

#include "opframe/frames.hpp"

namespace opframe {

enum class TransformMode { assert_mode, report_only };

std::string mode_name(TransformMode m);

struct TransformReport {
    std::optional<AlgebraElement> predicted_lower_element;
    std::optional<AlgebraElement> predicted_upper_element;
    double predicted_scalar_lower = 0.0;
    double predicted_scalar_upper = 0.0;
    FrameCertificate certificate;
    std::optional<double> frame_operator_residual;
    std::optional<double> canonical_residual;
    TransformMode mode = TransformMode::assert_mode;
    bool held = false;
};

struct TransformResult {
    OperatorFamily family;
    TransformReport report;
};

// {T_i theta} for injective theta commuting with the controllers. Predicted
// bounds sigma_min(theta) A and |theta| B; predicted frame operator
// theta* S theta.
TransformResult compose_right(const OperatorFamily& family,
                              const ModuleOperator& theta,
                              const std::optional<StarBoundPair>& bounds,
                              const CertifyOptions& opt = {});

// compose_right with theta = S^{-1}. With identity controllers the new
// frame operator must coincide with S^{-1}; the residual is reported.
TransformResult canonical_rescale(const OperatorFamily& family,
                                  const std::optional<StarBoundPair>& bounds,
                                  const CertifyOptions& opt = {});

// {theta T_i} for surjective theta. assert mode is only admissible with
// scalar controllers; general controllers run report_only.
TransformResult compose_left(const OperatorFamily& family,
                             const ModuleOperator& theta, TransformMode mode,
                             const std::optional<StarBoundPair>& bounds,
                             const CertifyOptions& opt = {});

enum class C2Direction { controlled_to_plain, plain_to_controlled };

// Conversion between plain bounds and (C,C)-controlled bounds, re-certified
// by certify_star_bounds on the target family.
TransformReport c2_equivalence(const std::vector<ModuleOperator>& ops,
                               const ModuleOperator& C, C2Direction direction,
                               const StarBoundPair& input_bounds,
                               const CertifyOptions& opt = {});

struct TransportReport {
    double defining_relation_residual = 0.0;
    double commutation_residual = 0.0;
    double intertwining_residual = 0.0;
    FrameCertificate certificate;
    OperatorFamily transported;
    StarBoundPair transported_bounds;
    bool held = false;
};

// Inner automorphism transport phi(a) = U a U*, theta(x)_k = U x_k U*.
// Verifies <theta x, theta y> = phi(<x,y>), certifies (phi(A), phi(B)) on
// the conjugated instance and checks the frame operator intertwining.
TransportReport homomorphism_transport(const OperatorFamily& family,
                                       const AlgebraElement& U,
                                       const StarBoundPair& bounds,
                                       const CertifyOptions& opt = {});

// A plain *-frame viewed as a (C,C')-controlled one; records whether the
// norm-level predicted envelope with coefficients |A^{-1}|^{-1} (|C||C'|)^{1/2}
// and |B| (|C||C'|)^{1/2} holds on samples. Always report_only.
TransformReport star_frame_to_controlled(const std::vector<ModuleOperator>& ops,
                                         const ModuleOperator& C,
                                         const ModuleOperator& C_prime,
                                         const StarBoundPair& plain_bounds,
                                         const CertifyOptions& opt = {});

}  // namespace opframe
