/*
 * frames.hpp — controlled operator families and frame certification.
 *
 * An OperatorFamily is a finite family {T_i} with a controller pair
 * (C, C') from GL+(H). Certification establishes, for supplied algebra
 * bounds A and B, the two-sided condition
 *
 *     A <x,x> A*  <=  sum_i <T_i C x, T_i C' x>  <=  B <x,x> B*
 *
 * and reports the verdict with the tightest scalar envelope taken from the
 * spectrum of the frame operator S = sum_i C' T_i* T_i C.
 *
 * Certification semantics: when A and B are scalar multiples of the unit the
 * condition is exactly one pair of PSD certificates on the realization of S
 * and is decided spectrally. For general algebra bounds the condition
 * quantifies over all x and is checked by falsification on seeded random
 * unit vectors plus the basis vectors; a clean pass is evidence, not proof.
 * Certificates are deterministic functions of the seed: every sample derives
 * its own generator via sub_seed, so the loop parallelizes without changing
 * the result.
 *
 * All operations gate on the commutation assumptions (C with C', both with
 * each T_i* T_i) and fail loudly with gate_error instead of mis-certifying.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "opframe/operators.hpp"

namespace opframe {

struct gate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OperatorFamily {
    std::vector<ModuleOperator> ops;
    ModuleOperator C;
    ModuleOperator C_prime;

    int size() const { return static_cast<int>(ops.size()); }
    AlgebraDescriptor descriptor() const { return C.desc; }
    int rank() const { return C.rank; }
};

struct StarBoundPair {
    AlgebraElement A;
    AlgebraElement B;
};

struct Instance {
    OperatorFamily family;
    std::optional<StarBoundPair> bounds;
};

enum class Verdict { controlled_star_frame, bessel_only, not_frame };

std::string verdict_name(Verdict v);

struct FrameCertificate {
    Verdict verdict = Verdict::not_frame;
    double scalar_lower = 0.0;   // min eigenvalue of the realization of S
    double scalar_upper = 0.0;   // max eigenvalue
    double star_residual_min = 0.0;  // most negative positivity margin seen
    double commutation_residual = 0.0;
    double tol = kDefaultTol;
    int samples = 0;
    std::uint64_t seed = 0;
    bool tight = false;
    bool parseval = false;
    std::vector<double> check_residuals;  // per-check positivity margins
};

struct CertifyOptions {
    int samples = 200;
    std::uint64_t seed = 42;
    double tol = kDefaultTol;
    bool parallel = true;
};

void validate_family(const OperatorFamily& family);

// max over |CC' - C'C| and the per-index commutators of C, C' with T_i*T_i.
double commutation_residual(const OperatorFamily& family);
double commutation_gate(const OperatorFamily& family);

// S = sum_i C' T_i* T_i C. Throws gate_error when the commutation gate
// fails; the identity S = synthesis o analysis only holds under it.
ModuleOperator frame_operator(const OperatorFamily& family);

// Direct evaluation of sum_i <T_i C x, T_i C' x>.
AlgebraElement sum_of_inner_products(const OperatorFamily& family,
                                     const ModuleVector& x);

// sum_i (C C')^{1/2} T_i* y_i  and its adjoint {T_i (C' C)^{1/2} x}.
ModuleVector synthesis(const OperatorFamily& family,
                       const CoefficientSequence& coeffs);
CoefficientSequence analysis(const OperatorFamily& family,
                             const ModuleVector& x);

// Tightest scalars with  lower <x,x> <= <Sx,x> <= upper <x,x>  for all x.
std::pair<double, double> optimal_scalar_bounds(const OperatorFamily& family);

FrameCertificate certify_star_bounds(const OperatorFamily& family,
                                     const StarBoundPair& bounds,
                                     const CertifyOptions& opt = {});

// Certify with explicit bounds when present, else against the promoted
// optimal scalar bounds of the instance itself.
FrameCertificate certify_instance(const Instance& inst,
                                  const CertifyOptions& opt = {});

struct NormCharacterization {
    bool held = false;
    double worst_lower_slack = 0.0;  // min over samples of (mid - lower)
    double worst_upper_slack = 0.0;  // min over samples of (upper - mid)
};

// |A^{-1}|^{-2} |<x,x>| <= |sum_i <T_iCx,T_iC'x>| <= |B|^2 |<x,x>| on
// sampled x, slack tolerance 1e-9.
NormCharacterization certify_norm_characterization(
    const OperatorFamily& family, const StarBoundPair& bounds,
    const CertifyOptions& opt = {});

// (sqrt(lower) 1_A, sqrt(upper) 1_A); requires 0 < lower <= upper.
StarBoundPair promote_scalar_to_star(AlgebraDescriptor d, double lower,
                                     double upper);

// Norm of the synthesis map from the finite coefficient space into H.
double synthesis_operator_norm(const OperatorFamily& family);
bool synthesis_bound_check(const OperatorFamily& family,
                           const StarBoundPair& bounds);

// S^{-1}(S x); the identity map up to conditioning of S.
ModuleVector reconstruct(const OperatorFamily& family, const ModuleVector& x);

// Envelope of scalar Rayleigh quotients tr<Sx,x> / tr<x,x> over `samples`
// random unit vectors plus two deterministic extremal probes built from the
// realization's eigenvectors; the quotients themselves are evaluated through
// sum_of_inner_products, independently of the spectral route.
std::pair<double, double> sampled_rayleigh_envelope(const OperatorFamily& family,
                                                    int samples,
                                                    std::uint64_t seed);

// The worked tight instance over the diagonal algebra D_d: rank-1 module,
// T_j = (1 + 1/j) in slot j, controllers alpha Id and alpha^{-1} Id.
OperatorFamily make_harmonic_family(int d, double alpha);
// Its exact algebra bound element diag(1 + 1/j).
AlgebraElement harmonic_bound_element(int d);

}  // namespace opframe
