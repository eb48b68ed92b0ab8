#pragma once

#include <cstdint>

#include "lsa/algebroid.hpp"
#include "lsa/tensor.hpp"

namespace lsa {

/// Lie derivative on Gamma(wedge^n A (x) A): products on the wedge slots,
/// the commutator bracket on the tensor slot. Degree 0 collapses to [x,.].
PolyTensor lie_der_poly(const AlgebroidStructure& alg, const Section& x,
                        const PolyTensor& t);

/// Right multiplication on the same carrier: minus products on the wedge
/// slots, product on the tensor slot. Degree 0 collapses to (.)·x.
PolyTensor right_mult_poly(const AlgebroidStructure& alg, const Section& x,
                           const PolyTensor& t);

/// Lie derivative / right multiplication on the dual carrier, computed by
/// duality against all basis tensors:
///   <L_x phi, X> = a(x)<phi, X> - <phi, L_x X>,  <R_x phi, X> = -<phi, R_x X>.
FormTensor lie_der_form(const AlgebroidStructure& alg, const Section& x,
                        const FormTensor& phi);
FormTensor right_mult_form(const AlgebroidStructure& alg, const Section& x,
                           const FormTensor& phi);

/// Coboundary of the left-symmetric cochain complex with trivial
/// coefficients: C^n(A) = Gamma(wedge^{n-1} A* (x) A*) -> C^{n+1}(A).
/// At n = 1 this is delta(xi)(x,y) = a(x)<xi,y> - <xi, x.y>.
FormTensor coboundary_lsa(const AlgebroidStructure& alg, const FormTensor& phi);

/// Chevalley-Eilenberg differential of the (sub-adjacent) Lie algebroid on
/// alternating forms.
AltForm coboundary_lie(const AlgebroidStructure& lie, const AltForm& form);

/// d_M phi for phi handed over in tensor storage (NotAlternating if it is
/// not a genuine form).
AltForm coboundary_lie_tensor(const AlgebroidStructure& lie, const FormTensor& phi);

/// Passes iff d_M(varpi) == 0 identically.
Report is_2cocycle(const AlgebroidStructure& lie, const FormTensor& varpi);

/// Runs the full set of differential-calculus identities (the eleven
/// equalities of the operator propositions) with a generic affine function
/// layer plus `trials` random draws. delta(delta(.)) is measured and
/// reported as a note, not gated.
Report identity_suite(const AlgebroidStructure& alg, int trials, uint64_t seed);

}  // namespace lsa
