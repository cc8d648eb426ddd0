#pragma once

#include "jetcurv/forms.hpp"

namespace jetcurv {

// Frolicher-Nijenhuis bracket of two vector-valued forms.
//
// Degrees combine additively. The cases needed here:
//   (0,0)  ordinary Lie bracket of the two fields
//   (0,k)  Lie derivative of the second argument along the first
//   (k,0)  graded flip of the above: [[A, W]] = -(-1)^{k*0} [[W, A]]
//   (1,1)  full bilinear expansion over coordinate decomposables
// Anything that would land above degree 2 is rejected.
VectorValuedForm fn_bracket(const JetContext& ctx, const VectorValuedForm& A,
                            const VectorValuedForm& B);

}  // namespace jetcurv
