#pragma once
// Evaluation of the current q attached to an integral form along a discrete
// loop or path.  In the universal-cover trivialization of the flat spin
// bundle all interior transports are the identity, so a block of order M
// reduces to 2^{-M/2} times the sum over time orderings of the Koszul-signed
// Clifford product of the inserted fields; closing a loop contributes the
// spin structure sign inside the supertrace.  Point-mass profiles are
// handled exactly (one ordered product per block); density profiles are
// integrated with equal-weight quadrature on the loop's own time grid.

#include "loopint/loopforms.hpp"

namespace loopint {

struct QOptions {
  // Use every stride-th loop knot as a density quadrature node.
  int stride = 1;
};

// Hom-part of the current along the loop, before closing up.
CliffordC q_rel(const FlatTorus& X, const DiscreteLoop& loop, const IntegralForm& theta,
                const QOptions& opt = {});

// Scalar current on closed loops: str(spin sign * q_rel).
cplx q_loop(const FlatTorus& X, const DiscreteLoop& loop, const IntegralForm& theta,
            const QOptions& opt = {});

// A priori bound |q(theta)| <= 2^{n/2} ||theta||.
double q_bound(int dim, const IntegralForm& theta);

// Quadrature-defect estimate: difference between the loop-grid evaluation
// and the evaluation on the twice-coarsened grid.
double q_defect(const FlatTorus& X, const DiscreteLoop& loop, const IntegralForm& theta);

}  // namespace loopint
