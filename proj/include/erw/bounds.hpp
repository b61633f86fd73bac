#pragma once

#include <string>
#include <vector>

#include "erw/greens.hpp"
#include "erw/interval.hpp"

namespace erw {

// Green's inputs at dimension d - 1 plus the derived constants for d.
// g3 is absent for d < 8, where G_{d-1}^{*3}(0) diverges; the pi-norm bound
// does not need it, the derivative bounds do.
struct BoundInputs {
    int d;
    Interval g1, g2;
    std::optional<Interval> g3;
    DerivedConstants constants;
};

// Requires d >= 6 (a_d finite); fills g3 only for d >= 8.
BoundInputs make_bound_inputs(int d, double tol);

// Full |pi^(N)| norm bound:
//   N = 1: beta/d E0(d)
//   N > 1: beta^N / (d (d-1)) G_{d-1}(0) E1(d) a_d^{(N-2) 1{N>2}}
// Needs only E0 for N = 1 (valid from d >= 4); divergence_error otherwise
// when the ingredients are absent.
Interval pi_norm_bound(const BoundInputs& inputs, double beta, int N);

struct DerivativePieces {
    Interval rho, chi, gamma;
};

// Per-level bounds on the three Leibniz pieces of d(pi)/d(beta).
DerivativePieces rho_chi_gamma_bounds(const BoundInputs& inputs, double beta, int N);

struct BoundReport {
    int d;
    double beta;
    std::vector<Interval> pi_norm_by_N;
    Interval rho_sum, chi_sum, gamma_sum;  // each already multiplied by d
    Interval total;
    bool a_d_condition;  // a_d < 1 (upper end)
};

// Closed-form sums over N at beta = 1, times d.  divergence_error when
// a_d >= 1 or an ingredient is infinite.
BoundReport summary_sums(const BoundInputs& inputs);

enum class Verdict { monotone_all_beta, monotone_small_beta, inconclusive, divergent };

std::string verdict_name(Verdict v);

struct Certificate {
    int d;
    Verdict verdict;
    double total;   // NaN when divergent
    double margin;  // 1 - (total + error); NaN when divergent
    std::string notes;
};

// The monotonicity certificate for dimension d.  All comparisons use outward
// rounded interval ends, so a pass verdict survives the Green's tolerances.
Certificate certify(int d, double tol);

}  // namespace erw
