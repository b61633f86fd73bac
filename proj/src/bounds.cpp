#include "erw/bounds.hpp"

#include <cmath>

namespace erw {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw divergence_error(what);
}

}  // namespace

BoundInputs make_bound_inputs(int d, double tol) {
    require(d >= 6, "make_bound_inputs: G_{d-1}^{*2}(0) requires d >= 6");
    BoundInputs in;
    in.d = d;
    in.g1 = greens_power_origin(d - 1, 1, tol).interval();
    in.g2 = greens_power_origin(d - 1, 2, tol).interval();
    if (d >= 8) in.g3 = greens_power_origin(d - 1, 3, tol).interval();
    in.constants = derived_constants(d, tol);
    return in;
}

Interval pi_norm_bound(const BoundInputs& inputs, double beta, int N) {
    const int d = inputs.d;
    if (N < 1) throw std::domain_error("pi_norm_bound: N >= 1");
    if (N == 1) {
        require(inputs.constants.E0.has_value(), "pi_norm_bound: E0 diverges for d < 4");
        return beta / d * *inputs.constants.E0;
    }
    require(inputs.constants.E1.has_value() && inputs.constants.a_d.has_value(),
            "pi_norm_bound: a_d undefined for d < 6");
    Interval base = std::pow(beta, N) / (static_cast<double>(d) * (d - 1)) * inputs.g1 *
                    *inputs.constants.E1;
    return N > 2 ? base * pow_int(*inputs.constants.a_d, N - 2) : base;
}

DerivativePieces rho_chi_gamma_bounds(const BoundInputs& inputs, double beta, int N) {
    const int d = inputs.d;
    const double dm1 = d - 1.0;
    if (N < 1) throw std::domain_error("rho_chi_gamma_bounds: N >= 1");
    const auto& c = inputs.constants;
    require(c.E0 && c.E1 && c.a_d && c.eps_d && inputs.g3,
            "rho_chi_gamma_bounds: constants diverge for d < 8");

    DerivativePieces out;
    if (N == 1) {
        out.rho = beta / (static_cast<double>(d) * d) * *c.E0;
        out.chi = 1.0 / d * *c.E0;
        out.gamma = beta / (dm1 * dm1) * inputs.g2;
        return out;
    }
    Interval adpow = pow_int(*c.a_d, N - 2);
    out.rho = std::pow(beta, N) / (static_cast<double>(d) * d * dm1) * inputs.g1 * *c.E1 * adpow;
    out.chi = N * std::pow(beta, N - 1) / (static_cast<double>(d) * dm1) * inputs.g1 * *c.E1 *
              adpow;
    if (N == 2) {
        out.gamma = beta * beta * *c.eps_d;
    } else {
        Interval bad = pow_int(*c.a_d * beta, N - 2);
        out.gamma = *c.eps_d * beta * beta * bad +
                    (N - 2) * 2.0 * std::pow(beta, 3) / (dm1 * dm1 * dm1 * dm1) * *c.E1 *
                        inputs.g1 * *inputs.g3 * pow_int(*c.a_d * beta, N - 3);
    }
    return out;
}

BoundReport summary_sums(const BoundInputs& inputs) {
    const int d = inputs.d;
    const double dm1 = d - 1.0;
    const auto& c = inputs.constants;
    require(c.E0 && c.E1 && c.a_d && c.eps_d && inputs.g3,
            "summary_sums: constants diverge for d < 8");
    require(c.a_d->hi() < 1.0, "summary_sums: a_d >= 1, the level sums diverge");

    Interval a = *c.a_d;
    Interval one_minus_a = 1.0 - a;
    Interval ge1 = inputs.g1 * *c.E1;

    BoundReport rep;
    rep.d = d;
    rep.beta = 1.0;
    rep.a_d_condition = true;
    for (int N = 1; N <= 8; ++N) rep.pi_norm_by_N.push_back(pi_norm_bound(inputs, 1.0, N));

    rep.rho_sum = *c.E0 / d + ge1 / (static_cast<double>(d) * dm1) / one_minus_a;
    rep.chi_sum = *c.E0 + ge1 * (2.0 - a) / (dm1 * (one_minus_a * one_minus_a));
    rep.gamma_sum = static_cast<double>(d) / (dm1 * dm1) * inputs.g2 +
                    *c.eps_d * d / one_minus_a +
                    2.0 * d * *c.E1 * inputs.g1 * *inputs.g3 /
                        (dm1 * dm1 * dm1 * dm1) / (one_minus_a * one_minus_a);
    rep.total = rep.rho_sum + rep.chi_sum + rep.gamma_sum;
    return rep;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::monotone_all_beta: return "monotone-all-beta";
        case Verdict::monotone_small_beta: return "monotone-small-beta";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::divergent: return "divergent";
    }
    return "unknown";
}

Certificate certify(int d, double tol) {
    Certificate cert;
    cert.d = d;
    cert.total = std::numeric_limits<double>::quiet_NaN();
    cert.margin = std::numeric_limits<double>::quiet_NaN();

    if (d < 4) {
        cert.verdict = Verdict::divergent;
        cert.notes = "no finite Green's ingredient below d = 4";
        return cert;
    }
    DerivedConstants consts = derived_constants(d, tol);
    double e0_hi = consts.E0->hi();

    if (d < 8) {
        // gamma-type bounds need G_{d-1}^{*3}(0), finite only for d >= 8.
        if (!consts.a_d) {
            cert.verdict = Verdict::divergent;
            cert.notes = "a_d undefined (G_{d-1}^{*2}(0) diverges for d <= 5)";
        } else {
            cert.verdict = Verdict::inconclusive;
            cert.notes = "derivative bounds need G_{d-1}^{*3}(0), divergent for d < 8; E0 = " +
                         std::to_string(e0_hi);
        }
        return cert;
    }

    BoundInputs inputs = make_bound_inputs(d, tol);
    bool a_ok = consts.a_d->hi() < 1.0;
    if (a_ok) {
        BoundReport rep = summary_sums(inputs);
        cert.total = rep.total.v;
        cert.margin = 1.0 - rep.total.hi();
        if (rep.total.hi() < 1.0) {
            cert.verdict = Verdict::monotone_all_beta;
            cert.notes = "d * (rho + chi + gamma sums) < 1 for all beta in [0,1]";
            return cert;
        }
    }
    if (e0_hi < 1.0 && a_ok) {
        cert.verdict = Verdict::monotone_small_beta;
        cert.notes = "total >= 1 at beta = 1, but E0(d) = " + std::to_string(e0_hi) +
                     " < 1, so the beta-free term leaves room at small beta";
    } else if (!a_ok) {
        cert.verdict = Verdict::inconclusive;
        cert.notes = "a_d >= 1: the level sums do not converge geometrically";
    } else {
        cert.verdict = Verdict::inconclusive;
        cert.notes = "E0(d) >= 1";
    }
    return cert;
}

}  // namespace erw
