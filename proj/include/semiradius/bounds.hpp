#pragma once
//
// Checkable reports for the A-numerical radius inequalities.
//
// Every report states one inequality between `lhs` and `rhs`. For lower
// bounds on w_A the statement is lhs >= rhs with lhs the enclosure's lower end;
// for upper bounds it is lhs <= rhs with lhs the enclosure's upper end. Either
// way a `holds` verdict is valid for every value inside the enclosure.
//

#include "semiradius/numerical_radius.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

namespace semiradius {

enum class FormulaId {
    eqv_lower,
    eqv_upper,
    eqv1_lower,
    eqv1_upper,
    th1,
    th2,
    th3,
    th4,
    lem1,
    th5_i,
    th5_ii,
    cor5_i,
    cor5_ii,
    ineq31,
    ineq32,
    zamani,
};

inline constexpr std::array<std::string_view, 16> formula_names = {
    "eqv_lower", "eqv_upper", "eqv1_lower", "eqv1_upper", "th1",    "th2",    "th3",    "th4",
    "lem1",      "th5_i",     "th5_ii",     "cor5_i",     "cor5_ii", "ineq31", "ineq32", "zamani",
};

inline std::string_view to_string(FormulaId id) { return formula_names[static_cast<std::size_t>(id)]; }

enum class Sense { at_least, at_most }; // lhs >= rhs, lhs <= rhs

enum class Sign { plus, minus };

inline const char* to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }

template <typename Real> struct BoundReport {
    FormulaId formula_id{};
    Sense sense{};
    Real lhs = 0;
    Real rhs = 0;
    Real slack = 0;
    Real scale = 0;
    bool holds = false;
    bool tight = false;
    bool radicand_clamped = false;
};

template <typename Real>
BoundReport<Real> make_report(FormulaId id, Sense sense, Real lhs, Real rhs, const PsdContext<Real>& ctx,
                              bool clamped = false) {
    BoundReport<Real> r;
    r.formula_id = id;
    r.sense = sense;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = sense == Sense::at_least ? lhs - rhs : rhs - lhs;
    r.scale = std::max({std::abs(lhs), std::abs(rhs), ctx.lambda_max});
    r.holds = r.slack >= -ctx.tol.check_rel_tol * r.scale;
    r.tight = r.holds && std::abs(r.slack) <= ctx.tol.equality_rel_tol * r.scale;
    r.radicand_clamped = clamped;
    return r;
}

/// The A-seminorms every bound is assembled from.
template <typename Real> struct OperatorParts {
    Real norm = 0;          // ||T||_A
    Real re = 0;            // ||Re_A(T)||_A
    Real im = 0;            // ||Im_A(T)||_A
    Real re_plus_im = 0;    // ||Re_A(T) + Im_A(T)||_A
    Real re_minus_im = 0;   // ||Re_A(T) - Im_A(T)||_A
    Real sharp_sum = 0;     // ||T# T + T T#||_A
};

template <typename Real> OperatorParts<Real> operator_parts(const AOperator<Real>& op) {
    const auto& ctx = *op.ctx;
    OperatorParts<Real> p;
    p.norm = op_seminorm(op);
    p.re = a_seminorm(ctx, op.re_a);
    p.im = a_seminorm(ctx, op.im_a);
    p.re_plus_im = a_seminorm(ctx, Matrix<Real>(op.re_a + op.im_a));
    p.re_minus_im = a_seminorm(ctx, Matrix<Real>(op.re_a - op.im_a));
    p.sharp_sum = sharp_sum_seminorm(op);
    return p;
}

namespace detail {

template <typename Real> Real clamped_sqrt(Real v, bool& clamped) {
    if (v < Real(0)) {
        clamped = true;
        return Real(0);
    }
    return std::sqrt(v);
}

// |·|^2 differences used by th2 / th5(i) and th4 / th5(ii)
template <typename Real> Real re_im_gap_sq(const OperatorParts<Real>& p) {
    return std::abs(p.re * p.re - p.im * p.im);
}
template <typename Real> Real plus_minus_gap_sq(const OperatorParts<Real>& p) {
    return std::abs(p.re_plus_im * p.re_plus_im - p.re_minus_im * p.re_minus_im);
}

} // namespace detail

// ---------------------------------------------------------------------------
// single-operator bounds
// ---------------------------------------------------------------------------

template <typename Real> Real th1_rhs(const OperatorParts<Real>& p) {
    return p.norm / Real(2) + std::abs(p.re - p.im) / Real(2);
}

template <typename Real> Real th2_radicand(const OperatorParts<Real>& p) {
    return p.sharp_sum / Real(4) + detail::re_im_gap_sq(p) / Real(2);
}

template <typename Real> Real th3_rhs(const OperatorParts<Real>& p) {
    return p.norm / Real(2) + std::abs(p.re_plus_im - p.re_minus_im) / (Real(2) * std::numbers::sqrt2_v<Real>);
}

template <typename Real> Real th4_radicand(const OperatorParts<Real>& p) {
    return p.sharp_sum / Real(4) + detail::plus_minus_gap_sq(p) / Real(4);
}

template <typename Real>
std::vector<BoundReport<Real>> classic_bounds(const AOperator<Real>& op, const RadiusEstimate<Real>& rad,
                                              const OperatorParts<Real>& p) {
    const auto& ctx = *op.ctx;
    return {
        make_report(FormulaId::eqv_lower, Sense::at_least, rad.lower, p.norm / Real(2), ctx),
        make_report(FormulaId::eqv_upper, Sense::at_most, rad.upper, p.norm, ctx),
        make_report(FormulaId::eqv1_lower, Sense::at_least, rad.lower * rad.lower, p.sharp_sum / Real(4), ctx),
        make_report(FormulaId::eqv1_upper, Sense::at_most, rad.upper * rad.upper, p.sharp_sum / Real(2), ctx),
    };
}

template <typename Real>
std::vector<BoundReport<Real>> classic_bounds(const AOperator<Real>& op, const RadiusEstimate<Real>& rad) {
    return classic_bounds(op, rad, operator_parts(op));
}

template <typename Real>
BoundReport<Real> bound_th1(const AOperator<Real>& op, const RadiusEstimate<Real>& rad, const OperatorParts<Real>& p) {
    return make_report(FormulaId::th1, Sense::at_least, rad.lower, th1_rhs(p), *op.ctx);
}

template <typename Real>
BoundReport<Real> bound_th2(const AOperator<Real>& op, const RadiusEstimate<Real>& rad, const OperatorParts<Real>& p) {
    bool clamped = false;
    const Real rhs = detail::clamped_sqrt(th2_radicand(p), clamped);
    return make_report(FormulaId::th2, Sense::at_least, rad.lower, rhs, *op.ctx, clamped);
}

template <typename Real>
BoundReport<Real> bound_th3(const AOperator<Real>& op, const RadiusEstimate<Real>& rad, const OperatorParts<Real>& p) {
    return make_report(FormulaId::th3, Sense::at_least, rad.lower, th3_rhs(p), *op.ctx);
}

template <typename Real>
BoundReport<Real> bound_th4(const AOperator<Real>& op, const RadiusEstimate<Real>& rad, const OperatorParts<Real>& p) {
    bool clamped = false;
    const Real rhs = detail::clamped_sqrt(th4_radicand(p), clamped);
    return make_report(FormulaId::th4, Sense::at_least, rad.lower, rhs, *op.ctx, clamped);
}

// Convenience overloads that run the scan themselves.
template <typename Real> BoundReport<Real> bound_th1(const AOperator<Real>& op) {
    return bound_th1(op, radius_theta_scan(op), operator_parts(op));
}
template <typename Real> BoundReport<Real> bound_th2(const AOperator<Real>& op) {
    return bound_th2(op, radius_theta_scan(op), operator_parts(op));
}
template <typename Real> BoundReport<Real> bound_th3(const AOperator<Real>& op) {
    return bound_th3(op, radius_theta_scan(op), operator_parts(op));
}
template <typename Real> BoundReport<Real> bound_th4(const AOperator<Real>& op) {
    return bound_th4(op, radius_theta_scan(op), operator_parts(op));
}

// ---------------------------------------------------------------------------
// equality characterizations
// ---------------------------------------------------------------------------

enum class EqualityCase { half_norm, quarter_form };

inline const char* to_string(EqualityCase c) { return c == EqualityCase::half_norm ? "half_norm" : "quarter_form"; }

template <typename Real> struct EqualityDiagnostic {
    EqualityCase case_id{};
    bool equality_holds = false;
    bool re_im_constant = false;
    DiskTestResult<Real> disk;
    Real target = 0;
    Real max_re_im_deviation = 0;

    /// equality forces both the constant Re/Im profile and the disk shape
    bool necessity_ok() const { return !equality_holds || (re_im_constant && disk.is_disk); }
};

namespace detail {

// `squared` compares f^2 with target^2 instead of f with target
template <typename Real>
EqualityDiagnostic<Real> equality_diagnostic(const AOperator<Real>& op, const RadiusEstimate<Real>& rad,
                                             int grid_n, EqualityCase id, Real target, bool squared) {
    require_adjointable(op);
    if (grid_n < 8)
        throw Error(ErrorKind::invalid_argument, "grid_n must be at least 8");
    const auto& ctx = *op.ctx;
    const Real eq_tol = ctx.tol.equality_rel_tol;
    const Real pi = std::numbers::pi_v<Real>;
    auto lift = [&](Real v) { return squared ? v * v : v; };

    EqualityDiagnostic<Real> d;
    d.case_id = id;
    d.target = target;

    const Real w = lift(rad.lower), goal = lift(target);
    d.equality_holds = std::abs(w - goal) <= eq_tol * std::max({w, goal, ctx.lambda_max});

    Real dev = 0, peak = goal;
    for (int j = 0; j < grid_n; ++j) {
        const Real theta = Real(j) * pi / Real(grid_n);
        const Real re = lift(support_norm(op, theta));
        const Real im = lift(support_norm(op, theta - pi / Real(2)));
        dev = std::max({dev, std::abs(re - goal), std::abs(im - goal)});
        peak = std::max({peak, re, im});
    }
    d.max_re_im_deviation = dev;
    d.re_im_constant = dev <= eq_tol * std::max(peak, ctx.lambda_max);
    d.disk = disk_test(op, grid_n);
    return d;
}

} // namespace detail

template <typename Real>
EqualityDiagnostic<Real> equality_half_norm(const AOperator<Real>& op, const RadiusEstimate<Real>& rad,
                                            int grid_n = 360) {
    return detail::equality_diagnostic(op, rad, grid_n, EqualityCase::half_norm, op_seminorm(op) / Real(2), false);
}

template <typename Real>
EqualityDiagnostic<Real> equality_quarter_form(const AOperator<Real>& op, const RadiusEstimate<Real>& rad,
                                               int grid_n = 360) {
    const Real target = std::sqrt(sharp_sum_seminorm(op) / Real(4));
    return detail::equality_diagnostic(op, rad, grid_n, EqualityCase::quarter_form, target, true);
}

// ---------------------------------------------------------------------------
// generalized commutators TX ± YT
// ---------------------------------------------------------------------------

template <typename Real>
Matrix<Real> generalized_commutator(const Matrix<Real>& t, const Matrix<Real>& x, const Matrix<Real>& y, Sign sign) {
    return sign == Sign::plus ? Matrix<Real>(t * x + y * t) : Matrix<Real>(t * x - y * t);
}

template <typename Real>
RadiusEstimate<Real> commutator_radius(const AOperator<Real>& t, const AOperator<Real>& x, const AOperator<Real>& y,
                                       Sign sign, int grid_n) {
    const auto op = make_a_operator(t.ctx, generalized_commutator<Real>(t.t, x.t, y.t, sign));
    return radius_theta_scan(op, grid_n, true);
}

template <typename Real>
BoundReport<Real> commutator_lemma(const AOperator<Real>& t, const AOperator<Real>& x, const AOperator<Real>& y,
                                   Sign /*sign: carried by w_comm*/, const OperatorParts<Real>& pt, const RadiusEstimate<Real>& w_comm) {
    require_same_context(t, x);
    require_same_context(t, y);
    const Real m = std::max(op_seminorm(x), op_seminorm(y));
    const Real rhs = m * std::sqrt(Real(2) * pt.sharp_sum);
    return make_report(FormulaId::lem1, Sense::at_most, w_comm.upper, rhs, *t.ctx);
}

template <typename Real>
BoundReport<Real> commutator_lemma(const AOperator<Real>& t, const AOperator<Real>& x, const AOperator<Real>& y,
                                   Sign sign, int grid_n = 720) {
    require_same_context(t, x);
    require_same_context(t, y);
    return commutator_lemma(t, x, y, sign, operator_parts(t), commutator_radius(t, x, y, sign, grid_n));
}

/// Returns {th5_i, th5_ii}. w_A(T) inside the radicands is the enclosure's upper end.
template <typename Real>
std::array<BoundReport<Real>, 2> commutator_th5(const AOperator<Real>& t, const AOperator<Real>& x,
                                                const AOperator<Real>& y, Sign /*sign*/, const OperatorParts<Real>& pt,
                                                const RadiusEstimate<Real>& rad_t,
                                                const RadiusEstimate<Real>& w_comm) {
    require_same_context(t, x);
    require_same_context(t, y);
    const auto& ctx = *t.ctx;
    const Real m = std::max(op_seminorm(x), op_seminorm(y));
    const Real w2 = rad_t.upper * rad_t.upper;
    const Real k = Real(2) * std::numbers::sqrt2_v<Real> * m;
    bool c1 = false, c2 = false;
    const Real r1 = k * detail::clamped_sqrt(w2 - detail::re_im_gap_sq(pt) / Real(2), c1);
    const Real r2 = k * detail::clamped_sqrt(w2 - detail::plus_minus_gap_sq(pt) / Real(4), c2);
    return {make_report(FormulaId::th5_i, Sense::at_most, w_comm.upper, r1, ctx, c1),
            make_report(FormulaId::th5_ii, Sense::at_most, w_comm.upper, r2, ctx, c2)};
}

template <typename Real>
std::array<BoundReport<Real>, 2> commutator_th5(const AOperator<Real>& t, const AOperator<Real>& x,
                                                const AOperator<Real>& y, Sign sign, int grid_n = 720) {
    require_same_context(t, x);
    require_same_context(t, y);
    return commutator_th5(t, x, y, sign, operator_parts(t), radius_theta_scan(t, grid_n, true),
                          commutator_radius(t, x, y, sign, grid_n));
}

template <typename Real> struct CommutatorComparison {
    Real alpha1 = 0, alpha2 = 0, beta1 = 0, beta2 = 0;
    Real zamani_bound = 0;
    Real refined31 = 0; // 2 sqrt2 min(alpha1, alpha2)
    Real refined32 = 0; // 2 sqrt2 min(beta1, beta2)
    Real w_plus = 0;    // upper end of the enclosure of w_A(TS + ST)
    Real w_minus = 0;   // upper end of the enclosure of w_A(TS - ST)
    Real scale = 0;
    bool radicand_clamped = false;
    Sign sign = Sign::minus;

    Real w(Sign s) const { return s == Sign::plus ? w_plus : w_minus; }
};

template <typename Real>
CommutatorComparison<Real> commutator_compare(const AOperator<Real>& t, const AOperator<Real>& s, Sign sign,
                                              const OperatorParts<Real>& pt, const RadiusEstimate<Real>& rad_t,
                                              const OperatorParts<Real>& ps, const RadiusEstimate<Real>& rad_s,
                                              int grid_n = 720) {
    require_same_context(t, s);
    CommutatorComparison<Real> c;
    c.sign = sign;
    const Real wt2 = rad_t.upper * rad_t.upper;
    const Real ws2 = rad_s.upper * rad_s.upper;
    bool clamped = false;
    c.alpha1 = ps.norm * detail::clamped_sqrt(wt2 - detail::re_im_gap_sq(pt) / Real(2), clamped);
    c.alpha2 = pt.norm * detail::clamped_sqrt(ws2 - detail::re_im_gap_sq(ps) / Real(2), clamped);
    c.beta1 = ps.norm * detail::clamped_sqrt(wt2 - detail::plus_minus_gap_sq(pt) / Real(4), clamped);
    c.beta2 = pt.norm * detail::clamped_sqrt(ws2 - detail::plus_minus_gap_sq(ps) / Real(4), clamped);
    c.radicand_clamped = clamped;
    const Real k = Real(2) * std::numbers::sqrt2_v<Real>;
    c.refined31 = k * std::min(c.alpha1, c.alpha2);
    c.refined32 = k * std::min(c.beta1, c.beta2);
    c.zamani_bound = k * std::min(pt.norm * rad_s.upper, ps.norm * rad_t.upper);
    c.w_plus = commutator_radius(t, s, s, Sign::plus, grid_n).upper;
    c.w_minus = commutator_radius(t, s, s, Sign::minus, grid_n).upper;
    c.scale = std::max({c.zamani_bound, c.w_plus, c.w_minus, t.ctx->lambda_max});
    return c;
}

template <typename Real>
CommutatorComparison<Real> commutator_compare(const AOperator<Real>& t, const AOperator<Real>& s, Sign sign,
                                              int grid_n = 720) {
    require_same_context(t, s);
    return commutator_compare(t, s, sign, operator_parts(t), radius_theta_scan(t, grid_n, true), operator_parts(s),
                              radius_theta_scan(s, grid_n, true), grid_n);
}

/// Reports for the comparison's sign: cor5_i, cor5_ii, ineq31, ineq32, zamani.
template <typename Real>
std::vector<BoundReport<Real>> comparison_reports(const CommutatorComparison<Real>& c, const PsdContext<Real>& ctx) {
    const Real k = Real(2) * std::numbers::sqrt2_v<Real>;
    const Real w = c.w(c.sign);
    return {
        make_report(FormulaId::cor5_i, Sense::at_most, w, k * c.alpha1, ctx, c.radicand_clamped),
        make_report(FormulaId::cor5_ii, Sense::at_most, w, k * c.beta1, ctx, c.radicand_clamped),
        make_report(FormulaId::ineq31, Sense::at_most, w, c.refined31, ctx, c.radicand_clamped),
        make_report(FormulaId::ineq32, Sense::at_most, w, c.refined32, ctx, c.radicand_clamped),
        make_report(FormulaId::zamani, Sense::at_most, w, c.zamani_bound, ctx),
    };
}

/// refined31 <= zamani and refined32 <= zamani, within check_rel_tol.
template <typename Real> bool refined_dominates(const CommutatorComparison<Real>& c, const PsdContext<Real>& ctx) {
    const Real slack = ctx.tol.check_rel_tol * c.scale;
    return c.refined31 <= c.zamani_bound + slack && c.refined32 <= c.zamani_bound + slack;
}

} // namespace semiradius
