#include "test_support.hpp"

#include "semiradius/bounds.hpp"

#include <doctest.h>

using namespace semiradius;
using namespace semiradius::testing;

namespace {

const cd I(0, 1);
const double sqrt2 = std::sqrt(2.0);

ContextPtr<double> identity_ctx(Eigen::Index n = 2) { return psd_decompose<double>(MatrixXcd::Identity(n, n)); }

const BoundReport<double>& find(const std::vector<BoundReport<double>>& v, FormulaId id) {
    for (const auto& r : v)
        if (r.formula_id == id)
            return r;
    throw std::runtime_error("missing report");
}

} // namespace

TEST_CASE("make_report orientation") {
    const auto ctx = identity_ctx();
    const auto lo = make_report(FormulaId::th1, Sense::at_least, 2.0, 1.0, *ctx);
    CHECK(lo.slack == 1.0);
    CHECK(lo.holds);
    CHECK_FALSE(lo.tight);
    const auto hi = make_report(FormulaId::eqv_upper, Sense::at_most, 2.0, 1.0, *ctx);
    CHECK(hi.slack == -1.0);
    CHECK_FALSE(hi.holds);
    CHECK_FALSE(hi.tight);
    const auto eq = make_report(FormulaId::eqv_upper, Sense::at_most, 1.0, 1.0 + 1e-9, *ctx);
    CHECK(eq.holds);
    CHECK(eq.tight);
    CHECK(eq.scale == doctest::Approx(1.0));
    CHECK(to_string(FormulaId::zamani) == "zamani");
    CHECK(to_string(FormulaId::th5_ii) == "th5_ii");
}

TEST_CASE("classic_bounds examples") {
    SUBCASE("Jordan block: both lower bounds are attained") {
        const auto op = make_a_operator(identity_ctx(), jordan2());
        const auto reps = classic_bounds(op, radius_theta_scan(op));
        REQUIRE(reps.size() == 4);
        CHECK(find(reps, FormulaId::eqv_lower).tight);
        CHECK(find(reps, FormulaId::eqv1_lower).tight);
        CHECK(find(reps, FormulaId::eqv1_lower).rhs == doctest::Approx(0.25));
        for (const auto& r : reps)
            CHECK(r.holds);
        CHECK_FALSE(find(reps, FormulaId::eqv_upper).tight);
    }
    SUBCASE("Hermitian operator: upper bounds are attained") {
        const auto op = make_a_operator(identity_ctx(), diag({1, -1}));
        const auto reps = classic_bounds(op, radius_theta_scan(op));
        CHECK(find(reps, FormulaId::eqv_upper).tight);
        CHECK(find(reps, FormulaId::eqv1_upper).tight);
        for (const auto& r : reps)
            CHECK(r.holds);
    }
}

TEST_CASE("bound_th1 .. bound_th4 examples") {
    const auto herm = make_a_operator(identity_ctx(), diag({1, -1}));
    const auto jord = make_a_operator(identity_ctx(), jordan2());
    const auto zero = make_a_operator(identity_ctx(), MatrixXcd(MatrixXcd::Zero(2, 2)));

    SUBCASE("th1") {
        const auto h = bound_th1(herm);
        CHECK(h.rhs == doctest::Approx(1.0));
        CHECK(h.tight);
        const auto j = bound_th1(jord);
        CHECK(j.rhs == doctest::Approx(0.5));
        CHECK(j.tight);
        CHECK(bound_th1(zero).rhs == 0.0);
    }
    SUBCASE("th2") {
        CHECK(bound_th2(herm).rhs == doctest::Approx(1.0));
        CHECK(bound_th2(herm).tight);
        CHECK(bound_th2(jord).rhs == doctest::Approx(0.5));
        CHECK(bound_th2(jord).tight);
        CHECK(bound_th2(zero).rhs == 0.0);
    }
    SUBCASE("th3") {
        const auto h = bound_th3(herm);
        CHECK(h.rhs == doctest::Approx(0.5));
        CHECK(h.holds);
        CHECK_FALSE(h.tight);
        const auto d = bound_th3(make_a_operator(identity_ctx(), diag({1, I})));
        CHECK(d.rhs == doctest::Approx(0.5));
        CHECK(d.lhs == doctest::Approx(1.0));
        CHECK(bound_th3(zero).rhs == 0.0);
    }
    SUBCASE("th4") {
        const auto parts = operator_parts(jord);
        CHECK(parts.re_plus_im == doctest::Approx(sqrt2 / 2));
        CHECK(parts.re_minus_im == doctest::Approx(sqrt2 / 2));
        CHECK(bound_th4(jord).rhs == doctest::Approx(0.5));
        // normal diagonal operator: Re = Im = diag(1, 0)
        const auto n = bound_th4(make_a_operator(identity_ctx(), diag({cd(1, 1), 0})));
        CHECK(n.rhs == doctest::Approx(sqrt2));
        CHECK(n.lhs == doctest::Approx(sqrt2));
        CHECK(n.tight);
        CHECK(bound_th4(zero).rhs == 0.0);
    }
}

TEST_CASE("equality diagnostics") {
    const auto jord = make_a_operator(identity_ctx(), jordan2());
    const auto herm = make_a_operator(identity_ctx(), diag({1, -1}));
    const auto zero = make_a_operator(identity_ctx(), MatrixXcd(MatrixXcd::Zero(2, 2)));

    SUBCASE("half norm") {
        const auto d = equality_half_norm(jord, radius_theta_scan(jord));
        CHECK(d.equality_holds);
        CHECK(d.re_im_constant);
        CHECK(d.disk.is_disk);
        CHECK(d.target == doctest::Approx(0.5));
        CHECK(d.necessity_ok());
        const auto h = equality_half_norm(herm, radius_theta_scan(herm));
        CHECK_FALSE(h.equality_holds);
        CHECK(h.necessity_ok());
    }
    SUBCASE("quarter form") {
        const auto d = equality_quarter_form(jord, radius_theta_scan(jord));
        CHECK(d.equality_holds);
        CHECK(d.re_im_constant);
        CHECK(d.target * d.target == doctest::Approx(0.25));
        CHECK_FALSE(equality_quarter_form(herm, radius_theta_scan(herm)).equality_holds);
        const auto z = equality_quarter_form(zero, radius_theta_scan(zero));
        CHECK(z.equality_holds);
        CHECK(z.re_im_constant);
        CHECK(z.disk.is_disk);
    }
    SUBCASE("converse of the half-norm necessity fails") {
        // J (+) (0.4 + 0.4i): Re and Im parts both have norm 1/2 = ||T||/2,
        // yet w(T) = |0.4 + 0.4i| > 1/2
        MatrixXcd t = MatrixXcd::Zero(3, 3);
        t(0, 1) = 1;
        t(2, 2) = cd(0.4, 0.4);
        const auto op = make_a_operator(identity_ctx(3), t);
        const auto p = operator_parts(op);
        CHECK(p.re == doctest::Approx(0.5));
        CHECK(p.im == doctest::Approx(0.5));
        CHECK(p.norm == doctest::Approx(1.0));
        const auto d = equality_half_norm(op, radius_theta_scan(op));
        CHECK_FALSE(d.equality_holds);
        CHECK_FALSE(d.re_im_constant);
    }
}

TEST_CASE("commutator_lemma and commutator_th5 examples") {
    const auto ctx = identity_ctx();
    const auto t = make_a_operator(ctx, jordan2());
    const auto x = make_a_operator(ctx, mat2(0, 0, 1, 0));

    const auto lem = commutator_lemma(t, x, x, Sign::minus);
    CHECK(lem.lhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lem.rhs == doctest::Approx(sqrt2));
    CHECK(lem.holds);

    const auto z = make_a_operator(ctx, MatrixXcd(MatrixXcd::Zero(2, 2)));
    const auto lz = commutator_lemma(t, z, z, Sign::plus);
    CHECK(lz.lhs == 0.0);
    CHECK(lz.rhs == 0.0);
    CHECK(lz.holds);

    const auto id = make_a_operator(ctx, MatrixXcd(MatrixXcd::Identity(2, 2)));
    const auto lp = commutator_lemma(t, id, id, Sign::plus);
    CHECK(lp.lhs == doctest::Approx(1.0).epsilon(1e-8)); // w(2T) = 2 w(T)
    CHECK(lp.holds);
    CHECK(commutator_lemma(t, id, id, Sign::minus).lhs == 0.0);

    const auto th5 = commutator_th5(t, x, x, Sign::minus);
    CHECK(th5[0].formula_id == FormulaId::th5_i);
    CHECK(th5[0].rhs == doctest::Approx(sqrt2).epsilon(1e-8));
    CHECK(th5[0].lhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(th5[0].holds);
    CHECK(th5[1].holds);

    const auto th5z = commutator_th5(z, x, x, Sign::plus);
    CHECK(th5z[0].rhs == 0.0);
    CHECK(th5z[1].rhs == 0.0);
    CHECK(th5z[0].lhs == 0.0);

    const auto other = make_a_operator(identity_ctx(), jordan2());
    CHECK_THROWS_AS(commutator_lemma(t, other, x, Sign::plus), Error);
    CHECK_THROWS_AS(commutator_th5(t, x, other, Sign::plus), Error);
}

TEST_CASE("commutator_compare examples") {
    const auto ctx = identity_ctx();
    const auto t = make_a_operator(ctx, jordan2());
    const auto s = make_a_operator(ctx, mat2(0, 0, 1, 0));
    const auto c = commutator_compare(t, s, Sign::minus);
    CHECK(c.zamani_bound == doctest::Approx(sqrt2).epsilon(1e-8));
    CHECK(c.alpha1 == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(c.refined31 == doctest::Approx(sqrt2).epsilon(1e-8));
    CHECK(c.w_minus == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(refined_dominates(c, *ctx));
    for (const auto& r : comparison_reports(c, *ctx))
        CHECK(r.holds);

    const auto zero = make_a_operator(ctx, MatrixXcd(MatrixXcd::Zero(2, 2)));
    const auto cz = commutator_compare(t, zero, Sign::plus);
    CHECK(cz.zamani_bound == 0.0);
    CHECK(cz.refined31 == 0.0);
    CHECK(cz.refined32 == 0.0);
    CHECK(cz.w_plus == 0.0);

    Rng rng(19);
    const MatrixXcd g = rng.complex_gaussian_matrix<double>(2, 2);
    const auto herm_s = make_a_operator(ctx, MatrixXcd((g + g.adjoint()) / 2.0));
    const auto herm_t = make_a_operator(ctx, diag({1, -1}));
    const auto ch = commutator_compare(herm_t, herm_s, Sign::plus);
    CHECK(ch.refined31 < ch.zamani_bound * (1 - 1e-3));
}

TEST_CASE("bounds hold across random instances") {
    Rng rng(4242);
    int th1_wins = 0, th3_wins = 0, th2_wins = 0, th4_wins = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::Index n = 2 + trial % 5;
        const auto ctx = psd_decompose<double>(random_psd(rng, n, 1 + (trial / 5) % n));
        const auto t = make_a_operator(ctx, random_adjointable(rng, *ctx));
        const auto x = make_a_operator(ctx, random_adjointable(rng, *ctx));
        const auto y = make_a_operator(ctx, random_adjointable(rng, *ctx));
        const auto rad = radius_theta_scan(t);
        const auto p = operator_parts(t);

        std::vector<BoundReport<double>> all = classic_bounds(t, rad, p);
        all.push_back(bound_th1(t, rad, p));
        all.push_back(bound_th2(t, rad, p));
        all.push_back(bound_th3(t, rad, p));
        all.push_back(bound_th4(t, rad, p));
        for (Sign sg : {Sign::plus, Sign::minus}) {
            const auto wc = commutator_radius(t, x, y, sg, 720);
            all.push_back(commutator_lemma(t, x, y, sg, p, wc));
            for (const auto& r : commutator_th5(t, x, y, sg, p, rad, wc))
                all.push_back(r);
            const auto cmp = commutator_compare(t, x, sg, p, rad, operator_parts(x), radius_theta_scan(x));
            CHECK(refined_dominates(cmp, *ctx));
            for (const auto& r : comparison_reports(cmp, *ctx))
                all.push_back(r);
        }
        for (const auto& r : all) {
            INFO("formula ", to_string(r.formula_id), " trial ", trial);
            CHECK(r.holds);
        }

        // each refinement dominates its classical counterpart
        const double scale = std::max({rad.upper, ctx->lambda_max, p.norm});
        CHECK(th1_rhs(p) >= p.norm / 2 - 1e-10 * scale);
        CHECK(th3_rhs(p) >= p.norm / 2 - 1e-10 * scale);
        CHECK(th2_radicand(p) >= p.sharp_sum / 4 - 1e-10 * scale);
        CHECK(th4_radicand(p) >= p.sharp_sum / 4 - 1e-10 * scale);

        const auto dh = equality_half_norm(t, rad);
        const auto dq = equality_quarter_form(t, rad);
        CHECK(dh.necessity_ok());
        CHECK(dq.necessity_ok());

        (th1_rhs(p) > th3_rhs(p) ? th1_wins : th3_wins)++;
        (th2_radicand(p) > th4_radicand(p) ? th2_wins : th4_wins)++;
    }
    MESSAGE("th1 > th3: ", th1_wins, ", th3 >= th1: ", th3_wins, "; th2 > th4: ", th2_wins, ", th4 >= th2: ", th4_wins);
}
