#include "semiradius/harness/suite.hpp"

#include <chrono>

namespace semiradius::harness {

using nlohmann::json;

void SuiteConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::invalid_argument, msg); };
    if (n < 0)
        fail("instance count must be nonnegative");
    if (dim_lo < 2 || dim_hi > 64 || dim_lo > dim_hi)
        fail("dims must satisfy 2 <= lo <= hi <= 64");
    if (grid_n < 4)
        fail("grid_n must be at least 4");
    if (samples < 0)
        fail("samples must be nonnegative");
    if (converse_draws < 0)
        fail("converse_draws must be nonnegative");
    tol.validate();
}

std::vector<InstanceSpec> suite_specs(const SuiteConfig& config) {
    config.validate();
    Rng rng(config.seed);
    std::vector<InstanceSpec> specs;
    specs.reserve(std::size_t(config.n));
    const auto span = std::uint64_t(config.dim_hi - config.dim_lo + 1);
    for (int i = 0; i < config.n; ++i) {
        InstanceSpec s;
        s.construction = config.construction;
        s.dim = config.dim_lo + int(rng.next_u64() % span);
        // ranks 1..dim, or 1..dim-1 when A must be singular
        const int top = config.construction == Construction::nonadjointable_probe ? s.dim - 1 : s.dim;
        s.rank_a = 1 + int(rng.next_u64() % std::uint64_t(top));
        s.seed = rng.next_u64();
        specs.push_back(s);
    }
    return specs;
}

namespace {

std::uint64_t companion_seed(const InstanceSpec& spec) {
    // splitmix64 finalizer, so companions do not share the instance stream
    std::uint64_t z = spec.seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void flag(std::vector<Counterexample>& out, int index, std::string check, double lhs, double rhs, double slack,
          std::string detail = {}) {
    out.push_back({index, std::move(check), lhs, rhs, slack, std::move(detail)});
}

void flag_report(std::vector<Counterexample>& out, int index, const BoundReport<double>& r, const char* what = "") {
    if (!r.holds)
        flag(out, index, std::string(to_string(r.formula_id)), r.lhs, r.rhs, r.slack, what);
}

} // namespace

InstanceResult evaluate_instance(int index, const InstanceSpec& spec, const SuiteConfig& config,
                                 std::vector<Counterexample>& out) {
    InstanceResult res;
    res.index = index;
    res.spec = spec;
    res.companion_seed = companion_seed(spec);
    try {
        Instance inst = gen_instance(spec);
        const auto ctx = psd_decompose<double>(inst.a, config.tol);
        res.adjointable = is_adjointable(*ctx, inst.t);
        if (spec.construction == Construction::nonadjointable_probe) {
            if (res.adjointable)
                flag(out, index, "probe_adjointable", 0, 0, 0, "probe instance passed the Douglas test");
            return res;
        }
        if (!res.adjointable) {
            flag(out, index, "not_adjointable", 0, 0, 0, "construction should be adjointable");
            return res;
        }

        const auto op = make_a_operator(ctx, inst.t);
        const auto& tol = ctx->tol;
        res.radius = radius_theta_scan(op, config.grid_n, true);
        res.parts = operator_parts(op);
        const auto& rad = res.radius;
        const auto& p = res.parts;
        const double scale = std::max({rad.upper, ctx->lambda_max, p.norm});

        res.reports = classic_bounds(op, rad, p);
        res.reports.push_back(bound_th1(op, rad, p));
        res.reports.push_back(bound_th2(op, rad, p));
        res.reports.push_back(bound_th3(op, rad, p));
        res.reports.push_back(bound_th4(op, rad, p));

        // each refinement is at least its classical counterpart
        const double slack = tol.check_rel_tol * scale;
        if (th1_rhs(p) < p.norm / 2 - slack)
            flag(out, index, "th1_refines_eqv_lower", th1_rhs(p), p.norm / 2, th1_rhs(p) - p.norm / 2);
        if (th3_rhs(p) < p.norm / 2 - slack)
            flag(out, index, "th3_refines_eqv_lower", th3_rhs(p), p.norm / 2, th3_rhs(p) - p.norm / 2);
        if (th2_radicand(p) < p.sharp_sum / 4 - slack)
            flag(out, index, "th2_refines_eqv1_lower", th2_radicand(p), p.sharp_sum / 4,
                 th2_radicand(p) - p.sharp_sum / 4);
        if (th4_radicand(p) < p.sharp_sum / 4 - slack)
            flag(out, index, "th4_refines_eqv1_lower", th4_radicand(p), p.sharp_sum / 4,
                 th4_radicand(p) - p.sharp_sum / 4);

        if (config.samples > 0) {
            res.sampling = radius_sampling(op, config.samples, spec.seed ^ 0x5A5A5A5A5A5A5A5AULL);
            const double v = res.sampling->value;
            if (v > rad.upper + tol.check_rel_tol * std::max(rad.upper, ctx->lambda_max))
                flag(out, index, "sampling_exceeds_upper", v, rad.upper, rad.upper - v);
        }

        res.half_norm = equality_half_norm(op, rad);
        res.quarter_form = equality_quarter_form(op, rad);
        if (!res.half_norm->necessity_ok())
            flag(out, index, "necessity_half_norm", res.half_norm->max_re_im_deviation, 0, 0,
                 "equality without the constant Re/Im profile or the disk shape");
        if (!res.quarter_form->necessity_ok())
            flag(out, index, "necessity_quarter_form", res.quarter_form->max_re_im_deviation, 0, 0,
                 "equality without the constant Re/Im profile or the disk shape");

        if (spec.construction == Construction::nilpotent_half) {
            const auto& r = res.reports[0]; // eqv_lower
            if (!r.tight)
                flag(out, index, "sharpness_eqv_lower", r.lhs, r.rhs, r.slack, "A T^2 = 0 should attain ||T||/2");
        }
        if (spec.construction == Construction::shared_eigenbasis_selfadjoint) {
            const auto& r = res.reports[1]; // eqv_upper
            if (!r.tight)
                flag(out, index, "sharpness_eqv_upper", r.lhs, r.rhs, r.slack, "A T = T* A should attain ||T||");
        }

        if (config.commutators) {
            add_companions(inst, *ctx, res.companion_seed);
            const auto x = make_a_operator(ctx, *inst.x);
            const auto y = make_a_operator(ctx, *inst.y);
            const auto s = make_a_operator(ctx, *inst.s);
            for (Sign sg : {Sign::plus, Sign::minus}) {
                const auto wc = commutator_radius(op, x, y, sg, config.grid_n);
                res.reports.push_back(commutator_lemma(op, x, y, sg, p, wc));
                for (const auto& r : commutator_th5(op, x, y, sg, p, rad, wc))
                    res.reports.push_back(r);
            }
            auto cmp = commutator_compare(op, s, Sign::minus, p, rad, operator_parts(s),
                                          radius_theta_scan(s, config.grid_n, true), config.grid_n);
            if (!refined_dominates(cmp, *ctx))
                flag(out, index, "refined_dominance", std::max(cmp.refined31, cmp.refined32), cmp.zamani_bound,
                     cmp.zamani_bound - std::max(cmp.refined31, cmp.refined32));
            for (Sign sg : {Sign::plus, Sign::minus}) {
                cmp.sign = sg;
                for (const auto& r : comparison_reports(cmp, *ctx))
                    res.reports.push_back(r);
            }
            res.comparison = cmp;
        }
        for (const auto& r : res.reports)
            flag_report(out, index, r);
    } catch (const std::exception& e) {
        res.error = e.what();
        flag(out, index, "error", 0, 0, 0, e.what());
    }
    return res;
}

ConverseProbe converse_probe(std::uint64_t seed, int draws, int grid_n, const TolerancePolicy<double>& tol) {
    // T = M^{-1} (J (+) d) M under A = M* M is unitarily like J (+) d under I:
    // ||Re|| = ||Im|| = ||T||/2 = 1/2 whenever |Re d|, |Im d| <= 1/2, while
    // w = |d| can exceed 1/2
    ConverseProbe probe;
    probe.dim = 3;
    Rng rng(seed);
    for (int k = 0; k < draws && !probe.found; ++k) {
        ++probe.draws;
        const std::complex<double> d(rng.uniform() - 0.5, rng.uniform() - 0.5);
        MatrixXcd core = MatrixXcd::Zero(3, 3);
        core(0, 1) = 1;
        core(2, 2) = d;
        const MatrixXcd m = rng.complex_gaussian_matrix<double>(3, 3);
        Eigen::PartialPivLU<MatrixXcd> lu(m);
        if (std::abs(lu.determinant()) < 1e-3)
            continue;
        const MatrixXcd a = m.adjoint() * m;
        const MatrixXcd t = lu.solve(MatrixXcd(core * m));
        try {
            const auto ctx = psd_decompose<double>(MatrixXcd((a + a.adjoint()) / 2.0), tol);
            const auto op = make_a_operator(ctx, t);
            const auto parts = operator_parts(op);
            const auto rad = radius_theta_scan(op, grid_n, true);
            const double half = parts.norm / 2, eq = tol.equality_rel_tol * std::max(parts.norm, 1.0);
            if (std::abs(parts.re - half) <= eq && std::abs(parts.im - half) <= eq && rad.lower > half + eq) {
                probe.found = true;
                probe.norm = parts.norm;
                probe.re = parts.re;
                probe.im = parts.im;
                probe.w_lower = rad.lower;
                probe.a = ctx->a;
                probe.t = t;
            }
        } catch (const Error&) {
            // ill-conditioned draw; try another
        }
    }
    return probe;
}

SuiteReport run_suite(const SuiteConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.config = config;
    const auto specs = suite_specs(config);
    rep.instances.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i)
        rep.instances.push_back(evaluate_instance(int(i), specs[i], config, rep.counterexamples));

    for (const auto& r : rep.instances) {
        if (!r.adjointable || !r.error.empty())
            continue;
        (th1_rhs(r.parts) > th3_rhs(r.parts) ? rep.tallies.th1_over_th3 : rep.tallies.th3_over_th1)++;
        (th2_radicand(r.parts) > th4_radicand(r.parts) ? rep.tallies.th2_over_th4 : rep.tallies.th4_over_th2)++;
    }
    if (config.converse_probe)
        rep.converse = converse_probe(config.seed, config.converse_draws, config.grid_n, config.tol);
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace {

json matrix_json(const MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

json to_json(const SuiteReport& rep) {
    const auto& c = rep.config;
    json j;
    j["config"] = {{"n", c.n},
                   {"dims", {c.dim_lo, c.dim_hi}},
                   {"seed", c.seed},
                   {"grid_n", c.grid_n},
                   {"samples", c.samples},
                   {"construction", to_string(c.construction)},
                   {"commutators", c.commutators},
                   {"rank_rel_tol", c.tol.rank_rel_tol},
                   {"check_rel_tol", c.tol.check_rel_tol},
                   {"equality_rel_tol", c.tol.equality_rel_tol}};

    json insts = json::array();
    for (const auto& r : rep.instances) {
        json ji = {{"index", r.index}, {"spec", to_json(r.spec)}, {"adjointable", r.adjointable}};
        if (!r.error.empty())
            ji["error"] = r.error;
        if (r.adjointable && r.error.empty()) {
            ji["radius"] = to_json(r.radius);
            ji["parts"] = to_json(r.parts);
            if (r.sampling)
                ji["sampling"] = {{"value", r.sampling->value}, {"accepted", r.sampling->accepted}};
            json reps = json::array();
            for (const auto& b : r.reports)
                reps.push_back(to_json(b));
            ji["bounds"] = std::move(reps);
            if (r.half_norm && r.quarter_form)
                ji["equality"] = {{"half_norm", to_json(*r.half_norm)}, {"quarter_form", to_json(*r.quarter_form)}};
            if (r.comparison) {
                ji["companion_seed"] = r.companion_seed;
                ji["commutator"] = to_json(*r.comparison);
            }
        }
        insts.push_back(std::move(ji));
    }
    j["instances"] = std::move(insts);

    json ces = json::array();
    for (const auto& ce : rep.counterexamples)
        ces.push_back({{"instance", ce.instance},
                       {"check", ce.check},
                       {"lhs", ce.lhs},
                       {"rhs", ce.rhs},
                       {"slack", ce.slack},
                       {"detail", ce.detail}});
    j["counterexamples"] = std::move(ces);

    const auto& t = rep.tallies;
    j["tallies"] = {{"th1_over_th3", t.th1_over_th3},
                    {"th3_over_th1", t.th3_over_th1},
                    {"th2_over_th4", t.th2_over_th4},
                    {"th4_over_th2", t.th4_over_th2}};
    if (rep.converse) {
        const auto& p = *rep.converse;
        json jp = {{"draws", p.draws}, {"found", p.found}};
        if (p.found) {
            jp["dim"] = p.dim;
            jp["norm"] = p.norm;
            jp["re"] = p.re;
            jp["im"] = p.im;
            jp["w_lower"] = p.w_lower;
            jp["A"] = matrix_json(p.a);
            jp["T"] = matrix_json(p.t);
        }
        j["converse_probe"] = std::move(jp);
    }
    j["wall_time"] = rep.wall_time;
    return j;
}

} // namespace semiradius::harness
