#include "semiradius/harness/cli.hpp"

#include "semiradius/harness/suite.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <optional>

namespace semiradius::harness {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_dims(const std::string& text) {
    auto to_int = [&](std::string_view s) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw UsageError("--dims expects a..b or a single integer, got '" + text + "'");
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = to_int(text);
        return {v, v};
    }
    return {to_int(std::string_view(text).substr(0, dots)), to_int(std::string_view(text).substr(dots + 2))};
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty())
        out << text;
    else
        write_text(path, text);
}

TolerancePolicy<double> policy(std::optional<double> check, std::optional<double> equality) {
    TolerancePolicy<double> tol;
    if (check)
        tol.check_rel_tol = *check;
    if (equality)
        tol.equality_rel_tol = *equality;
    try {
        tol.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return tol;
}

struct LoadedOperator {
    Instance inst;
    ContextPtr<double> ctx;
    AOperator<double> op;
};

LoadedOperator load(const std::string& path, const TolerancePolicy<double>& tol) {
    LoadedOperator l;
    l.inst = read_instance(path);
    l.ctx = psd_decompose<double>(l.inst.a, tol);
    l.op = make_a_operator(l.ctx, l.inst.t);
    return l;
}

std::map<std::string, Construction> construction_map() {
    std::map<std::string, Construction> m;
    for (auto c : {Construction::random, Construction::nilpotent_half, Construction::shared_eigenbasis_selfadjoint,
                   Construction::nonadjointable_probe})
        m.emplace(std::string(to_string(c)), c);
    return m;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical radius and inequality checks in semi-Hilbertian spaces", "semiradius"};
    app.require_subcommand(1);
    const auto constructions = construction_map();

    // gen
    InstanceSpec gspec;
    std::string gen_construction = "random";
    int gen_rank = -1;
    bool gen_companions = false;
    std::string out_path;
    auto* gen = app.add_subcommand("gen", "write a seeded instance as JSON");
    gen->add_option("--dim", gspec.dim, "dimension (2..64)")->required();
    gen->add_option("--rank", gen_rank, "rank of A (default: dim)");
    gen->add_option("--construction", gen_construction, "instance family")
        ->check(CLI::IsMember(constructions));
    gen->add_option("--seed", gspec.seed, "generator seed");
    gen->add_option("--scale", gspec.scale, "entry magnitude");
    gen->add_flag("--companions", gen_companions, "add adjointable X, Y, S");
    gen->add_option("--out", out_path, "output file (default: stdout)");

    // shared by the instance readers
    std::string in_path;
    int grid_n = 720;
    std::int64_t samples = 0;
    std::optional<double> check_tol, equality_tol;
    std::uint64_t seed = 42;
    int n_theta = 360, n_interior = -1;

    auto* radius = app.add_subcommand("radius", "enclose w_A(T) for an instance file");
    radius->add_option("--in", in_path, "instance JSON")->required();
    radius->add_option("--grid-n", grid_n, "theta grid size");
    radius->add_option("--samples", samples, "also run the sampling estimator with this many draws");
    radius->add_option("--seed", seed, "sampling seed");
    radius->add_option("--tol", check_tol, "relative check tolerance");

    auto* bounds = app.add_subcommand("bounds", "evaluate every bound on an instance file");
    bounds->add_option("--in", in_path, "instance JSON")->required();
    bounds->add_option("--grid-n", grid_n, "theta grid size");
    bounds->add_option("--tol", check_tol, "relative check tolerance");
    bounds->add_option("--equality-tol", equality_tol, "relative equality tolerance");

    auto* range = app.add_subcommand("range", "write a W_A(T) point cloud as CSV");
    range->add_option("--in", in_path, "instance JSON")->required();
    range->add_option("--n-theta", n_theta, "boundary directions");
    range->add_option("--interior", n_interior, "sampled interior points (default: n-theta)");
    range->add_option("--seed", seed, "sampling seed");
    range->add_option("--out", out_path, "output file (default: stdout)");

    SuiteConfig cfg;
    std::string dims = "2..8";
    std::string suite_construction = "random";
    bool no_commutators = false;
    auto* verify = app.add_subcommand("verify", "run the inequality suite");
    verify->add_option("--n", cfg.n, "instance count");
    verify->add_option("--dims", dims, "dimension range a..b");
    verify->add_option("--seed", cfg.seed, "suite seed");
    verify->add_option("--grid-n", cfg.grid_n, "theta grid size");
    verify->add_option("--samples", cfg.samples, "sampling-oracle draws per instance");
    verify->add_option("--tol", check_tol, "relative check tolerance");
    verify->add_option("--equality-tol", equality_tol, "relative equality tolerance");
    verify->add_option("--construction", suite_construction, "instance family")
        ->check(CLI::IsMember(constructions));
    verify->add_flag("--no-commutators", no_commutators, "skip the commutator bounds");
    verify->add_option("--out", out_path, "report file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        const int code = app.exit(e, out, msg);
        if (code == 0)
            return exit_ok;
        std::string line = msg.str();
        while (!line.empty() && line.back() == '\n')
            line.pop_back();
        if (const auto nl = line.find('\n'); nl != std::string::npos)
            line.resize(nl);
        err << "semiradius: usage: " << line << '\n';
        return exit_usage;
    }

    try {
        if (*gen) {
            gspec.construction = constructions.at(gen_construction);
            gspec.rank_a = gen_rank < 0 ? gspec.dim : gen_rank;
            try {
                gspec.validate();
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            Instance inst = gen_instance(gspec);
            if (gen_companions) {
                const auto ctx = psd_decompose<double>(inst.a);
                if (is_adjointable(*ctx, inst.t))
                    add_companions(inst, *ctx, gspec.seed + 1);
            }
            emit(out, out_path, instance_to_json(inst));
            return exit_ok;
        }
        if (*radius) {
            const auto l = load(in_path, policy(check_tol, std::nullopt));
            nlohmann::json j = to_json(radius_theta_scan(l.op, grid_n, true));
            j["seminorm"] = op_seminorm(l.op);
            if (samples > 0) {
                const auto s = radius_sampling(l.op, samples, seed);
                j["sampling"] = {{"value", s.value}, {"accepted", s.accepted}, {"degenerate", s.degenerate}};
            }
            out << j.dump(2) << '\n';
            return exit_ok;
        }
        if (*bounds) {
            const auto l = load(in_path, policy(check_tol, equality_tol));
            const auto& op = l.op;
            const auto rad = radius_theta_scan(op, grid_n, true);
            const auto p = operator_parts(op);
            auto reps = classic_bounds(op, rad, p);
            reps.push_back(bound_th1(op, rad, p));
            reps.push_back(bound_th2(op, rad, p));
            reps.push_back(bound_th3(op, rad, p));
            reps.push_back(bound_th4(op, rad, p));
            nlohmann::json j;
            if (l.inst.x && l.inst.y) {
                const auto x = make_a_operator(l.ctx, *l.inst.x);
                const auto y = make_a_operator(l.ctx, *l.inst.y);
                for (Sign sg : {Sign::plus, Sign::minus}) {
                    const auto wc = commutator_radius(op, x, y, sg, grid_n);
                    reps.push_back(commutator_lemma(op, x, y, sg, p, wc));
                    for (const auto& r : commutator_th5(op, x, y, sg, p, rad, wc))
                        reps.push_back(r);
                }
            }
            if (l.inst.s) {
                const auto s = make_a_operator(l.ctx, *l.inst.s);
                auto cmp = commutator_compare(op, s, Sign::minus, p, rad, operator_parts(s),
                                              radius_theta_scan(s, grid_n, true), grid_n);
                for (Sign sg : {Sign::plus, Sign::minus}) {
                    cmp.sign = sg;
                    for (const auto& r : comparison_reports(cmp, *l.ctx))
                        reps.push_back(r);
                }
                j["commutator"] = to_json(cmp);
            }
            bool all_hold = true;
            nlohmann::json list = nlohmann::json::array();
            for (const auto& r : reps) {
                list.push_back(to_json(r));
                all_hold = all_hold && r.holds;
            }
            j["radius"] = to_json(rad);
            j["parts"] = to_json(p);
            j["bounds"] = std::move(list);
            j["equality"] = {{"half_norm", to_json(equality_half_norm(op, rad))},
                             {"quarter_form", to_json(equality_quarter_form(op, rad))}};
            out << j.dump(2) << '\n';
            if (!all_hold) {
                err << "semiradius: counterexample: a bound failed on " << in_path << '\n';
                return exit_counterexample;
            }
            return exit_ok;
        }
        if (*range) {
            const auto l = load(in_path, TolerancePolicy<double>{});
            if (n_theta < 1)
                throw UsageError("--n-theta must be positive");
            emit(out, out_path, range_cloud_csv(range_cloud(l.op, n_theta, seed, n_interior)));
            return exit_ok;
        }
        if (*verify) {
            std::tie(cfg.dim_lo, cfg.dim_hi) = parse_dims(dims);
            cfg.construction = constructions.at(suite_construction);
            cfg.commutators = !no_commutators;
            cfg.tol = policy(check_tol, equality_tol);
            try {
                cfg.validate();
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            const auto rep = run_suite(cfg);
            emit(out, out_path, to_json(rep).dump(2) + '\n');
            if (!rep.counterexamples.empty()) {
                err << "semiradius: " << rep.counterexamples.size() << " counterexample(s); first: "
                    << rep.counterexamples.front().check << " on instance " << rep.counterexamples.front().instance
                    << '\n';
                return exit_counterexample;
            }
            return exit_ok;
        }
    } catch (const UsageError& e) {
        err << "semiradius: usage: " << e.what() << '\n';
        return exit_usage;
    } catch (const IoError& e) {
        err << "semiradius: io: " << e.what() << '\n';
        return exit_io;
    } catch (const Error& e) {
        err << "semiradius: " << e.what() << '\n';
        return exit_invalid;
    } catch (const nlohmann::json::exception& e) {
        err << "semiradius: io: " << e.what() << '\n';
        return exit_io;
    }
    err << "semiradius: usage: no subcommand\n";
    return exit_usage;
}

} // namespace semiradius::harness
