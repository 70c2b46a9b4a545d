#include "test_support.hpp"

#include "semiradius/harness/suite.hpp"

#include <doctest.h>

#include <filesystem>

using namespace semiradius;
using namespace semiradius::harness;
using semiradius::testing::max_abs;

namespace {

InstanceSpec make_spec(int dim, int rank, Construction c, std::uint64_t seed, double scale = 1.0) {
    InstanceSpec s;
    s.dim = dim;
    s.rank_a = rank;
    s.construction = c;
    s.seed = seed;
    s.scale = scale;
    return s;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected semiradius::Error");
    return ErrorKind::invalid_argument;
}

} // namespace

TEST_CASE("InstanceSpec validation") {
    CHECK_NOTHROW(make_spec(2, 0, Construction::random, 1).validate());
    CHECK_NOTHROW(make_spec(64, 64, Construction::random, 1).validate());
    CHECK_THROWS_AS(make_spec(1, 1, Construction::random, 1).validate(), Error);
    CHECK_THROWS_AS(make_spec(65, 1, Construction::random, 1).validate(), Error);
    CHECK_THROWS_AS(make_spec(3, 4, Construction::random, 1).validate(), Error);
    CHECK_THROWS_AS(make_spec(3, -1, Construction::random, 1).validate(), Error);
    CHECK_THROWS_AS(make_spec(3, 3, Construction::nonadjointable_probe, 1).validate(), Error);
    CHECK_THROWS_AS(make_spec(3, 2, Construction::random, 1, 0.0).validate(), Error);
    CHECK_THROWS_AS(gen_instance(make_spec(3, 5, Construction::random, 1)), Error);

    for (auto c : {Construction::random, Construction::nilpotent_half, Construction::shared_eigenbasis_selfadjoint,
                   Construction::nonadjointable_probe})
        CHECK(parse_construction(to_string(c)) == c);
    CHECK_FALSE(parse_construction("triangular").has_value());
}

TEST_CASE("gen_instance is deterministic per seed") {
    for (auto c : {Construction::random, Construction::nilpotent_half, Construction::shared_eigenbasis_selfadjoint,
                   Construction::nonadjointable_probe}) {
        const auto spec = make_spec(5, 3, c, 777);
        CHECK(instance_to_json(gen_instance(spec)) == instance_to_json(gen_instance(spec)));
        CHECK(instance_to_json(gen_instance(spec)) != instance_to_json(gen_instance(make_spec(5, 3, c, 778))));
    }
}

TEST_CASE("instance JSON round-trips exactly") {
    const auto spec = make_spec(6, 4, Construction::random, 31);
    Instance inst = gen_instance(spec);
    add_companions(inst, *psd_decompose<double>(inst.a), 5);
    const std::string text = instance_to_json(inst);
    const Instance back = instance_from_json(text);
    CHECK(back.a == inst.a);
    CHECK(back.t == inst.t);
    REQUIRE(back.x.has_value());
    CHECK(*back.x == *inst.x);
    CHECK(*back.y == *inst.y);
    CHECK(*back.s == *inst.s);
    REQUIRE(back.spec.has_value());
    CHECK(back.spec->seed == 31);
    CHECK(back.spec->rank_a == 4);
    CHECK(back.spec->construction == Construction::random);
    CHECK(instance_to_json(back) == text);

    // through a file, with awkward values
    Instance odd;
    odd.a = MatrixXcd::Identity(2, 2);
    odd.t = MatrixXcd::Zero(2, 2);
    odd.t(0, 1) = {0.1, -1.0 / 3.0};
    odd.t(1, 0) = {-0.0, 5e-324};
    odd.t(1, 1) = {1.7976931348623157e308, 2.2250738585072014e-308};
    const auto path = std::filesystem::temp_directory_path() / "semiradius_roundtrip.json";
    write_instance(path, odd);
    const Instance od = read_instance(path);
    std::filesystem::remove(path);
    CHECK(od.t == odd.t);
    CHECK(std::signbit(od.t(1, 0).real()));
    CHECK_FALSE(od.spec.has_value());
}

TEST_CASE("instance JSON errors") {
    CHECK_THROWS_AS(instance_from_json("{not json"), IoError);
    CHECK_THROWS_AS(instance_from_json("[1, 2]"), IoError);
    CHECK_THROWS_AS(instance_from_json(R"({"A": [[[1,0]]]})"), IoError);
    CHECK_THROWS_AS(instance_from_json(R"({"A": [[[1,0]]], "T": [[1]]})"), IoError);
    CHECK_THROWS_AS(instance_from_json(R"({"A": [[[1,0]]], "T": [[["a",0]]]})"), IoError);
    CHECK_THROWS_AS(read_instance("/nonexistent/dir/x.json"), IoError);

    CHECK(kind_of([] {
              instance_from_json(R"({"A": [[[1,0],[0,0]],[[0,0],[1,0]]], "T": [[[0,0]]]})");
          }) == ErrorKind::dimension_mismatch);
    CHECK(kind_of([] {
              instance_from_json(R"({"A": [[[1,0],[0,0]],[[0,0]]], "T": [[[0,0]]]})");
          }) == ErrorKind::dimension_mismatch);
    CHECK(kind_of([] {
              instance_from_json(R"({"dim": 3, "A": [[[1,0]]], "T": [[[0,0]]]})");
          }) == ErrorKind::dimension_mismatch);
    CHECK(kind_of([] {
              instance_from_json(R"({"A": [[[1,0]]], "T": [[[0,0]]], "S": [[[0,0],[0,0]]]})");
          }) == ErrorKind::dimension_mismatch);
}

TEST_CASE("construction guarantees") {
    SUBCASE("random instances are adjointable with the requested rank") {
        for (int n = 2; n <= 9; ++n)
            for (int r = 0; r <= n; ++r) {
                const auto inst = gen_instance(make_spec(n, r, Construction::random, std::uint64_t(100 * n + r)));
                const auto ctx = psd_decompose<double>(inst.a);
                CHECK(ctx->rank == r);
                CHECK(is_adjointable(*ctx, inst.t));
            }
    }
    SUBCASE("nilpotent_half: A T^2 = 0 exactly") {
        for (int n = 2; n <= 10; ++n)
            for (int r = 0; r <= n; ++r) {
                const auto inst = gen_instance(make_spec(n, r, Construction::nilpotent_half, std::uint64_t(n * 31 + r), 1.5));
                const MatrixXcd t2 = inst.t * inst.t;
                CHECK(max_abs(t2) == 0.0);
                CHECK(max_abs(MatrixXcd(inst.a * t2)) == 0.0);
                const auto ctx = psd_decompose<double>(inst.a);
                CHECK(ctx->rank == r);
                CHECK(is_adjointable(*ctx, inst.t));
            }
        const auto inst = gen_instance(make_spec(2, 2, Construction::nilpotent_half, 9));
        const auto op = make_a_operator(psd_decompose<double>(inst.a), inst.t);
        CHECK(classic_bounds(op, radius_theta_scan(op))[0].tight);
    }
    SUBCASE("shared_eigenbasis_selfadjoint: A T = T* A") {
        for (int n = 2; n <= 10; ++n)
            for (int r = 0; r <= n; ++r) {
                const double scale = 0.5 + n;
                const auto inst =
                    gen_instance(make_spec(n, r, Construction::shared_eigenbasis_selfadjoint, std::uint64_t(n + 7 * r), scale));
                CHECK(spectral_norm<double>(MatrixXcd(inst.a * inst.t - inst.t.adjoint() * inst.a)) <=
                      1e-12 * scale * scale);
                CHECK(is_adjointable(*psd_decompose<double>(inst.a), inst.t));
            }
        const auto inst = gen_instance(make_spec(3, 2, Construction::shared_eigenbasis_selfadjoint, 4));
        const auto op = make_a_operator(psd_decompose<double>(inst.a), inst.t);
        CHECK(classic_bounds(op, radius_theta_scan(op))[1].tight);
    }
    SUBCASE("nonadjointable_probe") {
        const auto inst = gen_instance(make_spec(2, 1, Construction::nonadjointable_probe, 3));
        CHECK_FALSE(is_adjointable(*psd_decompose<double>(inst.a), inst.t));
        for (int n = 3; n <= 8; ++n) {
            const auto big = gen_instance(make_spec(n, n - 1, Construction::nonadjointable_probe, std::uint64_t(n)));
            CHECK_FALSE(is_adjointable(*psd_decompose<double>(big.a), big.t));
        }
        // with A = 0 every T is adjointable, so the retry budget runs out
        CHECK(kind_of([] { gen_instance(make_spec(3, 0, Construction::nonadjointable_probe, 1)); }) ==
              ErrorKind::invalid_argument);
    }
    SUBCASE("scale multiplies both matrices") {
        const auto a = gen_instance(make_spec(4, 2, Construction::random, 8));
        const auto b = gen_instance(make_spec(4, 2, Construction::random, 8, 3.0));
        CHECK(max_abs(MatrixXcd(b.a - 3.0 * a.a)) == 0.0);
        CHECK(max_abs(MatrixXcd(b.t - 3.0 * a.t)) == 0.0);
    }
}

TEST_CASE("range cloud CSV") {
    RangeCloud<double> cloud;
    cloud.points = {{0.5, 0.0}, {0.1, -0.2}};
    cloud.thetas = {0.0, std::numeric_limits<double>::quiet_NaN()};
    cloud.boundary_count = 1;
    CHECK(range_cloud_csv(cloud) == "theta,re,im\n0,0.5,0\nnan,0.10000000000000001,-0.20000000000000001\n");
}

TEST_CASE("run_suite") {
    SUBCASE("empty ensemble") {
        SuiteConfig cfg;
        cfg.n = 0;
        cfg.converse_probe = false;
        const auto rep = run_suite(cfg);
        CHECK(rep.instances.empty());
        CHECK(rep.counterexamples.empty());
        const auto j = to_json(rep);
        CHECK(j["instances"].empty());
        CHECK(j["counterexamples"].empty());
        CHECK(j.contains("wall_time"));
    }
    SUBCASE("small random ensemble") {
        SuiteConfig cfg;
        cfg.n = 12;
        cfg.dim_hi = 5;
        cfg.seed = 3;
        cfg.samples = 2000;
        const auto rep = run_suite(cfg);
        CHECK(rep.instances.size() == 12);
        for (const auto& ce : rep.counterexamples)
            FAIL_CHECK("counterexample ", ce.check, " on ", ce.instance, ": ", ce.detail);
        const auto& t = rep.tallies;
        CHECK(t.th1_over_th3 + t.th3_over_th1 == 12);
        CHECK(t.th2_over_th4 + t.th4_over_th2 == 12);
        for (const auto& r : rep.instances) {
            CHECK(r.adjointable);
            CHECK(r.reports.size() == 24);
            CHECK(r.spec.dim >= 2);
            CHECK(r.spec.dim <= 5);
            CHECK(r.spec.rank_a >= 1);
            CHECK(r.spec.rank_a <= r.spec.dim);
        }
        REQUIRE(rep.converse.has_value());
        CHECK(rep.converse->found);
        CHECK(rep.converse->w_lower > rep.converse->norm / 2);

        // identical values on a rerun
        auto j1 = to_json(rep), j2 = to_json(run_suite(cfg));
        j1.erase("wall_time");
        j2.erase("wall_time");
        CHECK(j1.dump() == j2.dump());
    }
    SUBCASE("dims {2}, nilpotent_half: both equality cases hold") {
        SuiteConfig cfg;
        cfg.n = 10;
        cfg.dim_lo = cfg.dim_hi = 2;
        cfg.construction = Construction::nilpotent_half;
        cfg.converse_probe = false;
        const auto rep = run_suite(cfg);
        CHECK(rep.counterexamples.empty());
        for (const auto& r : rep.instances) {
            REQUIRE(r.half_norm.has_value());
            CHECK(r.half_norm->equality_holds);
            CHECK(r.quarter_form->equality_holds);
        }
    }
    SUBCASE("self-adjoint and probe ensembles") {
        SuiteConfig cfg;
        cfg.n = 10;
        cfg.dim_hi = 6;
        cfg.converse_probe = false;
        cfg.construction = Construction::shared_eigenbasis_selfadjoint;
        CHECK(run_suite(cfg).counterexamples.empty());
        cfg.construction = Construction::nonadjointable_probe;
        const auto rep = run_suite(cfg);
        CHECK(rep.counterexamples.empty());
        for (const auto& r : rep.instances)
            CHECK_FALSE(r.adjointable);
    }
    SUBCASE("invalid config") {
        SuiteConfig cfg;
        cfg.dim_lo = 5;
        cfg.dim_hi = 3;
        CHECK_THROWS_AS(run_suite(cfg), Error);
        cfg = SuiteConfig{};
        cfg.grid_n = 2;
        CHECK_THROWS_AS(run_suite(cfg), Error);
    }
}
