#pragma once
//
// The verification suite: generate an ensemble, evaluate every bound on each
// instance, and collect anything that fails as a counterexample.
//

#include "semiradius/harness/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semiradius::harness {

struct SuiteConfig {
    int n = 200;
    int dim_lo = 2;
    int dim_hi = 8;
    std::uint64_t seed = 42;
    int grid_n = 720;
    std::int64_t samples = 10000; // sampling-oracle draws per instance; 0 disables
    Construction construction = Construction::random;
    bool commutators = true; // companions X, Y, S and the commutator bounds
    bool converse_probe = true;
    int converse_draws = 200;
    TolerancePolicy<double> tol{};

    void validate() const;
};

struct Counterexample {
    int instance = -1; // -1: not tied to a suite instance
    std::string check;
    double lhs = 0, rhs = 0, slack = 0;
    std::string detail;
};

struct InstanceResult {
    int index = 0;
    InstanceSpec spec;
    std::uint64_t companion_seed = 0;
    bool adjointable = false;
    std::string error; // generation or evaluation failure
    RadiusEstimate<double> radius;
    OperatorParts<double> parts;
    std::optional<SamplingResult<double>> sampling;
    std::vector<BoundReport<double>> reports;
    std::optional<EqualityDiagnostic<double>> half_norm, quarter_form;
    std::optional<CommutatorComparison<double>> comparison;
};

struct Tallies {
    int th1_over_th3 = 0, th3_over_th1 = 0;
    int th2_over_th4 = 0, th4_over_th2 = 0;
};

/// Search for an operator whose Re/Im seminorms both equal ||T||/2 while
/// w_A(T) > ||T||/2, i.e. the converse of the half-norm necessity failing.
struct ConverseProbe {
    int draws = 0;
    bool found = false;
    int dim = 0;
    double norm = 0, re = 0, im = 0, w_lower = 0;
    MatrixXcd a, t;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<InstanceResult> instances;
    std::vector<Counterexample> counterexamples;
    Tallies tallies;
    std::optional<ConverseProbe> converse;
    double wall_time = 0;
};

/// The ensemble's instance specs, in order. Deterministic in config.seed.
std::vector<InstanceSpec> suite_specs(const SuiteConfig& config);

/// Evaluate one instance; failures are appended to `out`.
InstanceResult evaluate_instance(int index, const InstanceSpec& spec, const SuiteConfig& config,
                                 std::vector<Counterexample>& out);

ConverseProbe converse_probe(std::uint64_t seed, int draws, int grid_n, const TolerancePolicy<double>& tol);

SuiteReport run_suite(const SuiteConfig& config);

nlohmann::json to_json(const SuiteReport& report);

} // namespace semiradius::harness
