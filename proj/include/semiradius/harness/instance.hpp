#pragma once
//
// Seeded test instances (A, T). Every construction is deterministic in its
// seed; the named constructions realize the equality cases of the classical
// half-norm bounds.
//

#include "semiradius/random.hpp"
#include "semiradius/semi_hilbert.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace semiradius::harness {

enum class Construction {
    random,                        // Gaussian T leaving null(A) invariant
    nilpotent_half,                // T^2 = 0 exactly, so A T^2 = 0
    shared_eigenbasis_selfadjoint, // A, T diagonal in one unitary basis, T real: A T = T* A
    nonadjointable_probe,          // singular A, dense T with R(T* A) not inside R(A)
};

std::string_view to_string(Construction c);
std::optional<Construction> parse_construction(std::string_view name);

struct InstanceSpec {
    int dim = 2;
    int rank_a = 2;
    Construction construction = Construction::random;
    std::uint64_t seed = 0;
    double scale = 1.0; // multiplies the entries of both A and T

    /// Throws Error(invalid_argument) on a violated invariant.
    void validate() const;
};

/// One instance. The companions X, Y (generalized commutators TX +- YT) and
/// S (the pair (T, S)) are optional; when present they share A with T.
struct Instance {
    MatrixXcd a;
    MatrixXcd t;
    std::optional<MatrixXcd> x, y, s;
    std::optional<InstanceSpec> spec; // provenance, when generated

    Eigen::Index dim() const { return a.rows(); }
};

inline constexpr int probe_retry_budget = 100;

/// Throws Error(invalid_argument) for a bad spec or when the probe exhausts
/// its retry budget.
Instance gen_instance(const InstanceSpec& spec);

/// Adjointable companions X, Y, S for the context of `inst`, drawn from `seed`.
void add_companions(Instance& inst, const PsdContext<double>& ctx, std::uint64_t seed);

/// Gaussian operator leaving null(A) invariant, expressed in A's eigenbasis.
MatrixXcd random_adjointable(Rng& rng, const PsdContext<double>& ctx);

} // namespace semiradius::harness
