#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nodal/nodes.hpp"

namespace nodal {

inline constexpr std::uint64_t kDefaultSubsetBudget = 10'000'000;

enum class IncidenceStatus { Exact, LowerBound };

std::string to_string(IncidenceStatus s);

/// Measured maximum of points on one degree-k plane curve. `curve` is the
/// witness when the maximizing subset pinned the curve down uniquely;
/// `members` are the counted point indices.
struct CurveIncidence {
    std::size_t count = 0;
    IncidenceStatus status = IncidenceStatus::Exact;
    std::optional<HomogeneousForm> curve;
    std::vector<std::size_t> members;
};

/// Maximum number of the P^2 points on a single curve of degree k. Exact
/// when C(s, k(k+3)/2) fits in the budget: every such subset is enumerated
/// and incidence is counted on its curve pencil (a point counts when some
/// curve through the subset passes through it too). Otherwise `budget`
/// random subsets are sampled and the result is a lower bound.
CurveIncidence max_on_plane_curve(const PointSet& points2d, unsigned k,
                                  std::uint64_t budget = kDefaultSubsetBudget);

/// Flat-incidence criterion for d-normality: if no dk+2 points lie in a
/// k-plane for every k >= 1, the set imposes independent conditions at
/// degree d.
struct EkEntry {
    unsigned k = 0;
    std::size_t threshold = 0;  // dk + 2
    std::size_t max_in_flat = 0;
    bool measured = false;  // false when threshold > point count (vacuous)
    bool ok = true;
};

struct EkReport {
    unsigned degree = 0;
    std::size_t point_count = 0;
    bool satisfied = false;
    std::vector<EkEntry> entries;
    std::optional<unsigned> first_violation_k;
    std::optional<PointSet> violation_witness;
};

EkReport eisenbud_koh_check(const PointSet& points, unsigned degree,
                            std::uint64_t budget = kDefaultSubsetBudget);

/// Base-point-freeness thresholds on P^2: m = floor((d+3)/2), curve
/// threshold k(d+3-k)-1 for k = 1..m, size cap max{m(d+3-m)-1, m^2}.
unsigned bese_m(unsigned d);
std::size_t bese_curve_threshold(unsigned k, unsigned d);
std::size_t bese_size_cap(unsigned d);

struct BeseEntry {
    unsigned k = 0;
    std::size_t threshold = 0;
    std::size_t measured = 0;
    IncidenceStatus status = IncidenceStatus::Exact;
    bool ok = false;
};

struct BeseReport {
    unsigned degree = 0;
    std::size_t point_count = 0;
    unsigned m = 0;
    std::size_t size_cap = 0;
    bool size_ok = false;
    std::vector<BeseEntry> entries;
    bool satisfied = false;
    // d = 3 sits in tension with the classical del Pezzo count; uses are
    // recorded so downstream readers can audit them.
    bool degree3_note = false;
};

/// Pure-arithmetic core: thresholds and verdict from already-measured
/// incidence maxima (entry k-1 holds the degree-k measurement).
BeseReport bese_verdict(std::size_t point_count, unsigned degree,
                        const std::vector<std::pair<std::size_t, IncidenceStatus>>& measured);

/// Measures incidences with max_on_plane_curve, then applies bese_verdict.
/// d >= 3, ambient dimension 2.
BeseReport bese_condition(const PointSet& points2d, unsigned degree,
                          std::uint64_t budget = kDefaultSubsetBudget);

/// Degree-d plane curve through every point except `index`. When
/// bese_condition holds this must succeed; a NotSeparable escape marks the
/// sampled incidence bounds wrong and is rethrown flagged as a red-flag
/// event.
HomogeneousForm bese_separator(const PointSet& points2d, std::size_t index,
                               unsigned degree);

/// Node-position bounds: collinear cap n-1, and the plane test (a 2-plane
/// with more than n(n-1)/2 nodes must lie inside the hypersurface).
struct PositionReport {
    std::size_t max_collinear = 0;
    std::size_t collinear_bound = 0;  // n-1
    bool collinear_ok = false;
    std::optional<PointSet> collinear_witness;

    std::size_t max_in_plane = 0;
    std::size_t plane_threshold = 0;  // n(n-1)/2
    bool plane_over_threshold = false;
    // Set when a plane is over threshold: whether F restricts to zero on it
    // (nullopt when no form was available to check).
    std::optional<bool> plane_contained_in_hypersurface;
    // Over-threshold plane implies the hypersurface holds >= (n-1)^2
    // singular points; records whether the listed nodes meet that count.
    std::optional<bool> node_count_meets_lemma;
    std::vector<std::string> flags;
};

PositionReport node_position_bounds(const NodalInstance& inst);

/// Projection-incidence fuzzer: random sets below the node-count bound and
/// within the curve-incidence budget are projected to P^2; a degree-k image
/// curve holding more than k(n-1) points is reported as a candidate
/// counterexample (genericity unverified). For k <= 2 a violation is a bug.
struct FuzzViolation {
    unsigned trial = 0;
    std::uint64_t seed = 0;
    unsigned k = 0;
    std::size_t count = 0;
    std::size_t bound = 0;
};

struct FuzzReport {
    unsigned n = 0;
    unsigned trials = 0;
    unsigned k_max = 0;
    std::size_t set_size = 0;
    std::vector<FuzzViolation> violations;
    std::vector<std::uint64_t> trial_seeds;  // per-trial replay seeds
    std::size_t regenerations = 0;
};

FuzzReport conjecture15_fuzz(unsigned n, unsigned trials, Rng& rng,
                             unsigned k_max = 2);

/// Incidence summary of a point set: flat maxima with witnesses, and curve
/// maxima for P^2 sets.
struct ConfigurationProfile {
    std::size_t point_count = 0;
    std::size_t ambient_dim = 0;
    std::size_t max_collinear = 0;
    std::optional<PointSet> collinear_witness;
    std::optional<std::size_t> max_in_2plane;
    std::optional<PointSet> plane_witness;
    std::optional<std::size_t> max_in_hyperplane;
    std::optional<PointSet> hyperplane_witness;
    std::vector<std::pair<unsigned, CurveIncidence>> curves;  // P^2 only
};

ConfigurationProfile configuration_profile(const PointSet& points,
                                           unsigned curve_k_max = 0,
                                           std::uint64_t budget = kDefaultSubsetBudget);

/// Chart coordinates of coplanar P^N points in a spanning basis of their
/// plane (helper for conic checks on clusters).
PointSet plane_chart_coordinates(const PointSet& coplanar);

}  // namespace nodal
