#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nodal/configuration.hpp"

namespace nodal {

enum class SeparatorMethod {
    DirectLinearAlgebra,
    ProjectionBeseCone,
    SweepComposite,
};

std::string to_string(SeparatorMethod m);

struct EvaluationLogEntry {
    std::string point_label;
    std::string value;
    bool expected_zero = true;
    bool ok = false;
};

/// A degree-d form vanishing on every node except the target, with the full
/// evaluation log that re-verified it at construction time.
struct SeparatorCertificate {
    std::string target_label;
    unsigned degree = 0;
    HomogeneousForm form{4, 0, FieldSpec::rationals()};
    SeparatorMethod method = SeparatorMethod::DirectLinearAlgebra;
    std::vector<EvaluationLogEntry> evaluation_log;
    std::uint64_t seed = 0;  // replay seed for randomized methods
};

/// Verifies `form` against the point set (zero away from target, nonzero at
/// it) and packages the certificate. Throws InvariantViolation on any
/// failed evaluation.
SeparatorCertificate certify_separator(const PointSet& points,
                                       std::size_t target_index,
                                       unsigned degree,
                                       HomogeneousForm form,
                                       SeparatorMethod method,
                                       std::uint64_t seed);

/// Sweeping combination: given D0 of degree k through Lambda but not p, and
/// for each q of Delta a degree-k form through (Lambda u Delta u {p}) \ {q}
/// but not q, returns D0 + sum c_q D_q through Lambda u Delta but not p.
/// All premises are re-checked by evaluation; PreconditionViolation names
/// the failing one.
HomogeneousForm sweep(const HomogeneousForm& d0,
                      const std::vector<std::pair<ProjectivePoint, HomogeneousForm>>& dq_list,
                      const ProjectivePoint& p,
                      const PointSet& lambda,
                      const PointSet& delta);

/// Cone over the chart hypersurface {X = 0} with a vertex off the
/// hyperplane: pulls X back along the projection from the vertex onto the
/// hyperplane.
HomogeneousForm cone_from_chart(const HomogeneousForm& x_chart,
                                const HyperplaneChart& chart,
                                const ProjectivePoint& vertex);

/// Degree-d hypersurface of P^4 containing the chart hypersurface X (in H)
/// and the two points p, q off H, but not the point o of H (X(o) != 0).
/// The vertex is found through a random 2-plane over p, q: the plane meets
/// H in a line whose rational intersections with X anchor the cone. Retries
/// with a fresh plane until the line meets X in two rational points; throws
/// GenericityFailure when draws run out.
HomogeneousForm two_point_cone(const HomogeneousForm& x_chart,
                               const HyperplaneChart& chart,
                               const ProjectivePoint& o,
                               const ProjectivePoint& p,
                               const ProjectivePoint& q,
                               Rng& rng,
                               unsigned* plane_draws = nullptr);

/// Mutually disjoint point pairs whose joining lines avoid p, at least
/// min{r-m, floor(r/2)} of them, provided no m+1 of the points are
/// collinear with p. Every returned pair is rank-verified.
std::vector<std::pair<std::size_t, std::size_t>> pair_lines(
    const PointSet& points, const ProjectivePoint& p, std::size_t m);

/// Random hyperplane (linear form) through the given points avoiding the
/// others; bounded retries, GenericityFailure on exhaustion.
std::vector<Scalar> random_hyperplane_through(
    std::size_t ambient_dim, const std::vector<ProjectivePoint>& through,
    const std::vector<ProjectivePoint>& avoid, const FieldSpec& field,
    Rng& rng);

/// Hyperplane-split composite separator: when all but at most four nodes
/// sit on a hyperplane, separate inside the chart and extend by cone /
/// two-point cone / sweeping. Nullopt when the instance is unstructured.
std::optional<HomogeneousForm> sweep_composite_separator(
    const NodalInstance& inst, std::size_t target_index, Rng& rng);

struct SeparatorOutcome {
    SeparatorCertificate primary;
    /// Independent geometric materialization (projection + plane separator
    /// cone, or hyperplane-split composite) when one applies.
    std::optional<SeparatorCertificate> cross_check;
};

/// Separator search at degree 2n-5 for one node. Direct linear algebra is
/// authoritative (complete); when it succeeds and cross-checks are
/// requested, the projection route and the hyperplane-split composite are
/// attempted as independent certificates. When it fails, the geometric
/// routes are asserted to fail too, then NotSeparable propagates.
SeparatorOutcome separator_pipeline(const NodalInstance& inst,
                                    const std::string& node_label, Rng& rng,
                                    bool attempt_cross_checks = true);

}  // namespace nodal
