#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nodal/linalg.hpp"
#include "nodal/scalar.hpp"

namespace nodal {

/// Point of P^N in normalized homogeneous coordinates: the first nonzero
/// coordinate is scaled to 1, so equality is coordinate-wise.
class ProjectivePoint {
public:
    explicit ProjectivePoint(std::vector<Scalar> coords);

    std::size_t ambient_dim() const { return coords_.size() - 1; }
    FieldSpec field() const { return coords_.front().field(); }
    const std::vector<Scalar>& coords() const { return coords_; }
    const Scalar& operator[](std::size_t i) const { return coords_[i]; }

    bool operator==(const ProjectivePoint& b) const;
    bool operator!=(const ProjectivePoint& b) const { return !(*this == b); }
    /// Lexicographic order on normalized coordinates (same field only).
    int cmp(const ProjectivePoint& b) const;
    bool operator<(const ProjectivePoint& b) const { return cmp(b) < 0; }

    std::string to_string() const;  // "(1 : 2 : 0)" style, for messages

private:
    std::vector<Scalar> coords_;  // normalized
};

ProjectivePoint random_point(std::size_t ambient_dim, const FieldSpec& f, Rng& rng);

/// Ordered set of pairwise distinct points of one P^N, with optional labels.
/// Duplicates are rejected at construction: node sets are reduced.
class PointSet {
public:
    PointSet(std::size_t ambient_dim, FieldSpec field)
        : ambient_dim_(ambient_dim), field_(field) {}

    static PointSet of(std::vector<ProjectivePoint> points,
                       std::vector<std::string> labels = {});

    void add(ProjectivePoint p, std::string label = "");

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    std::size_t ambient_dim() const { return ambient_dim_; }
    FieldSpec field() const { return field_; }
    const ProjectivePoint& operator[](std::size_t i) const { return points_[i]; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    std::optional<std::size_t> index_of(const std::string& label) const;
    bool contains(const ProjectivePoint& p) const;

    PointSet without(std::size_t index) const;
    PointSet subset(const std::vector<std::size_t>& indices) const;

    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::size_t ambient_dim_;
    FieldSpec field_;
    std::vector<ProjectivePoint> points_;
    std::vector<std::string> labels_;
};

/// Rank of the (#points) x (N+1) coordinate matrix. The set lies in a
/// k-flat iff the rank is at most k+1.
std::size_t span_rank(const PointSet& points);

struct FlatIncidence {
    std::size_t count;
    PointSet witness;
};

/// Maximum number of the points lying in a single k-flat, with a witness.
/// Exact: enumerates (k+1)-subsets and counts points in each subset's span.
/// Throws BudgetExceeded if C(#points, k+1) exceeds the subset budget.
FlatIncidence max_points_in_flat(const PointSet& points, std::size_t k,
                                 std::uint64_t budget = 10'000'000);

/// Linear flat of dimension `dim` in P^N, cut out by N-dim independent
/// linear forms (each stored as its N+1 coefficients).
struct LinearFlat {
    std::size_t ambient_dim;
    std::size_t dim;
    std::vector<std::vector<Scalar>> cutting_forms;

    bool contains(const ProjectivePoint& p) const;

    /// Flat spanned by the given points (dim = rank - 1).
    static LinearFlat span_of(const PointSet& points);
};

Scalar eval_linear(const std::vector<Scalar>& form, const ProjectivePoint& p);

/// Linear projection P^N -> P^2 (N = 3 or 4) from an (N-3)-dimensional
/// center: three independent linear forms vanishing on the center.
struct Projection {
    std::size_t source_dim;
    LinearFlat center;
    std::array<std::vector<Scalar>, 3> forms;

    /// Builds the projection defined by three forms; validates independence
    /// and that the common zero locus has dimension N-3.
    static Projection from_forms(std::size_t source_dim,
                                 std::array<std::vector<Scalar>, 3> forms);
};

/// Random projection whose center avoids `avoid` and whose images of
/// `avoid` are pairwise distinct; retries until both hold.
/// Throws GenericityFailure after 100 retries.
Projection random_projection(std::size_t source_dim, const PointSet& avoid,
                             Rng& rng);

/// Image of a point off the center. Throws PointOnCenter otherwise.
ProjectivePoint project(const Projection& proj, const ProjectivePoint& pt);

/// Coordinate chart on a hyperplane H = {h = 0} in P^4: a choice of four
/// spanning points identifying H with P^3, plus the four linear forms on
/// P^4 that read off chart coordinates of points of H.
struct HyperplaneChart {
    std::vector<Scalar> hyperplane;  // linear form h on P^4
    std::array<ProjectivePoint, 4> basis;
    std::array<std::vector<Scalar>, 4> coord_forms;

    static HyperplaneChart from_form(std::vector<Scalar> h);

    ProjectivePoint embed(const ProjectivePoint& chart_pt) const;
    /// Chart coordinates of a point on H. Throws if the point is off H.
    ProjectivePoint chart_coords(const ProjectivePoint& p) const;
};

}  // namespace nodal
