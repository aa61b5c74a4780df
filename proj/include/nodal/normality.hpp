#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodal/linalg.hpp"
#include "nodal/nodes.hpp"

namespace nodal {

/// Points-by-monomials matrix: row i holds the degree-d monomials evaluated
/// at the normalized point i, columns in monomial_basis order.
struct EvaluationMatrix {
    PointSet points;
    unsigned degree;
    std::vector<Monomial> basis;
    Matrix entries;
};

EvaluationMatrix evaluation_matrix(const PointSet& points, unsigned degree);

/// Rank, defect and per-point separability of a point set at one degree.
/// defect == 0 means the set is d-normal (imposes independent conditions).
struct NormalityReport {
    unsigned degree = 0;
    std::size_t point_count = 0;
    std::size_t rank = 0;    // number of independent conditions I
    std::size_t defect = 0;  // point_count - rank
    // separable[i]: a degree-d form vanishes on the other points but not on
    // point i (equivalently dropping row i lowers the rank).
    std::vector<bool> separable;
    // Some dependent subset of point indices when defect > 0; dependence is
    // guaranteed, minimality is not.
    std::optional<std::vector<std::size_t>> dependent_witness;

    bool d_normal() const { return defect == 0; }
};

NormalityReport independent_conditions(const PointSet& points, unsigned degree);

/// Factoriality via the homology-rank criterion: a degree-n nodal
/// hypersurface in P^4 with node set S is factorial iff S imposes
/// independent conditions on degree-(2n-5) forms; the fourth homology group
/// has rank #S - I + 1.
struct FactorialityVerdict {
    unsigned n = 0;
    std::size_t node_count = 0;
    std::size_t rank = 0;  // I at degree 2n-5
    std::size_t h4_rank = 0;
    bool factorial = false;
    // Criteria that certified the verdict: always "direct-rank"; plus
    // "count-bound" when s <= (n-1)^2/4 and "eisenbud-koh" when the flat
    // incidence test applies.
    std::vector<std::string> trace;
    NormalityReport normality;
};

FactorialityVerdict h4_rank(const NodalInstance& inst);

/// A degree-d form vanishing on every point except `index`, nonzero there.
/// Throws NotSeparable when the point's condition is dependent.
HomogeneousForm separating_form(const PointSet& points, std::size_t index,
                                unsigned degree);
HomogeneousForm separating_form(const PointSet& points, const std::string& label,
                                unsigned degree);

}  // namespace nodal
