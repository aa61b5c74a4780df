#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodal/poly.hpp"

namespace nodal {

enum class Provenance { Example11, Ingested, Synthetic };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

/// A nodal-hypersurface instance: the degree, the defining form when known,
/// and the node list under study. Ingested instances may omit the form, in
/// which case node checks are skipped and the instance is flagged
/// unverified.
struct NodalInstance {
    unsigned n = 0;
    FieldSpec field;
    std::optional<HomogeneousForm> form;  // degree-n form on P^4
    PointSet nodes{4, FieldSpec::rationals()};
    Provenance provenance = Provenance::Synthetic;
    std::vector<std::string> notes;
};

/// Ordinary-double-point test: all five partials of F vanish at q and the
/// 5x5 matrix of second partials at q has rank exactly 4.
bool is_node(const HomogeneousForm& F, const ProjectivePoint& q);

/// Pencil construction F = x0*g + x1*f with g, f products of n-1 random
/// linear forms in x2, x3, x4. The (n-1)^2 pairwise intersections of the
/// two line arrangements on the plane x0 = x1 = 0 are the listed nodes;
/// draws are retried until they are distinct, every one passes is_node,
/// and no n of them are collinear. 4 <= n <= 8, prime field only.
NodalInstance example11(unsigned n, Rng& rng);
NodalInstance example11(unsigned n, Rng& rng, const FieldSpec& field);

struct NodeCheck {
    std::string label;
    bool gradient_vanishes = false;
    bool hessian_rank_4 = false;
    bool ok() const { return gradient_vanishes && hessian_rank_4; }
};

struct InstanceReport {
    bool verified = false;
    std::vector<NodeCheck> node_checks;  // empty when no form is present
    std::vector<std::string> flags;
};

/// Re-checks the instance invariants node by node. Without a form the
/// checks are skipped and the report is flagged "unverified".
InstanceReport verify_instance(const NodalInstance& inst);

}  // namespace nodal
