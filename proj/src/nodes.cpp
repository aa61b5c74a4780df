#include "nodal/nodes.hpp"

#include "nodal/linalg.hpp"

namespace nodal {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Example11: return "example11";
        case Provenance::Ingested: return "ingested";
        case Provenance::Synthetic: return "synthetic";
    }
    throw Error("unknown provenance");
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "example11") return Provenance::Example11;
    if (s == "ingested") return Provenance::Ingested;
    if (s == "synthetic") return Provenance::Synthetic;
    throw ParseError("unknown provenance '" + s + "'");
}

bool is_node(const HomogeneousForm& F, const ProjectivePoint& q) {
    if (F.degree() < 2) throw Error("is_node needs degree >= 2");
    const auto partials = partial_derivatives(F);
    for (const auto& d : partials)
        if (!evaluate(d, q).is_zero()) return false;

    const std::size_t nvars = F.ambient_dim() + 1;
    Matrix hessian(F.field(), nvars, nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        const auto second = partial_derivatives(partials[i]);
        for (std::size_t j = 0; j < nvars; ++j)
            hessian.at(i, j) = evaluate(second[j], q);
    }
    return rank_of(hessian) == F.ambient_dim();
}

namespace {

// Random linear form in x2, x3, x4 lifted to P^4.
HomogeneousForm random_plane_line(const FieldSpec& field, Rng& rng) {
    for (;;) {
        std::vector<Scalar> coeffs(5, Scalar::zero(field));
        bool nonzero = false;
        for (std::size_t i = 2; i < 5; ++i) {
            coeffs[i] = random_scalar(field, rng);
            nonzero = nonzero || !coeffs[i].is_zero();
        }
        if (nonzero) return HomogeneousForm::linear(std::move(coeffs));
    }
}

// Intersection of two lines of the plane x0 = x1 = 0 (forms in x2..x4),
// lifted to P^4. Nullopt when the lines coincide.
std::optional<ProjectivePoint> arrangement_intersection(
    const HomogeneousForm& gi, const HomogeneousForm& fj, const FieldSpec& field) {
    Matrix m(field, 0, 3);
    for (const HomogeneousForm* line : {&gi, &fj}) {
        std::vector<Scalar> row;
        for (std::size_t v = 2; v < 5; ++v) {
            std::vector<unsigned> e(5, 0);
            e[v] = 1;
            row.push_back(line->coefficient(Monomial{e}));
        }
        m.append_row(std::move(row));
    }
    auto kernel = right_kernel_basis(m);
    if (kernel.size() != 1) return std::nullopt;
    std::vector<Scalar> coords(5, Scalar::zero(field));
    for (std::size_t v = 0; v < 3; ++v) coords[2 + v] = kernel[0][v];
    return ProjectivePoint(std::move(coords));
}

}  // namespace

NodalInstance example11(unsigned n, Rng& rng) {
    return example11(n, rng, FieldSpec::prime_field(kDefaultPrime));
}

NodalInstance example11(unsigned n, Rng& rng, const FieldSpec& field) {
    if (n < 4 || n > 8)
        throw Error("example11 supports 4 <= n <= 8, got n = " + std::to_string(n));
    if (field.kind != FieldSpec::Kind::PrimeField)
        throw FieldMismatch("example11 requires a prime field");

    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<HomogeneousForm> g_lines, f_lines;
        for (unsigned i = 0; i + 1 < n; ++i) {
            g_lines.push_back(random_plane_line(field, rng));
            f_lines.push_back(random_plane_line(field, rng));
        }

        PointSet nodes(4, field);
        bool ok = true;
        for (unsigned i = 0; ok && i + 1 < n; ++i)
            for (unsigned j = 0; ok && j + 1 < n; ++j) {
                auto q = arrangement_intersection(g_lines[i], f_lines[j], field);
                if (!q) {
                    ok = false;
                    break;
                }
                try {
                    nodes.add(*q, "g" + std::to_string(i) + "f" + std::to_string(j));
                } catch (const InvariantViolation&) {
                    ok = false;  // coincident intersection points
                }
            }
        if (!ok) continue;

        HomogeneousForm g = g_lines[0];
        HomogeneousForm f = f_lines[0];
        for (unsigned i = 1; i + 1 < n; ++i) {
            g = g * g_lines[i];
            f = f * f_lines[i];
        }
        std::vector<Scalar> x0(5, Scalar::zero(field)), x1(5, Scalar::zero(field));
        x0[0] = Scalar::one(field);
        x1[1] = Scalar::one(field);
        HomogeneousForm F = HomogeneousForm::linear(x0) * g +
                            HomogeneousForm::linear(x1) * f;

        for (std::size_t i = 0; ok && i < nodes.size(); ++i)
            ok = is_node(F, nodes[i]);
        if (!ok) continue;

        // Line bound: the arrangement puts n-1 nodes on each line; reject
        // draws where an accidental alignment exceeds it.
        if (max_points_in_flat(nodes, 1).count > n - 1) continue;

        NodalInstance inst;
        inst.n = n;
        inst.field = field;
        inst.form = std::move(F);
        inst.nodes = std::move(nodes);
        inst.provenance = Provenance::Example11;
        inst.notes = {"nodes listed are the plane x0=x1=0 intersections; "
                      "singular points off that plane are not searched for"};
        return inst;
    }
    throw GenericityFailure("example11: no valid draw after 100 attempts");
}

InstanceReport verify_instance(const NodalInstance& inst) {
    InstanceReport report;
    if (inst.nodes.ambient_dim() != 4)
        throw InvariantViolation("instance nodes must live in P^4");
    if (!inst.form) {
        report.verified = false;
        report.flags.push_back("unverified: no defining form; node checks skipped");
        return report;
    }
    if (inst.form->degree() != inst.n)
        throw InvariantViolation("form degree " + std::to_string(inst.form->degree()) +
                                 " does not match n = " + std::to_string(inst.n));

    const auto partials = partial_derivatives(*inst.form);
    bool all_ok = true;
    for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
        NodeCheck check;
        check.label = inst.nodes.label(i);
        check.gradient_vanishes = true;
        for (const auto& d : partials)
            if (!evaluate(d, inst.nodes[i]).is_zero()) {
                check.gradient_vanishes = false;
                break;
            }
        check.hessian_rank_4 =
            check.gradient_vanishes && is_node(*inst.form, inst.nodes[i]);
        all_ok = all_ok && check.ok();
        report.node_checks.push_back(std::move(check));
    }
    report.verified = all_ok;
    if (!all_ok) report.flags.push_back("invariant violation: see node checks");
    return report;
}

}  // namespace nodal
