#include "nodal/normality.hpp"

#include "nodal/configuration.hpp"

namespace nodal {

namespace {

std::vector<Scalar> evaluation_row(const ProjectivePoint& pt,
                                   const std::vector<Monomial>& basis,
                                   unsigned degree) {
    const FieldSpec f = pt.field();
    const std::size_t nvars = pt.coords().size();
    std::vector<std::vector<Scalar>> powers(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        powers[i].reserve(degree + 1);
        powers[i].push_back(Scalar::one(f));
        for (unsigned e = 1; e <= degree; ++e)
            powers[i].push_back(powers[i].back() * pt[i]);
    }
    std::vector<Scalar> row;
    row.reserve(basis.size());
    for (const Monomial& m : basis) {
        Scalar v = Scalar::one(f);
        for (std::size_t i = 0; i < nvars && !v.is_zero(); ++i)
            if (m.exps[i] > 0) v *= powers[i][m.exps[i]];
        row.push_back(v);
    }
    return row;
}

}  // namespace

EvaluationMatrix evaluation_matrix(const PointSet& points, unsigned degree) {
    if (points.empty()) throw EmptySet("evaluation matrix of empty set");
    const auto basis = monomial_basis(points.ambient_dim(), degree);
    Matrix entries(points.field(), 0, basis.size());
    for (const ProjectivePoint& p : points)
        entries.append_row(evaluation_row(p, basis, degree));
    return EvaluationMatrix{points, degree, basis, std::move(entries)};
}

NormalityReport independent_conditions(const PointSet& points, unsigned degree) {
    const EvaluationMatrix ev = evaluation_matrix(points, degree);
    const std::size_t s = points.size();

    NormalityReport report;
    report.degree = degree;
    report.point_count = s;
    report.rank = rank_of(ev.entries);
    report.defect = s - report.rank;

    // Rank-drop test per point: i is separable iff removing its row lowers
    // the rank.
    report.separable.resize(s);
    for (std::size_t skip = 0; skip < s; ++skip) {
        IncrementalRank acc(points.field(), ev.entries.cols());
        for (std::size_t i = 0; i < s; ++i) {
            if (i == skip) continue;
            acc.absorb(ev.entries.row(i));
        }
        report.separable[skip] = (acc.rank() + 1 == report.rank);
    }

    if (report.defect > 0) {
        if (auto combo = dependency_combination(ev.entries)) {
            std::vector<std::size_t> support;
            for (std::size_t i = 0; i < s; ++i)
                if (!(*combo)[i].is_zero()) support.push_back(i);
            // One greedy shrink pass: drop members whose removal keeps the
            // rows dependent.
            for (std::size_t drop = 0; drop < support.size();) {
                std::vector<std::size_t> candidate = support;
                candidate.erase(candidate.begin() + drop);
                if (candidate.size() >= 2) {
                    Matrix sub(points.field(), 0, ev.entries.cols());
                    for (std::size_t i : candidate) sub.append_row(ev.entries.row(i));
                    if (rank_of(sub) < candidate.size()) {
                        support = std::move(candidate);
                        continue;
                    }
                }
                ++drop;
            }
            report.dependent_witness = std::move(support);
        }
    }
    return report;
}

FactorialityVerdict h4_rank(const NodalInstance& inst) {
    if (inst.n < 3) throw Error("h4_rank needs n >= 3 so that 2n-5 >= 1");
    const unsigned d = 2 * inst.n - 5;

    FactorialityVerdict verdict;
    verdict.n = inst.n;
    verdict.node_count = inst.nodes.size();
    verdict.normality = independent_conditions(inst.nodes, d);
    verdict.rank = verdict.normality.rank;
    verdict.h4_rank = verdict.node_count - verdict.rank + 1;
    verdict.factorial = (verdict.h4_rank == 1);
    verdict.trace.push_back("direct-rank");

    // Node-count bound: at most (n-1)^2/4 nodes is factorial.
    if (4 * verdict.node_count <= (inst.n - 1) * (inst.n - 1))
        verdict.trace.push_back("count-bound");

    try {
        if (eisenbud_koh_check(inst.nodes, d).satisfied)
            verdict.trace.push_back("eisenbud-koh");
    } catch (const BudgetExceeded&) {
        // Incidence enumeration too large; the shortcut is simply not traced.
    }
    return verdict;
}

HomogeneousForm separating_form(const PointSet& points, std::size_t index,
                                unsigned degree) {
    if (index >= points.size()) throw Error("separating_form: index out of range");
    const EvaluationMatrix ev = evaluation_matrix(points, degree);
    const FieldSpec f = points.field();

    // Solve rows(others) . c = 0 and row(index) . c = 1; solvable iff the
    // target row is outside the span of the others.
    Matrix sys(f, 0, ev.entries.cols());
    std::vector<Scalar> rhs;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == index) continue;
        sys.append_row(ev.entries.row(i));
        rhs.push_back(Scalar::zero(f));
    }
    sys.append_row(ev.entries.row(index));
    rhs.push_back(Scalar::one(f));

    auto solution = solve_any(sys, rhs);
    if (!solution)
        throw NotSeparable("point '" + points.label(index) +
                           "' imposes a dependent condition at degree " +
                           std::to_string(degree));
    return HomogeneousForm::from_dense(points.ambient_dim(), degree, f, *solution);
}

HomogeneousForm separating_form(const PointSet& points, const std::string& label,
                                unsigned degree) {
    auto index = points.index_of(label);
    if (!index) throw Error("no point labeled '" + label + "'");
    return separating_form(points, *index, degree);
}

}  // namespace nodal
