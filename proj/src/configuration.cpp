#include "nodal/configuration.hpp"

#include <algorithm>

#include "nodal/normality.hpp"

namespace nodal {

namespace {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                              std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(r);
}

template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::string to_string(IncidenceStatus s) {
    return s == IncidenceStatus::Exact ? "exact" : "lower-bound";
}

namespace {

// Incidence count of one candidate subset against the whole set, using the
// shared evaluation matrix at degree k. When the subset pins a unique curve
// the witness is returned; otherwise a point counts when the subset+point
// rows stay rank-deficient (some curve of the pencil picks it up).
CurveIncidence score_subset(const EvaluationMatrix& ev,
                            const std::vector<std::size_t>& subset) {
    const std::size_t s = ev.points.size();
    const std::size_t dim = ev.entries.cols();  // k(k+3)/2 + 1

    Matrix rows(ev.points.field(), 0, dim);
    for (std::size_t i : subset) rows.append_row(ev.entries.row(i));
    const auto kernel = right_kernel_basis(rows);

    CurveIncidence result;
    if (kernel.size() == 1) {
        // Unique curve through the subset: count by evaluation.
        const std::vector<Scalar>& c = kernel.front();
        for (std::size_t i = 0; i < s; ++i) {
            Scalar dot = Scalar::zero(ev.points.field());
            for (std::size_t j = 0; j < dim; ++j) {
                if (c[j].is_zero() || ev.entries.at(i, j).is_zero()) continue;
                dot += c[j] * ev.entries.at(i, j);
            }
            if (dot.is_zero()) result.members.push_back(i);
        }
        result.curve = HomogeneousForm::from_dense(2, ev.degree,
                                                   ev.points.field(), c);
    } else {
        // Degenerate subset: a point counts when some curve through the
        // subset also passes through it (rank test on subset+point rows).
        IncrementalRank base(ev.points.field(), dim);
        for (std::size_t i : subset) base.absorb(ev.entries.row(i));
        const std::size_t base_rank = base.rank();
        for (std::size_t i = 0; i < s; ++i) {
            if (base.in_span(ev.entries.row(i))) {
                result.members.push_back(i);
                continue;
            }
            if (base_rank + 1 < dim) result.members.push_back(i);
        }
    }
    result.count = result.members.size();
    return result;
}

}  // namespace

CurveIncidence max_on_plane_curve(const PointSet& points2d, unsigned k,
                                  std::uint64_t budget) {
    if (points2d.ambient_dim() != 2)
        throw DimensionMismatch("max_on_plane_curve expects P^2 points");
    if (k < 1) throw Error("curve degree must be >= 1");
    const std::size_t s = points2d.size();
    const std::size_t c = static_cast<std::size_t>(k) * (k + 3) / 2;

    const EvaluationMatrix ev = evaluation_matrix(points2d, k);

    // Line and conic maxima are always exact; only k >= 3 may fall back to
    // sampling under a tight caller budget.
    const std::uint64_t enumeration_cap =
        k <= 2 ? std::max(budget, kDefaultSubsetBudget) : budget;

    if (s <= c) {
        // Too few points to pin a curve: all of them fit on one.
        CurveIncidence all;
        all.count = s;
        for (std::size_t i = 0; i < s; ++i) all.members.push_back(i);
        const auto kernel = right_kernel_basis(ev.entries);
        if (kernel.size() == 1)
            all.curve = HomogeneousForm::from_dense(2, k, points2d.field(),
                                                    kernel.front());
        return all;
    }

    CurveIncidence best;
    if (binomial_capped(s, c, enumeration_cap) <= enumeration_cap) {
        for_each_subset(s, c, [&](const std::vector<std::size_t>& idx) {
            CurveIncidence candidate = score_subset(ev, idx);
            if (candidate.count > best.count) best = std::move(candidate);
        });
        best.status = IncidenceStatus::Exact;
        return best;
    }

    // Sampling fallback: `budget` random c-subsets, deterministic seed so
    // repeated runs agree.
    Rng rng = make_rng(0x9e3779b97f4a7c15ull ^ (s * 1000003ull + k));
    std::vector<std::size_t> pool(s);
    for (std::size_t i = 0; i < s; ++i) pool[i] = i;
    for (std::uint64_t draw = 0; draw < budget; ++draw) {
        for (std::size_t i = 0; i < c; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(s - i));
            std::swap(pool[i], pool[j]);
        }
        std::vector<std::size_t> subset(pool.begin(), pool.begin() + c);
        std::sort(subset.begin(), subset.end());
        CurveIncidence candidate = score_subset(ev, subset);
        if (candidate.count > best.count) best = std::move(candidate);
    }
    best.status = IncidenceStatus::LowerBound;
    return best;
}

EkReport eisenbud_koh_check(const PointSet& points, unsigned degree,
                            std::uint64_t budget) {
    if (degree < 2) throw Error("eisenbud_koh_check needs d >= 2");
    EkReport report;
    report.degree = degree;
    report.point_count = points.size();
    report.satisfied = true;

    for (unsigned k = 1; k < points.ambient_dim(); ++k) {
        EkEntry entry;
        entry.k = k;
        entry.threshold = static_cast<std::size_t>(degree) * k + 2;
        if (entry.threshold > points.size()) {
            entry.measured = false;  // vacuous: fewer points than the threshold
            entry.ok = true;
            report.entries.push_back(entry);
            continue;
        }
        const FlatIncidence inc = max_points_in_flat(points, k, budget);
        entry.measured = true;
        entry.max_in_flat = inc.count;
        entry.ok = inc.count < entry.threshold;
        if (!entry.ok && report.satisfied) {
            report.satisfied = false;
            report.first_violation_k = k;
            report.violation_witness = inc.witness;
        }
        report.entries.push_back(entry);
    }
    return report;
}

unsigned bese_m(unsigned d) { return (d + 3) / 2; }

std::size_t bese_curve_threshold(unsigned k, unsigned d) {
    return static_cast<std::size_t>(k) * (d + 3 - k) - 1;
}

std::size_t bese_size_cap(unsigned d) {
    const unsigned m = bese_m(d);
    return std::max<std::size_t>(static_cast<std::size_t>(m) * (d + 3 - m) - 1,
                                 static_cast<std::size_t>(m) * m);
}

BeseReport bese_verdict(std::size_t point_count, unsigned degree,
                        const std::vector<std::pair<std::size_t, IncidenceStatus>>& measured) {
    if (degree < 3) throw Error("base-point-freeness thresholds need d >= 3");
    BeseReport report;
    report.degree = degree;
    report.point_count = point_count;
    report.m = bese_m(degree);
    report.size_cap = bese_size_cap(degree);
    report.size_ok = point_count <= report.size_cap;
    report.degree3_note = (degree == 3);
    if (measured.size() != report.m)
        throw Error("expected " + std::to_string(report.m) +
                    " incidence measurements, got " + std::to_string(measured.size()));

    report.satisfied = report.size_ok;
    for (unsigned k = 1; k <= report.m; ++k) {
        BeseEntry entry;
        entry.k = k;
        entry.threshold = bese_curve_threshold(k, degree);
        entry.measured = measured[k - 1].first;
        entry.status = measured[k - 1].second;
        entry.ok = entry.measured < entry.threshold;
        report.satisfied = report.satisfied && entry.ok;
        report.entries.push_back(entry);
    }
    return report;
}

BeseReport bese_condition(const PointSet& points2d, unsigned degree,
                          std::uint64_t budget) {
    if (points2d.ambient_dim() != 2)
        throw DimensionMismatch("bese_condition expects P^2 points");
    std::vector<std::pair<std::size_t, IncidenceStatus>> measured;
    const unsigned m = bese_m(degree);
    for (unsigned k = 1; k <= m; ++k) {
        const CurveIncidence inc = max_on_plane_curve(points2d, k, budget);
        measured.emplace_back(inc.count, inc.status);
    }
    return bese_verdict(points2d.size(), degree, measured);
}

HomogeneousForm bese_separator(const PointSet& points2d, std::size_t index,
                               unsigned degree) {
    if (points2d.ambient_dim() != 2)
        throw DimensionMismatch("bese_separator expects P^2 points");
    try {
        return separating_form(points2d, index, degree);
    } catch (const NotSeparable& e) {
        // Only reachable when the condition was false or a sampled bound
        // understated an incidence.
        throw NotSeparable(std::string("red-flag: ") + e.what());
    }
}

PositionReport node_position_bounds(const NodalInstance& inst) {
    PositionReport report;
    report.collinear_bound = inst.n - 1;
    report.plane_threshold =
        static_cast<std::size_t>(inst.n) * (inst.n - 1) / 2;

    const FlatIncidence lines = max_points_in_flat(inst.nodes, 1);
    report.max_collinear = lines.count;
    report.collinear_ok = lines.count <= report.collinear_bound;
    report.collinear_witness = lines.witness;
    if (!report.collinear_ok)
        report.flags.push_back("line bound violated: " + std::to_string(lines.count) +
                               " collinear nodes exceed n-1 = " +
                               std::to_string(report.collinear_bound));

    const FlatIncidence planes = max_points_in_flat(inst.nodes, 2);
    report.max_in_plane = planes.count;
    report.plane_over_threshold = planes.count > report.plane_threshold;
    if (report.plane_over_threshold) {
        // Restrict F to the witness plane: three spanning points give a
        // parametrization; containment means the pullback is zero.
        std::vector<std::size_t> span_idx;
        IncrementalRank span(inst.field, 5);
        for (std::size_t i = 0; i < planes.witness.size() && span_idx.size() < 3; ++i)
            if (span.absorb(planes.witness[i].coords())) span_idx.push_back(i);
        if (span_idx.size() < 3) {
            report.flags.push_back(
                "over-threshold plane witness is degenerate (collinear nodes)");
        } else if (inst.form) {
            std::vector<std::vector<Scalar>> substitution;
            for (std::size_t v = 0; v < 5; ++v)
                substitution.push_back({planes.witness[span_idx[0]][v],
                                        planes.witness[span_idx[1]][v],
                                        planes.witness[span_idx[2]][v]});

            const HomogeneousForm restricted =
                compose_linear(*inst.form, substitution, 2);
            report.plane_contained_in_hypersurface = restricted.is_zero();
            report.node_count_meets_lemma =
                inst.nodes.size() >=
                static_cast<std::size_t>(inst.n - 1) * (inst.n - 1);
            if (!restricted.is_zero())
                report.flags.push_back(
                    "plane holds more than n(n-1)/2 nodes yet the form does "
                    "not vanish on it");
        } else {
            report.flags.push_back("plane containment unverifiable: no defining form");
        }
    }
    return report;
}

PointSet plane_chart_coordinates(const PointSet& coplanar) {
    if (span_rank(coplanar) > 3)
        throw InvariantViolation("points do not fit in one plane");
    // Spanning basis of the plane.
    std::vector<std::size_t> span_idx;
    IncrementalRank span(coplanar.field(), coplanar.ambient_dim() + 1);
    for (std::size_t i = 0; i < coplanar.size() && span_idx.size() < 3; ++i)
        if (span.absorb(coplanar[i].coords())) span_idx.push_back(i);
    if (span_idx.size() < 3)
        throw InvariantViolation("points span less than a plane");

    Matrix basis_cols(coplanar.field(), coplanar.ambient_dim() + 1, 3);
    for (std::size_t v = 0; v <= coplanar.ambient_dim(); ++v)
        for (std::size_t j = 0; j < 3; ++j)
            basis_cols.at(v, j) = coplanar[span_idx[j]][v];

    PointSet chart(2, coplanar.field());
    for (std::size_t i = 0; i < coplanar.size(); ++i) {
        auto lambda = solve_any(basis_cols, coplanar[i].coords());
        if (!lambda) throw InvariantViolation("coplanarity solve failed");
        chart.add(ProjectivePoint(std::move(*lambda)), coplanar.label(i));
    }
    return chart;
}

namespace {

// One fuzz point set: size points of P^4 below the collinearity budget
// (no n on a line) and, when any 5+ points are coplanar, within the conic
// budget (no 2(n-1)+1 on a conic).
PointSet fuzz_point_set(unsigned n, std::size_t size, const FieldSpec& field,
                        Rng& rng, std::size_t& regenerations) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        PointSet sigma(4, field);
        bool ok = true;
        for (std::size_t i = 0; ok && i < size; ++i) {
            try {
                sigma.add(random_point(4, field, rng));
            } catch (const InvariantViolation&) {
                ok = false;
            }
        }
        if (ok && max_points_in_flat(sigma, 1).count > n - 1) ok = false;
        if (ok) {
            const FlatIncidence planes = max_points_in_flat(sigma, 2);
            if (planes.count >= 5) {
                const PointSet chart = plane_chart_coordinates(planes.witness);
                if (max_on_plane_curve(chart, 2).count > 2 * (n - 1)) ok = false;
            }
        }
        if (ok) return sigma;
        ++regenerations;
    }
    throw GenericityFailure("fuzz point-set generation exhausted retries");
}

}  // namespace

FuzzReport conjecture15_fuzz(unsigned n, unsigned trials, Rng& rng,
                             unsigned k_max) {
    if (n < 4) throw Error("conjecture15_fuzz needs n >= 4");
    const FieldSpec field = FieldSpec::prime_field(kDefaultPrime);
    FuzzReport report;
    report.n = n;
    report.trials = trials;
    report.k_max = k_max;
    report.set_size = static_cast<std::size_t>(n - 1) * (n - 1) - 1;

    for (unsigned trial = 0; trial < trials; ++trial) {
        Rng trial_rng = rng.child(trial);
        report.trial_seeds.push_back(trial_rng.seed());

        const PointSet sigma =
            fuzz_point_set(n, report.set_size, field, trial_rng, report.regenerations);
        const Projection proj = random_projection(4, sigma, trial_rng);
        PointSet images(2, field);
        for (std::size_t i = 0; i < sigma.size(); ++i)
            images.add(project(proj, sigma[i]), sigma.label(i));

        for (unsigned k = 1; k <= k_max; ++k) {
            const std::size_t c = static_cast<std::size_t>(k) * (k + 3) / 2;
            if (binomial_capped(images.size(), c, kDefaultSubsetBudget) >
                kDefaultSubsetBudget)
                continue;  // untestable exactly at this size
            const CurveIncidence inc = max_on_plane_curve(images, k);
            const std::size_t bound = static_cast<std::size_t>(k) * (n - 1);
            if (inc.count > bound)
                report.violations.push_back(
                    FuzzViolation{trial, trial_rng.seed(), k, inc.count, bound});
        }
    }
    return report;
}

ConfigurationProfile configuration_profile(const PointSet& points,
                                           unsigned curve_k_max,
                                           std::uint64_t budget) {
    ConfigurationProfile profile;
    profile.point_count = points.size();
    profile.ambient_dim = points.ambient_dim();
    if (points.size() < 2) {
        profile.max_collinear = points.size();
        return profile;
    }

    const FlatIncidence lines = max_points_in_flat(points, 1, budget);
    profile.max_collinear = lines.count;
    profile.collinear_witness = lines.witness;

    if (points.ambient_dim() >= 3) {
        const FlatIncidence planes = max_points_in_flat(points, 2, budget);
        profile.max_in_2plane = planes.count;
        profile.plane_witness = planes.witness;
        if (points.ambient_dim() == 3) {
            profile.max_in_hyperplane = planes.count;
            profile.hyperplane_witness = planes.witness;
        }
    }
    if (points.ambient_dim() >= 4) {
        const FlatIncidence hyper =
            max_points_in_flat(points, points.ambient_dim() - 1, budget);
        profile.max_in_hyperplane = hyper.count;
        profile.hyperplane_witness = hyper.witness;
    }
    if (points.ambient_dim() == 2) {
        unsigned k_max = curve_k_max;
        if (k_max == 0) k_max = 4;
        for (unsigned k = 1; k <= k_max; ++k)
            profile.curves.emplace_back(k, max_on_plane_curve(points, k, budget));
    }
    return profile;
}

}  // namespace nodal
