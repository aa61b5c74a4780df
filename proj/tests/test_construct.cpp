#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nodal/construct.hpp"
#include "nodal/normality.hpp"
#include "nodal/serialize.hpp"

using namespace nodal;

namespace {

const FieldSpec FP = FieldSpec::prime_field(kDefaultPrime);

ProjectivePoint pt(std::initializer_list<long long> coords,
                   const FieldSpec& f = FP) {
    std::vector<Scalar> v;
    for (long long c : coords) v.push_back(Scalar::from_int(f, c));
    return ProjectivePoint(std::move(v));
}

PointSet random_set(std::size_t ambient, std::size_t count, Rng& rng) {
    PointSet s(ambient, FP);
    while (s.size() < count) {
        const ProjectivePoint p = random_point(ambient, FP, rng);
        if (!s.contains(p)) s.add(p);
    }
    return s;
}

// Degree-k product of hyperplanes through `through` (covered greedily)
// avoiding `avoid`.
HomogeneousForm hyperplane_product(unsigned degree,
                                   std::vector<ProjectivePoint> through,
                                   const std::vector<ProjectivePoint>& avoid,
                                   Rng& rng) {
    HomogeneousForm f(4, 0, FP);
    f = f + HomogeneousForm::from_terms(
                4, 0, FP,
                {{Monomial{std::vector<unsigned>(5, 0)}, Scalar::one(FP)}});
    for (unsigned used = 0; used < degree; ++used) {
        const std::size_t take = std::min<std::size_t>(through.size(), 3);
        std::vector<ProjectivePoint> slice(through.end() - take, through.end());
        through.erase(through.end() - take, through.end());
        f = f * HomogeneousForm::linear(
                    random_hyperplane_through(4, slice, avoid, FP, rng));
    }
    if (!through.empty()) throw GenericityFailure("cover did not fit");
    return f;
}

// A random synthetic instance with `on_h` nodes on the hyperplane x4 = 0
// and `off` nodes off it.
NodalInstance split_instance(unsigned n, std::size_t on_h, std::size_t off,
                             Rng& rng) {
    NodalInstance inst;
    inst.n = n;
    inst.field = FP;
    inst.provenance = Provenance::Synthetic;
    inst.nodes = PointSet(4, FP);
    while (inst.nodes.size() < on_h) {
        std::vector<Scalar> coords{random_scalar(FP, rng), random_scalar(FP, rng),
                                   random_scalar(FP, rng), random_scalar(FP, rng),
                                   Scalar::zero(FP)};
        try {
            inst.nodes.add(ProjectivePoint(std::move(coords)));
        } catch (const Error&) {
        }
    }
    while (inst.nodes.size() < on_h + off) {
        const ProjectivePoint p = random_point(4, FP, rng);
        if (!eval_linear({Scalar::zero(FP), Scalar::zero(FP), Scalar::zero(FP),
                          Scalar::zero(FP), Scalar::one(FP)},
                         p)
                 .is_zero() &&
            !inst.nodes.contains(p))
            inst.nodes.add(p);
    }
    return inst;
}

// Rational points of a chart hypersurface, found by scanning random lines.
std::vector<ProjectivePoint> points_on(const HomogeneousForm& x_chart,
                                       std::size_t count, Rng& rng) {
    std::vector<ProjectivePoint> found;
    while (found.size() < count) {
        const ProjectivePoint a = random_point(3, FP, rng);
        const ProjectivePoint b = random_point(3, FP, rng);
        if (a == b) continue;
        const HomogeneousForm bin = restrict_to_line(x_chart, a, b);
        if (bin.is_zero()) continue;
        for (const ProjectivePoint& root : univariate_roots(bin)) {
            std::vector<Scalar> coords;
            for (std::size_t j = 0; j < 4; ++j)
                coords.push_back(root[0] * a[j] + root[1] * b[j]);
            found.push_back(ProjectivePoint(std::move(coords)));
            if (found.size() == count) break;
        }
    }
    return found;
}

}  // namespace

TEST_CASE("sweep with empty Delta returns D0 unchanged") {
    Rng rng = make_rng(1);
    const PointSet lambda = random_set(4, 3, rng);
    const ProjectivePoint p = random_point(4, FP, rng);
    std::vector<ProjectivePoint> through(lambda.begin(), lambda.end());
    const HomogeneousForm d0 = hyperplane_product(3, through, {p}, rng);
    const HomogeneousForm g = sweep(d0, {}, p, lambda, PointSet(4, FP));
    CHECK(g == d0);
}

TEST_CASE("sweep in the plane with one extra point") {
    // Lambda = {a}, Delta = {b}: D0 a line through a missing p and D_b a
    // line through a and p missing b combine to a line pair through a, b.
    const ProjectivePoint a = pt({1, 0, 0});
    const ProjectivePoint b = pt({0, 1, 0});
    const ProjectivePoint p = pt({1, 1, 1});
    PointSet lambda(2, FP);
    lambda.add(a);
    PointSet delta(2, FP);
    delta.add(b);

    const HomogeneousForm d0 = parse_form("x1", 2, FP);        // vanishes at a
    const HomogeneousForm db = parse_form("x1 - x2", 2, FP);   // through a, p
    REQUIRE(evaluate(d0, a).is_zero());
    REQUIRE(!evaluate(d0, p).is_zero());
    REQUIRE(evaluate(db, a).is_zero());
    REQUIRE(evaluate(db, p).is_zero());
    REQUIRE(!evaluate(db, b).is_zero());

    const HomogeneousForm g = sweep(d0, {{b, db}}, p, lambda, delta);
    CHECK(evaluate(g, a).is_zero());
    CHECK(evaluate(g, b).is_zero());
    CHECK(!evaluate(g, p).is_zero());
}

TEST_CASE("sweep rejects broken premises by name") {
    Rng rng = make_rng(5);
    const PointSet lambda = random_set(4, 2, rng);
    const ProjectivePoint p = random_point(4, FP, rng);
    const HomogeneousForm bad = hyperplane_product(2, {}, {p}, rng);
    // bad does not vanish on lambda (generic hyperplanes).
    CHECK_THROWS_AS(sweep(bad, {}, p, lambda, PointSet(4, FP)),
                    PreconditionViolation);

    std::vector<ProjectivePoint> through(lambda.begin(), lambda.end());
    const HomogeneousForm d0 = hyperplane_product(2, through, {p}, rng);
    PointSet bad_delta(4, FP);
    bad_delta.add(lambda[0]);  // Delta meets Lambda
    CHECK_THROWS_AS(sweep(d0, {{lambda[0], d0}}, p, lambda, bad_delta),
                    PreconditionViolation);
}

TEST_CASE("random sweeps satisfy all postconditions exactly") {
    Rng rng = make_rng(7);
    int done = 0;
    for (int trial = 0; done < 20 && trial < 60; ++trial) {
        try {
            const PointSet lambda = random_set(4, 3, rng);
            PointSet delta(4, FP);
            while (delta.size() < 2) {
                const ProjectivePoint q = random_point(4, FP, rng);
                if (!lambda.contains(q) && !delta.contains(q)) delta.add(q);
            }
            const ProjectivePoint p = random_point(4, FP, rng);
            if (lambda.contains(p) || delta.contains(p)) continue;

            std::vector<ProjectivePoint> lam(lambda.begin(), lambda.end());
            const HomogeneousForm d0 = hyperplane_product(3, lam, {p}, rng);

            std::vector<std::pair<ProjectivePoint, HomogeneousForm>> dq;
            for (std::size_t i = 0; i < delta.size(); ++i) {
                std::vector<ProjectivePoint> cover(lambda.begin(), lambda.end());
                cover.push_back(p);
                for (std::size_t j = 0; j < delta.size(); ++j)
                    if (j != i) cover.push_back(delta[j]);
                dq.emplace_back(delta[i],
                                hyperplane_product(3, cover, {delta[i]}, rng));
            }
            const HomogeneousForm g = sweep(d0, dq, p, lambda, delta);

            for (const ProjectivePoint& x : lambda) CHECK(evaluate(g, x).is_zero());
            for (const ProjectivePoint& x : delta) CHECK(evaluate(g, x).is_zero());
            CHECK(evaluate(g, p) == evaluate(d0, p));
            ++done;
        } catch (const GenericityFailure&) {
        }
    }
    CHECK(done == 20);
}

TEST_CASE("two-point cones contain the chart hypersurface and both points") {
    Rng rng = make_rng(11);
    std::vector<Scalar> h(5, Scalar::zero(FP));
    h[4] = Scalar::one(FP);  // H: x4 = 0
    const HyperplaneChart chart = HyperplaneChart::from_form(h);

    int done = 0;
    for (int trial = 0; done < 10 && trial < 40; ++trial) {
        // X: a smooth quadric on the chart.
        const HomogeneousForm x_chart = parse_form("x0*x3 - x1*x2", 3, FP);
        const ProjectivePoint o = chart.embed(pt({1, 0, 0, 1}));  // X(o) = 1
        const ProjectivePoint p = random_point(4, FP, rng);
        const ProjectivePoint q = random_point(4, FP, rng);
        if (eval_linear(h, p).is_zero() || eval_linear(h, q).is_zero() || p == q)
            continue;

        HomogeneousForm cone{4, 0, FP};
        try {
            cone = two_point_cone(x_chart, chart, o, p, q, rng);
        } catch (const GenericityFailure&) {
            continue;
        }
        CHECK(cone.degree() == 2);
        CHECK(evaluate(cone, p).is_zero());
        CHECK(evaluate(cone, q).is_zero());
        CHECK(!evaluate(cone, o).is_zero());

        // The cone contains X itself: points of X embed to zeros.
        for (const ProjectivePoint& c : points_on(x_chart, 25, rng))
            CHECK(evaluate(cone, chart.embed(c)).is_zero());
        ++done;
    }
    CHECK(done == 10);
}

TEST_CASE("two-point cones vanish on generator lines") {
    Rng rng = make_rng(13);
    std::vector<Scalar> h(5, Scalar::zero(FP));
    h[0] = Scalar::one(FP);  // H: x0 = 0
    const HyperplaneChart chart = HyperplaneChart::from_form(h);
    const HomogeneousForm x_chart = parse_form("x0^2 + x1*x2 - x3^2", 3, FP);
    const ProjectivePoint o = chart.embed(pt({1, 0, 0, 0}));
    REQUIRE(!evaluate(x_chart, pt({1, 0, 0, 0})).is_zero());

    ProjectivePoint p = random_point(4, FP, rng);
    ProjectivePoint q = random_point(4, FP, rng);
    while (eval_linear(h, p).is_zero()) p = random_point(4, FP, rng);
    while (eval_linear(h, q).is_zero() || q == p) q = random_point(4, FP, rng);

    const HomogeneousForm cone = two_point_cone(x_chart, chart, o, p, q, rng);

    // Each point y of X spans a generator line with the vertex; the cone
    // vanishes on all of it. The vertex is internal, so check the line
    // through p and its anchor point instead: the anchor p' is the unique
    // zero of the cone on the segment spanned by p and any cone zero in H
    // collinear with them. Spot-check the fiber property: for points y on
    // X, the full line through y and the second cone zero on line(p, y)
    // stays inside the cone.
    for (const ProjectivePoint& y : points_on(x_chart, 20, rng)) {
        const ProjectivePoint y4 = chart.embed(y);
        CHECK(evaluate(cone, y4).is_zero());
        // line(p, y4) meets the cone in a degree-2 binary form with root y4;
        // every root of that form must stay on the cone.
        const HomogeneousForm on_line = restrict_to_line(cone, p, y4);
        if (on_line.is_zero()) continue;
        for (const ProjectivePoint& root : univariate_roots(on_line)) {
            std::vector<Scalar> coords;
            for (std::size_t j = 0; j < 5; ++j)
                coords.push_back(root[0] * p[j] + root[1] * y4[j]);
            CHECK(evaluate(cone, ProjectivePoint(std::move(coords))).is_zero());
        }
    }
}

TEST_CASE("two-point cone retry behavior, measured") {
    // Informational: how many plane draws a degree-2 cone needs. The line
    // through a random plane meets the quadric in two rational points only
    // when a random binary quadratic splits, so retries are routine; the
    // bounded-retry loop must still always land.
    Rng rng = make_rng(909);
    std::vector<Scalar> h(5, Scalar::zero(FP));
    h[2] = Scalar::one(FP);
    const HyperplaneChart chart = HyperplaneChart::from_form(h);
    const HomogeneousForm x_chart = parse_form("x0*x3 - x1*x2", 3, FP);
    const ProjectivePoint o = chart.embed(pt({1, 0, 0, 1}));

    unsigned draws = 0;
    unsigned successes = 0;
    bool saw_retry = false;
    while (successes < 40) {
        const ProjectivePoint p = random_point(4, FP, rng);
        const ProjectivePoint q = random_point(4, FP, rng);
        if (eval_linear(h, p).is_zero() || eval_linear(h, q).is_zero() || p == q)
            continue;
        unsigned used = 0;
        const HomogeneousForm cone =
            two_point_cone(x_chart, chart, o, p, q, rng, &used);
        CHECK(!evaluate(cone, o).is_zero());
        draws += used;
        saw_retry = saw_retry || used > 1;
        ++successes;
    }
    // Every construction landed within the retry bound; roughly half of all
    // plane draws split rationally, so expect about two draws per success.
    CHECK(successes == 40);
    CHECK(saw_retry);          // the retry path is exercised
    CHECK(draws <= 40 * 12);   // far below the 100-draw bound
    MESSAGE("two_point_cone draws per success: ", double(draws) / successes);
}

TEST_CASE("pair_lines meets the disjoint-pair bound") {
    Rng rng = make_rng(17);

    // General position: 8 points, no two collinear with p (m = 1).
    const ProjectivePoint p = random_point(4, FP, rng);
    const PointSet sigma = random_set(4, 8, rng);
    const auto pairs = pair_lines(sigma, p, 1);
    CHECK(pairs.size() >= 4);  // floor(r/2)
    std::vector<bool> used(sigma.size(), false);
    for (const auto& [a, b] : pairs) {
        CHECK(a != b);
        CHECK(!used[a]);
        CHECK(!used[b]);
        used[a] = used[b] = true;
        PointSet triple(4, FP);
        triple.add(sigma[a]);
        triple.add(sigma[b]);
        triple.add(p);
        CHECK(span_rank(triple) == 3);  // the pair line avoids p
    }
}

TEST_CASE("pair_lines splits a dominant line through p") {
    // Six points on a line through p plus two off it: r=8, m=6 gives at
    // least min{r-m, floor(r/2)} = 2 pairs, one endpoint each side.
    const ProjectivePoint p = pt({1, 0, 0, 0, 0});
    PointSet sigma(4, FP);
    for (long long t = 1; t <= 6; ++t) sigma.add(pt({1, t, 0, 0, 0}));
    sigma.add(pt({0, 0, 1, 2, 3}));
    sigma.add(pt({0, 0, 3, 1, 4}));

    const auto pairs = pair_lines(sigma, p, 6);
    CHECK(pairs.size() >= 2);
    for (const auto& [a, b] : pairs) {
        PointSet triple(4, FP);
        triple.add(sigma[a]);
        triple.add(sigma[b]);
        triple.add(p);
        CHECK(span_rank(triple) == 3);
    }

    // The precondition is enforced.
    CHECK_THROWS_AS(pair_lines(sigma, p, 5), PreconditionViolation);
    CHECK_THROWS_AS(pair_lines(sigma, sigma[0], 6), PreconditionViolation);
}

TEST_CASE("pipeline separates every node of a factorial pencil instance") {
    Rng rng = make_rng(42);
    const NodalInstance full = example11(5, rng);
    NodalInstance inst = full;
    inst.nodes = full.nodes.without(5);

    for (std::size_t i : {std::size_t{0}, std::size_t{7}, std::size_t{14}}) {
        Rng prng = make_rng(1000 + i);
        const SeparatorOutcome out =
            separator_pipeline(inst, inst.nodes.label(i), prng);
        CHECK(out.primary.method == SeparatorMethod::DirectLinearAlgebra);
        CHECK(out.primary.degree == 5);
        CHECK(out.primary.target_label == inst.nodes.label(i));
        for (const EvaluationLogEntry& e : out.primary.evaluation_log)
            CHECK(e.ok);
        // The grid breaks the plane condition, so the geometric cross-check
        // comes from the hyperplane-split composite.
        REQUIRE(out.cross_check.has_value());
        CHECK(out.cross_check->method == SeparatorMethod::SweepComposite);
        for (const EvaluationLogEntry& e : out.cross_check->evaluation_log)
            CHECK(e.ok);
    }
}

TEST_CASE("pipeline refuses dependent nodes and the geometry agrees") {
    Rng rng = make_rng(42);
    const NodalInstance inst = example11(5, rng);
    Rng prng = make_rng(77);
    CHECK_THROWS_AS(separator_pipeline(inst, "g0f0", prng), NotSeparable);
    CHECK(independent_conditions(inst.nodes, 5).defect == 1);
}

TEST_CASE("projection cross-checks appear for spread-out instances") {
    Rng rng = make_rng(3001);
    NodalInstance inst;
    inst.n = 7;
    inst.field = FP;
    inst.provenance = Provenance::Synthetic;
    inst.nodes = random_set(4, 34, rng);

    Rng prng = make_rng(3002);
    const SeparatorOutcome out = separator_pipeline(inst, inst.nodes.label(0), prng);
    CHECK(out.primary.method == SeparatorMethod::DirectLinearAlgebra);
    REQUIRE(out.cross_check.has_value());
    CHECK(out.cross_check->method == SeparatorMethod::ProjectionBeseCone);
    CHECK(out.cross_check->degree == 9);

    // The certificate is a cone: it vanishes along the projection center.
    // Recover the center as the common kernel of any three independent
    // linear forms the pullback's construction left invariant is not
    // exposed; instead verify the form vanishes on the span of two of its
    // P^4 zeros that project to one image point -- covered by the
    // evaluation log; here re-verify all log entries.
    for (const EvaluationLogEntry& e : out.cross_check->evaluation_log)
        CHECK(e.ok);
}

TEST_CASE("the sweep composite handles hyperplane-heavy instances") {
    struct Shape {
        std::size_t on_h;
        std::size_t off;
    };
    for (const Shape shape : {Shape{12, 0}, Shape{12, 1}, Shape{12, 2}, Shape{11, 4}}) {
        Rng rng = make_rng(4000 + shape.on_h * 10 + shape.off);
        const NodalInstance inst = split_instance(5, shape.on_h, shape.off, rng);
        const std::size_t target = 2;  // a node on H
        Rng crng = make_rng(4100 + shape.off);
        const auto form = sweep_composite_separator(inst, target, crng);
        REQUIRE(form.has_value());
        CHECK(form->degree() == 5);
        for (std::size_t i = 0; i < inst.nodes.size(); ++i)
            CHECK(evaluate(*form, inst.nodes[i]).is_zero() == (i != target));
    }
}

TEST_CASE("septic-case composite: 31 on a hyperplane plus 4 off") {
    Rng rng = make_rng(5001);
    const NodalInstance inst = split_instance(7, 31, 4, rng);
    Rng crng = make_rng(5002);
    const auto form = sweep_composite_separator(inst, 0, crng);
    REQUIRE(form.has_value());
    CHECK(form->degree() == 9);
    for (std::size_t i = 0; i < inst.nodes.size(); ++i)
        CHECK(evaluate(*form, inst.nodes[i]).is_zero() == (i != 0));
}

TEST_CASE("separating forms compose with hyperplane factors by sweeping") {
    // Base locus Lambda of the quadrics through it, a marked point o in
    // Lambda, and two outside points p, q: a degree N(k-1) hypersurface
    // through Lambda u {p, q} minus o, built per the sweeping recipe.
    Rng rng = make_rng(6001);
    const std::size_t ambient = 3;
    const unsigned k = 2;
    const unsigned target_degree = ambient * (k - 1) + k;  // here: 5... no
    (void)target_degree;

    const PointSet lambda_full = random_set(ambient, 4, rng);
    const std::size_t o_index = 1;
    const unsigned big = static_cast<unsigned>(ambient) * (k - 1);  // 3

    // D0: separator of o within Lambda at degree N(k-1).
    const HomogeneousForm d0 = separating_form(lambda_full, o_index, big);

    // D: a quadric through all of Lambda, nonzero at p and q.
    const EvaluationMatrix ev = evaluation_matrix(lambda_full, k);
    const auto kernel = right_kernel_basis(ev.entries);
    REQUIRE(!kernel.empty());
    ProjectivePoint p = random_point(ambient, FP, rng);
    ProjectivePoint q = random_point(ambient, FP, rng);
    HomogeneousForm d(ambient, k, FP);
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<Scalar> combo(kernel.front().size(), Scalar::zero(FP));
        for (const auto& v : kernel) {
            const Scalar c = random_scalar(FP, rng);
            for (std::size_t j = 0; j < combo.size(); ++j) combo[j] += c * v[j];
        }
        d = HomogeneousForm::from_dense(ambient, k, FP, combo);
        if (!d.is_zero() && !evaluate(d, p).is_zero() && !evaluate(d, q).is_zero())
            break;
    }
    REQUIRE(!evaluate(d, p).is_zero());

    // Hyperplanes H_p through p missing q and H_q through q missing p.
    const auto hp = random_hyperplane_through(ambient, {p}, {q}, FP, rng);
    const auto hq = random_hyperplane_through(ambient, {q}, {p}, FP, rng);

    // D_q-forms of degree N(k-1): D * H^{N(k-1)-k}.
    const HomogeneousForm dq_for_p =
        d * HomogeneousForm::linear(hp).pow(big - k);  // contains p, misses q
    const HomogeneousForm dq_for_q =
        d * HomogeneousForm::linear(hq).pow(big - k);  // contains q, misses p

    PointSet lambda(ambient, FP);
    for (std::size_t i = 0; i < lambda_full.size(); ++i)
        if (i != o_index) lambda.add(lambda_full[i], lambda_full.label(i));
    PointSet delta(ambient, FP);
    delta.add(p, "p");
    delta.add(q, "q");

    const HomogeneousForm g =
        sweep(d0, {{p, dq_for_q}, {q, dq_for_p}}, lambda_full[o_index], lambda,
              delta);
    for (const ProjectivePoint& x : lambda) CHECK(evaluate(g, x).is_zero());
    CHECK(evaluate(g, p).is_zero());
    CHECK(evaluate(g, q).is_zero());
    CHECK(!evaluate(g, lambda_full[o_index]).is_zero());
}

TEST_CASE("certificates reject forms that fail verification") {
    Rng rng = make_rng(7001);
    const PointSet s = random_set(4, 5, rng);
    const HomogeneousForm junk = hyperplane_product(2, {}, {}, rng);
    CHECK_THROWS_AS(
        certify_separator(s, 0, 2, junk, SeparatorMethod::DirectLinearAlgebra, 0),
        InvariantViolation);
}
