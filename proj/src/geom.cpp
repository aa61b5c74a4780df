#include "nodal/geom.hpp"

#include <algorithm>

namespace nodal {

namespace {

// C(n, k) capped at `cap` to avoid overflow in budget checks.
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

ProjectivePoint::ProjectivePoint(std::vector<Scalar> coords)
    : coords_(std::move(coords)) {
    if (coords_.size() < 2)
        throw DimensionMismatch("projective point needs at least 2 coordinates");
    const FieldSpec f = coords_.front().field();
    std::size_t first_nonzero = coords_.size();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!(coords_[i].field() == f))
            throw FieldMismatch("mixed-field coordinates");
        if (first_nonzero == coords_.size() && !coords_[i].is_zero())
            first_nonzero = i;
    }
    if (first_nonzero == coords_.size())
        throw InvariantViolation("all-zero projective coordinates");
    const Scalar inv = coords_[first_nonzero].inverse();
    for (Scalar& c : coords_) c *= inv;
}

bool ProjectivePoint::operator==(const ProjectivePoint& b) const {
    return cmp(b) == 0;
}

int ProjectivePoint::cmp(const ProjectivePoint& b) const {
    if (ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("comparing points of different P^N");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const int c = coords_[i].cmp(b.coords_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string ProjectivePoint::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += " : ";
        s += coords_[i].to_string();
    }
    return s + ")";
}

ProjectivePoint random_point(std::size_t ambient_dim, const FieldSpec& f,
                             Rng& rng) {
    for (;;) {
        std::vector<Scalar> coords;
        coords.reserve(ambient_dim + 1);
        bool nonzero = false;
        for (std::size_t i = 0; i <= ambient_dim; ++i) {
            coords.push_back(random_scalar(f, rng));
            nonzero = nonzero || !coords.back().is_zero();
        }
        if (nonzero) return ProjectivePoint(std::move(coords));
    }
}

PointSet PointSet::of(std::vector<ProjectivePoint> points,
                      std::vector<std::string> labels) {
    if (points.empty()) throw EmptySet("PointSet::of with no points");
    PointSet s(points.front().ambient_dim(), points.front().field());
    for (std::size_t i = 0; i < points.size(); ++i)
        s.add(std::move(points[i]), i < labels.size() ? labels[i] : "");
    return s;
}

void PointSet::add(ProjectivePoint p, std::string label) {
    if (p.ambient_dim() != ambient_dim_)
        throw DimensionMismatch("point of wrong ambient dimension");
    if (!(p.field() == field_)) throw FieldMismatch("point of wrong field");
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i] == p)
            throw InvariantViolation("duplicate point " + p.to_string() +
                                     " (already present as '" + labels_[i] + "')");
    if (label.empty()) label = "p" + std::to_string(points_.size());
    if (index_of(label))
        throw InvariantViolation("duplicate label '" + label + "'");
    points_.push_back(std::move(p));
    labels_.push_back(std::move(label));
}

std::optional<std::size_t> PointSet::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

bool PointSet::contains(const ProjectivePoint& p) const {
    for (const ProjectivePoint& q : points_)
        if (q == p) return true;
    return false;
}

PointSet PointSet::without(std::size_t index) const {
    PointSet s(ambient_dim_, field_);
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (i != index) s.add(points_[i], labels_[i]);
    return s;
}

PointSet PointSet::subset(const std::vector<std::size_t>& indices) const {
    PointSet s(ambient_dim_, field_);
    for (std::size_t i : indices) s.add(points_[i], labels_[i]);
    return s;
}

std::size_t span_rank(const PointSet& points) {
    if (points.empty()) throw EmptySet("span_rank of empty set");
    IncrementalRank acc(points.field(), points.ambient_dim() + 1);
    for (const ProjectivePoint& p : points) acc.absorb(p.coords());
    return acc.rank();
}

FlatIncidence max_points_in_flat(const PointSet& points, std::size_t k,
                                 std::uint64_t budget) {
    const std::size_t n = points.size();
    if (k < 1 || k >= points.ambient_dim())
        throw Error("flat dimension out of range");
    if (n < k + 2) {
        // Everything fits in one k-flat.
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        return FlatIncidence{n, points.subset(all)};
    }
    if (binomial_capped(n, k + 1, budget) > budget)
        throw BudgetExceeded("C(" + std::to_string(n) + ", " +
                             std::to_string(k + 1) + ") exceeds budget " +
                             std::to_string(budget));

    std::size_t best_count = 0;
    std::vector<std::size_t> best_members;
    for_each_subset(n, k + 1, [&](const std::vector<std::size_t>& idx) {
        IncrementalRank span(points.field(), points.ambient_dim() + 1);
        for (std::size_t i : idx) span.absorb(points[i].coords());
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (span.in_span(points[i].coords())) members.push_back(i);
        if (members.size() > best_count) {
            best_count = members.size();
            best_members = std::move(members);
        }
    });
    return FlatIncidence{best_count, points.subset(best_members)};
}

Scalar eval_linear(const std::vector<Scalar>& form, const ProjectivePoint& p) {
    if (form.size() != p.coords().size())
        throw DimensionMismatch("linear form of wrong arity");
    Scalar acc = Scalar::zero(p.field());
    for (std::size_t i = 0; i < form.size(); ++i) {
        if (form[i].is_zero()) continue;
        acc += form[i] * p[i];
    }
    return acc;
}

bool LinearFlat::contains(const ProjectivePoint& p) const {
    for (const auto& form : cutting_forms)
        if (!eval_linear(form, p).is_zero()) return false;
    return true;
}

LinearFlat LinearFlat::span_of(const PointSet& points) {
    if (points.empty()) throw EmptySet("span of empty set");
    Matrix coords(points.field(), 0, points.ambient_dim() + 1);
    for (const ProjectivePoint& p : points) coords.append_row(p.coords());
    auto kernel = right_kernel_basis(coords);
    const std::size_t rank = points.ambient_dim() + 1 - kernel.size();
    return LinearFlat{points.ambient_dim(), rank - 1, std::move(kernel)};
}

Projection Projection::from_forms(std::size_t source_dim,
                                  std::array<std::vector<Scalar>, 3> forms) {
    if (source_dim != 3 && source_dim != 4)
        throw Error("projection source must be P^3 or P^4");
    Matrix m(forms[0][0].field(), 0, source_dim + 1);
    for (const auto& f : forms) {
        if (f.size() != source_dim + 1)
            throw DimensionMismatch("projection form of wrong arity");
        m.append_row(f);
    }
    if (rank_of(m) != 3)
        throw InvariantViolation("projection forms are dependent");
    LinearFlat center{source_dim, source_dim - 3,
                      {forms.begin(), forms.end()}};
    return Projection{source_dim, std::move(center), std::move(forms)};
}

Projection random_projection(std::size_t source_dim, const PointSet& avoid,
                             Rng& rng) {
    if (source_dim != 3 && source_dim != 4)
        throw Error("projection source must be P^3 or P^4");
    const FieldSpec f =
        avoid.empty() ? FieldSpec::prime_field(kDefaultPrime) : avoid.field();
    const std::size_t span_points = source_dim - 2;  // center = their span

    for (int attempt = 0; attempt < 100; ++attempt) {
        Matrix coords(f, 0, source_dim + 1);
        for (std::size_t i = 0; i < span_points; ++i)
            coords.append_row(random_point(source_dim, f, rng).coords());
        if (rank_of(coords) != span_points) continue;

        auto kernel = right_kernel_basis(coords);
        if (kernel.size() != 3) continue;
        std::array<std::vector<Scalar>, 3> forms{kernel[0], kernel[1], kernel[2]};
        Projection proj = Projection::from_forms(source_dim, std::move(forms));

        bool valid = true;
        std::vector<ProjectivePoint> images;
        images.reserve(avoid.size());
        for (const ProjectivePoint& p : avoid) {
            if (proj.center.contains(p)) {
                valid = false;
                break;
            }
            images.push_back(project(proj, p));
        }
        if (!valid) continue;
        for (std::size_t i = 0; valid && i < images.size(); ++i)
            for (std::size_t j = i + 1; j < images.size(); ++j)
                if (images[i] == images[j]) {
                    valid = false;
                    break;
                }
        if (valid) return proj;
    }
    throw GenericityFailure("no valid projection after 100 retries");
}

ProjectivePoint project(const Projection& proj, const ProjectivePoint& pt) {
    if (pt.ambient_dim() != proj.source_dim)
        throw DimensionMismatch("point of wrong ambient dimension");
    std::vector<Scalar> image;
    image.reserve(3);
    bool all_zero = true;
    for (const auto& form : proj.forms) {
        image.push_back(eval_linear(form, pt));
        all_zero = all_zero && image.back().is_zero();
    }
    if (all_zero) throw PointOnCenter("point " + pt.to_string() + " on center");
    return ProjectivePoint(std::move(image));
}

HyperplaneChart HyperplaneChart::from_form(std::vector<Scalar> h) {
    if (h.size() != 5) throw DimensionMismatch("hyperplane chart needs P^4");
    const FieldSpec f = h.front().field();
    Matrix m(f, 0, 5);
    m.append_row(h);
    auto kernel = right_kernel_basis(m);
    if (kernel.size() != 4) throw InvariantViolation("degenerate hyperplane form");

    std::array<ProjectivePoint, 4> basis{
        ProjectivePoint(kernel[0]), ProjectivePoint(kernel[1]),
        ProjectivePoint(kernel[2]), ProjectivePoint(kernel[3])};

    // Chart coordinates read off x restricted to pivot columns J of the
    // basis matrix B: lambda = x_J * inv(B_J).
    Matrix b(f, 0, 5);
    for (const auto& p : basis) b.append_row(p.coords());
    const Echelon e = reduced_row_echelon(b);
    if (e.rank != 4) throw InvariantViolation("chart basis is degenerate");
    const std::vector<std::size_t>& piv = e.pivot_cols;

    Matrix bj(f, 4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) bj.at(r, c) = b.at(r, piv[c]);
    // Invert bj by solving against unit vectors.
    std::array<std::vector<Scalar>, 4> coord_forms;
    for (std::size_t i = 0; i < 4; ++i) {
        // lambda_i = sum_j x_{J_j} * inv(B_J)[j][i]; column i of the inverse
        // solves B_J y = e_i.
        std::vector<Scalar> rhs(4, Scalar::zero(f));
        rhs[i] = Scalar::one(f);
        auto y = solve_any(bj, rhs);
        if (!y) throw InvariantViolation("chart basis not invertible");
        std::vector<Scalar> form(5, Scalar::zero(f));
        for (std::size_t j = 0; j < 4; ++j) form[piv[j]] = (*y)[j];
        coord_forms[i] = std::move(form);
    }
    return HyperplaneChart{std::move(h), std::move(basis), std::move(coord_forms)};
}

ProjectivePoint HyperplaneChart::embed(const ProjectivePoint& chart_pt) const {
    if (chart_pt.ambient_dim() != 3)
        throw DimensionMismatch("chart point must live in P^3");
    const FieldSpec f = chart_pt.field();
    std::vector<Scalar> out(5, Scalar::zero(f));
    for (std::size_t i = 0; i < 4; ++i) {
        if (chart_pt[i].is_zero()) continue;
        for (std::size_t j = 0; j < 5; ++j)
            out[j] += chart_pt[i] * basis[i][j];
    }
    return ProjectivePoint(std::move(out));
}

ProjectivePoint HyperplaneChart::chart_coords(const ProjectivePoint& p) const {
    if (!eval_linear(hyperplane, p).is_zero())
        throw InvariantViolation("point " + p.to_string() + " is off the hyperplane");
    std::vector<Scalar> lambda;
    lambda.reserve(4);
    for (const auto& form : coord_forms) lambda.push_back(eval_linear(form, p));
    return ProjectivePoint(std::move(lambda));
}

}  // namespace nodal
