#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nodal/geom.hpp"
#include "nodal/scalar.hpp"

namespace nodal {

/// Exponent tuple of a monomial in N+1 variables. Ordered graded-lex with
/// x0 > x1 > ...: lower degree first, then lexicographically larger
/// exponent tuple first within a degree (so x0^d precedes x0^(d-1)x1).
struct Monomial {
    std::vector<unsigned> exps;

    unsigned degree() const;
    std::size_t arity() const { return exps.size(); }

    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& b) const;

    std::string to_string() const;  // "x0^2*x1"
};

/// All C(d+N, N) degree-d monomials in N+1 variables, in the order above.
/// Deterministic; defines the column order of every evaluation matrix.
std::vector<Monomial> monomial_basis(std::size_t ambient_dim, unsigned degree);

std::uint64_t monomial_count(std::size_t ambient_dim, unsigned degree);

/// Homogeneous degree-d form on P^N as a sparse monomial -> coefficient
/// map (nonzero coefficients only). Immutable value semantics.
class HomogeneousForm {
public:
    HomogeneousForm(std::size_t ambient_dim, unsigned degree, FieldSpec field)
        : ambient_dim_(ambient_dim), degree_(degree), field_(field) {}

    static HomogeneousForm from_terms(std::size_t ambient_dim, unsigned degree,
                                      FieldSpec field,
                                      std::map<Monomial, Scalar> terms);
    /// Dense coefficients aligned with monomial_basis(ambient_dim, degree).
    static HomogeneousForm from_dense(std::size_t ambient_dim, unsigned degree,
                                      FieldSpec field,
                                      const std::vector<Scalar>& coeffs);
    /// Degree-1 form with the given N+1 coefficients.
    static HomogeneousForm linear(std::vector<Scalar> coeffs);

    std::size_t ambient_dim() const { return ambient_dim_; }
    unsigned degree() const { return degree_; }
    FieldSpec field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    Scalar coefficient(const Monomial& m) const;

    std::vector<Scalar> dense_coefficients() const;

    HomogeneousForm operator-() const;
    friend HomogeneousForm operator+(const HomogeneousForm&, const HomogeneousForm&);
    friend HomogeneousForm operator-(const HomogeneousForm&, const HomogeneousForm&);
    friend HomogeneousForm operator*(const HomogeneousForm&, const HomogeneousForm&);
    HomogeneousForm scaled(const Scalar& c) const;
    HomogeneousForm pow(unsigned e) const;

    bool operator==(const HomogeneousForm& b) const;

    std::string to_string() const;

private:
    void add_term(Monomial m, Scalar c);  // accumulates, drops zeros

    std::size_t ambient_dim_;
    unsigned degree_;
    FieldSpec field_;
    std::map<Monomial, Scalar> terms_;
};

/// Value at the normalized representative, so "vanishes at pt" is well
/// defined. Throws DimensionMismatch on arity mismatch.
Scalar evaluate(const HomogeneousForm& form, const ProjectivePoint& pt);

/// The N+1 formal partials, each of degree d-1. The Euler relation
/// sum x_i dF/dx_i = d F holds exactly.
std::vector<HomogeneousForm> partial_derivatives(const HomogeneousForm& form);

/// F composed with a linear substitution x_i := forms[i], where each
/// substituted form is linear on the target P^T. Result is a degree-d form
/// on P^T.
HomogeneousForm compose_linear(const HomogeneousForm& form,
                               const std::vector<std::vector<Scalar>>& substitution,
                               std::size_t target_dim);

/// Coefficients of F(s*a + t*b) as a binary degree-d form on P^1.
/// Throws EqualPoints when a == b.
HomogeneousForm restrict_to_line(const HomogeneousForm& form,
                                 const ProjectivePoint& a,
                                 const ProjectivePoint& b);

/// All P^1(F_p) roots of a nonzero binary form, by full scan of the p+1
/// points. Requires a prime field with p <= 2^20.
std::vector<ProjectivePoint> univariate_roots(const HomogeneousForm& binform);

/// Pullback of a plane form along a projection: substitutes the three
/// projection forms. Vanishes at x (off the center) iff the plane form
/// vanishes at project(x); vanishes identically on the center.
HomogeneousForm cone_pullback(const HomogeneousForm& plane_form,
                              const Projection& proj);

/// Parser for expressions like "x0^2*x1 - 3*x2*x3*x4" (CLI convenience).
/// Coefficients may be integers or a/b fractions.
HomogeneousForm parse_form(const std::string& text, std::size_t ambient_dim,
                           FieldSpec field);

}  // namespace nodal
