#include "nodal/poly.hpp"

#include <algorithm>
#include <cctype>

namespace nodal {

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (unsigned e : exps) d += e;
    return d;
}

bool Monomial::operator<(const Monomial& b) const {
    if (exps.size() != b.exps.size())
        throw DimensionMismatch("comparing monomials of different arity");
    const unsigned da = degree(), db = b.degree();
    if (da != db) return da < db;
    // Within a degree: lexicographically larger tuple first.
    return exps > b.exps;
}

std::string Monomial::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(i);
        if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
    }
    return s.empty() ? "1" : s;
}

std::vector<Monomial> monomial_basis(std::size_t ambient_dim, unsigned degree) {
    std::vector<Monomial> basis;
    std::vector<unsigned> exps(ambient_dim + 1, 0);
    // Recursive descent, highest power of the leading variable first.
    auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
        if (var == ambient_dim) {
            exps[var] = remaining;
            basis.push_back(Monomial{exps});
            return;
        }
        for (unsigned e = remaining + 1; e-- > 0;) {
            exps[var] = e;
            self(self, var + 1, remaining - e);
        }
        exps[var] = 0;
    };
    rec(rec, 0, degree);
    return basis;
}

std::uint64_t monomial_count(std::size_t ambient_dim, unsigned degree) {
    // C(degree + ambient_dim, ambient_dim)
    unsigned __int128 r = 1;
    for (std::size_t i = 1; i <= ambient_dim; ++i) r = r * (degree + i) / i;
    return static_cast<std::uint64_t>(r);
}

void HomogeneousForm::add_term(Monomial m, Scalar c) {
    if (m.arity() != ambient_dim_ + 1)
        throw DimensionMismatch("monomial arity does not match form");
    if (m.degree() != degree_)
        throw InvariantViolation("monomial " + m.to_string() +
                                 " has degree != " + std::to_string(degree_));
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

HomogeneousForm HomogeneousForm::from_terms(std::size_t ambient_dim,
                                            unsigned degree, FieldSpec field,
                                            std::map<Monomial, Scalar> terms) {
    HomogeneousForm f(ambient_dim, degree, field);
    for (auto& [m, c] : terms) f.add_term(m, c);
    return f;
}

HomogeneousForm HomogeneousForm::from_dense(std::size_t ambient_dim,
                                            unsigned degree, FieldSpec field,
                                            const std::vector<Scalar>& coeffs) {
    const auto basis = monomial_basis(ambient_dim, degree);
    if (coeffs.size() != basis.size())
        throw DimensionMismatch("dense coefficient vector of wrong length");
    HomogeneousForm f(ambient_dim, degree, field);
    for (std::size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], coeffs[i]);
    return f;
}

HomogeneousForm HomogeneousForm::linear(std::vector<Scalar> coeffs) {
    if (coeffs.size() < 2) throw DimensionMismatch("linear form needs >= 2 coefficients");
    HomogeneousForm f(coeffs.size() - 1, 1, coeffs.front().field());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::vector<unsigned> e(coeffs.size(), 0);
        e[i] = 1;
        f.add_term(Monomial{std::move(e)}, coeffs[i]);
    }
    return f;
}

Scalar HomogeneousForm::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

std::vector<Scalar> HomogeneousForm::dense_coefficients() const {
    const auto basis = monomial_basis(ambient_dim_, degree_);
    std::vector<Scalar> out;
    out.reserve(basis.size());
    for (const Monomial& m : basis) out.push_back(coefficient(m));
    return out;
}

HomogeneousForm HomogeneousForm::operator-() const {
    HomogeneousForm f(ambient_dim_, degree_, field_);
    for (const auto& [m, c] : terms_) f.terms_.emplace(m, -c);
    return f;
}

HomogeneousForm operator+(const HomogeneousForm& a, const HomogeneousForm& b) {
    if (a.ambient_dim_ != b.ambient_dim_ || a.degree_ != b.degree_)
        throw DimensionMismatch("adding forms of different shape");
    HomogeneousForm f = a;
    for (const auto& [m, c] : b.terms_) f.add_term(m, c);
    return f;
}

HomogeneousForm operator-(const HomogeneousForm& a, const HomogeneousForm& b) {
    return a + (-b);
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
    if (a.ambient_dim_ != b.ambient_dim_)
        throw DimensionMismatch("multiplying forms on different spaces");
    HomogeneousForm f(a.ambient_dim_, a.degree_ + b.degree_, a.field_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            for (std::size_t i = 0; i < m.exps.size(); ++i)
                m.exps[i] += mb.exps[i];
            f.add_term(std::move(m), ca * cb);
        }
    return f;
}

HomogeneousForm HomogeneousForm::scaled(const Scalar& c) const {
    HomogeneousForm f(ambient_dim_, degree_, field_);
    if (c.is_zero()) return f;
    for (const auto& [m, v] : terms_) f.terms_.emplace(m, c * v);
    return f;
}

HomogeneousForm HomogeneousForm::pow(unsigned e) const {
    HomogeneousForm result(ambient_dim_, 0, field_);
    result.add_term(Monomial{std::vector<unsigned>(ambient_dim_ + 1, 0)},
                    Scalar::one(field_));
    for (unsigned i = 0; i < e; ++i) result = result * *this;
    return result;
}

bool HomogeneousForm::operator==(const HomogeneousForm& b) const {
    return ambient_dim_ == b.ambient_dim_ && degree_ == b.degree_ &&
           terms_ == b.terms_;
}

std::string HomogeneousForm::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += c.to_string() + "*" + m.to_string();
    }
    return s;
}

Scalar evaluate(const HomogeneousForm& form, const ProjectivePoint& pt) {
    if (pt.ambient_dim() != form.ambient_dim())
        throw DimensionMismatch("evaluating on the wrong P^N");
    if (!(pt.field() == form.field()))
        throw FieldMismatch("evaluating over the wrong field");
    const std::size_t nvars = form.ambient_dim() + 1;

    // Power table coords[i]^e for e <= degree.
    std::vector<std::vector<Scalar>> powers(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        powers[i].reserve(form.degree() + 1);
        powers[i].push_back(Scalar::one(form.field()));
        for (unsigned e = 1; e <= form.degree(); ++e)
            powers[i].push_back(powers[i].back() * pt[i]);
    }

    Scalar acc = Scalar::zero(form.field());
    for (const auto& [m, c] : form.terms()) {
        Scalar term = c;
        bool zero = false;
        for (std::size_t i = 0; i < nvars; ++i) {
            if (m.exps[i] == 0) continue;
            if (pt[i].is_zero()) {
                zero = true;
                break;
            }
            term *= powers[i][m.exps[i]];
        }
        if (!zero) acc += term;
    }
    return acc;
}

std::vector<HomogeneousForm> partial_derivatives(const HomogeneousForm& form) {
    if (form.degree() < 1) throw Error("derivative of a degree-0 form");
    const std::size_t nvars = form.ambient_dim() + 1;
    std::vector<HomogeneousForm> partials;
    partials.reserve(nvars);
    for (std::size_t v = 0; v < nvars; ++v) {
        std::map<Monomial, Scalar> terms;
        for (const auto& [m, c] : form.terms()) {
            if (m.exps[v] == 0) continue;
            Monomial dm = m;
            --dm.exps[v];
            terms.emplace(std::move(dm),
                          c * Scalar::from_int(form.field(), m.exps[v]));
        }
        partials.push_back(HomogeneousForm::from_terms(
            form.ambient_dim(), form.degree() - 1, form.field(), std::move(terms)));
    }
    return partials;
}

HomogeneousForm compose_linear(const HomogeneousForm& form,
                               const std::vector<std::vector<Scalar>>& substitution,
                               std::size_t target_dim) {
    if (substitution.size() != form.ambient_dim() + 1)
        throw DimensionMismatch("substitution needs one linear form per variable");
    const FieldSpec f = form.field();
    std::vector<HomogeneousForm> linear_forms;
    linear_forms.reserve(substitution.size());
    for (const auto& coeffs : substitution) {
        if (coeffs.size() != target_dim + 1)
            throw DimensionMismatch("substituted form of wrong arity");
        linear_forms.push_back(HomogeneousForm::linear(coeffs));
    }

    // Cache powers of each substituted form up to its needed exponent.
    std::vector<unsigned> max_exp(substitution.size(), 0);
    for (const auto& [m, c] : form.terms())
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            max_exp[i] = std::max(max_exp[i], m.exps[i]);
    std::vector<std::vector<HomogeneousForm>> powers(substitution.size());
    for (std::size_t i = 0; i < substitution.size(); ++i) {
        powers[i].push_back(HomogeneousForm::from_terms(
            target_dim, 0, f,
            {{Monomial{std::vector<unsigned>(target_dim + 1, 0)}, Scalar::one(f)}}));
        for (unsigned e = 1; e <= max_exp[i]; ++e)
            powers[i].push_back(powers[i].back() * linear_forms[i]);
    }

    HomogeneousForm result(target_dim, form.degree(), f);
    for (const auto& [m, c] : form.terms()) {
        HomogeneousForm term = powers[0][m.exps[0]];
        for (std::size_t i = 1; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            term = term * powers[i][m.exps[i]];
        }
        result = result + term.scaled(c);
    }
    return result;
}

HomogeneousForm restrict_to_line(const HomogeneousForm& form,
                                 const ProjectivePoint& a,
                                 const ProjectivePoint& b) {
    if (a.ambient_dim() != form.ambient_dim() || b.ambient_dim() != form.ambient_dim())
        throw DimensionMismatch("line points of wrong ambient dimension");
    if (a == b) throw EqualPoints("restrict_to_line needs two distinct points");
    std::vector<std::vector<Scalar>> substitution;
    substitution.reserve(form.ambient_dim() + 1);
    for (std::size_t i = 0; i <= form.ambient_dim(); ++i)
        substitution.push_back({a[i], b[i]});  // x_i := a_i*s + b_i*t
    return compose_linear(form, substitution, 1);
}

std::vector<ProjectivePoint> univariate_roots(const HomogeneousForm& binform) {
    if (binform.ambient_dim() != 1)
        throw DimensionMismatch("univariate_roots needs a binary form");
    if (binform.is_zero()) throw ZeroForm("zero binary form");
    const FieldSpec f = binform.field();
    if (f.kind != FieldSpec::Kind::PrimeField)
        throw FieldMismatch("root scan requires a prime field");
    if (f.p > (1u << 20))
        throw FieldTooLarge("root scan capped at p <= 2^20, got p = " +
                            std::to_string(f.p));

    // Dense coefficients c[j] of s^(d-j) t^j, as raw residues for the scan.
    const unsigned d = binform.degree();
    std::vector<std::uint64_t> c(d + 1, 0);
    for (const auto& [m, coeff] : binform.terms()) c[m.exps[1]] = coeff.residue();

    std::vector<ProjectivePoint> roots;
    const std::uint64_t p = f.p;
    for (std::uint64_t t = 0; t < p; ++t) {
        // Horner in t for sum c[j] t^j  (s = 1).
        std::uint64_t acc = 0;
        for (unsigned j = d + 1; j-- > 0;) acc = (acc * t + c[j]) % p;
        if (acc == 0)
            roots.push_back(ProjectivePoint(
                {Scalar::one(f), Scalar::from_residue(f, t)}));
    }
    if (c[d] == 0)
        roots.push_back(ProjectivePoint({Scalar::zero(f), Scalar::one(f)}));
    return roots;
}

HomogeneousForm cone_pullback(const HomogeneousForm& plane_form,
                              const Projection& proj) {
    if (plane_form.ambient_dim() != 2)
        throw DimensionMismatch("cone_pullback expects a plane form");
    return compose_linear(plane_form,
                          {proj.forms[0], proj.forms[1], proj.forms[2]},
                          proj.source_dim);
}

namespace {

struct FormParser {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t ambient_dim;
    FieldSpec field;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::uint64_t parse_uint() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw ParseError("expected a number at offset " + std::to_string(pos));
        std::uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + (text[pos++] - '0');
        return v;
    }

    // factor := integer[/integer] | xK[^e]
    // term   := factor (* factor)*
    // form   := [+-] term ((+|-) term)*
    struct Term {
        Scalar coeff;
        std::vector<unsigned> exps;
    };

    Term parse_term() {
        Term t{Scalar::one(field), std::vector<unsigned>(ambient_dim + 1, 0)};
        for (;;) {
            skip_ws();
            if (pos < text.size() && (text[pos] == 'x' || text[pos] == 'X')) {
                ++pos;
                const std::uint64_t var = parse_uint();
                if (var > ambient_dim)
                    throw ParseError("variable x" + std::to_string(var) +
                                     " out of range for P^" + std::to_string(ambient_dim));
                unsigned e = 1;
                if (eat('^')) e = static_cast<unsigned>(parse_uint());
                t.exps[var] += e;
            } else if (pos < text.size() &&
                       std::isdigit(static_cast<unsigned char>(text[pos]))) {
                const std::uint64_t num = parse_uint();
                Scalar c = Scalar::from_int(field, static_cast<long long>(num));
                if (eat('/')) {
                    const std::uint64_t den = parse_uint();
                    if (den == 0) throw ParseError("zero denominator");
                    c = c / Scalar::from_int(field, static_cast<long long>(den));
                }
                t.coeff *= c;
            } else {
                throw ParseError("expected a factor at offset " + std::to_string(pos));
            }
            if (!eat('*')) break;
        }
        return t;
    }

    HomogeneousForm parse() {
        std::vector<Term> terms;
        bool first = true;
        for (;;) {
            skip_ws();
            if (pos >= text.size()) break;
            Scalar sign = Scalar::one(field);
            if (eat('-')) sign = -sign;
            else if (!eat('+') && !first)
                throw ParseError("expected + or - at offset " + std::to_string(pos));
            Term t = parse_term();
            t.coeff *= sign;
            terms.push_back(std::move(t));
            first = false;
        }
        if (terms.empty()) throw ParseError("empty form expression");
        unsigned degree = 0;
        for (unsigned e : terms.front().exps) degree += e;
        std::map<Monomial, Scalar> collected;
        HomogeneousForm f(ambient_dim, degree, field);
        for (auto& t : terms) {
            unsigned d = 0;
            for (unsigned e : t.exps) d += e;
            if (d != degree)
                throw ParseError("inhomogeneous expression: found degrees " +
                                 std::to_string(degree) + " and " + std::to_string(d));
            auto [it, inserted] = collected.emplace(Monomial{t.exps}, t.coeff);
            if (!inserted) it->second += t.coeff;
        }
        return HomogeneousForm::from_terms(ambient_dim, degree, field,
                                           std::move(collected));
    }
};

}  // namespace

HomogeneousForm parse_form(const std::string& text, std::size_t ambient_dim,
                           FieldSpec field) {
    FormParser p{text, 0, ambient_dim, field};
    return p.parse();
}

}  // namespace nodal
