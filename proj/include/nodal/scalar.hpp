#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "nodal/error.hpp"

namespace nodal {

/// Identifies the coefficient field of a computation: the rationals, or a
/// prime field F_p with 2^16 <= p < 2^31. Every Scalar carries its field;
/// mixing fields in one operation throws FieldMismatch.
struct FieldSpec {
    enum class Kind : std::uint8_t { Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    std::uint32_t p = 0;  // modulus, meaningful iff kind == PrimeField

    static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }
    static FieldSpec prime_field(std::uint32_t p);

    bool operator==(const FieldSpec&) const = default;

    /// "qq" or "fp:<p>".
    std::string to_string() const;
    static FieldSpec parse(const std::string& text);
};

/// Default working prime: large enough for genericity, small enough that
/// P^1 and P^2 scans stay cheap.
inline constexpr std::uint32_t kDefaultPrime = 65521;

bool is_prime(std::uint64_t n);

/// An exact field element in canonical form: a reduced fraction with
/// positive denominator over Q, or a residue in [0, p) over F_p.
/// Immutable value type; all arithmetic is exact.
class Scalar {
public:
    /// Zero of Q. Exists so containers can default-construct; computations
    /// always build scalars from an explicit field.
    Scalar() : payload_(mpq_class(0)) {}

    static Scalar zero(const FieldSpec& f) { return from_int(f, 0); }
    static Scalar one(const FieldSpec& f) { return from_int(f, 1); }
    static Scalar from_int(const FieldSpec& f, long long v);
    /// Q only.
    static Scalar from_fraction(long long num, long long den);
    /// Residue taken mod p.
    static Scalar from_residue(const FieldSpec& f, std::uint64_t v);

    FieldSpec field() const {
        if (const FpValue* fp = std::get_if<FpValue>(&payload_))
            return FieldSpec{FieldSpec::Kind::PrimeField, fp->p};
        return FieldSpec::rationals();
    }

    bool is_zero() const;
    bool is_fp() const { return std::holds_alternative<FpValue>(payload_); }

    /// Residue value; F_p scalars only.
    std::uint32_t residue() const;
    /// Underlying rational; Q scalars only.
    const mpq_class& rational() const;

    Scalar operator-() const;
    Scalar inverse() const;  // DivisionByZero on zero
    Scalar pow(unsigned e) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    bool operator==(const Scalar& b) const;
    bool operator!=(const Scalar& b) const { return !(*this == b); }

    /// Total order on canonical encodings of a common field (numeric order
    /// over Q, residue order over F_p). Used for deduplication, not algebra.
    int cmp(const Scalar& b) const;
    bool operator<(const Scalar& b) const { return cmp(b) < 0; }

    /// Decimal encoding: "3/7", "-2", "0" over Q; the residue over F_p.
    std::string to_string() const;
    static Scalar parse(const FieldSpec& f, const std::string& text);

    /// Reduce a rational scalar mod p (num * den^-1). Throws DivisionByZero
    /// if the denominator vanishes mod p.
    Scalar to_prime_field(std::uint32_t p) const;

private:
    struct FpValue {
        std::uint32_t p;
        std::uint32_t v;
        bool operator==(const FpValue&) const = default;
    };

    explicit Scalar(FpValue v) : payload_(v) {}
    explicit Scalar(mpq_class q) : payload_(std::move(q)) {}

    static void check_same_field(const Scalar& a, const Scalar& b);

    std::variant<mpq_class, FpValue> payload_;
};

/// Modular inverse in [0, p), extended Euclid. Throws DivisionByZero on 0.
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);

/// Deterministic seeded generator (splitmix64). Identical seeds give
/// identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// Uniform in [0, bound), bound >= 1: unbiased via rejection.
    std::uint64_t below(std::uint64_t bound);

    /// Independent child stream, reproducible from (seed, label).
    Rng child(std::uint64_t label) const;

    std::uint64_t seed() const { return seed_of_record_; }

private:
    std::uint64_t state_;
    std::uint64_t seed_of_record_ = 0;
    friend Rng make_rng(std::uint64_t);
};

/// Rng that remembers its construction seed (for report replay fields).
Rng make_rng(std::uint64_t seed);

/// Uniform residue over F_p; over Q, a reduced ratio of bounded random
/// integers. Reproducible given the rng state.
Scalar random_scalar(const FieldSpec& f, Rng& rng);

/// Nonzero variant of random_scalar.
Scalar random_nonzero_scalar(const FieldSpec& f, Rng& rng);

}  // namespace nodal
