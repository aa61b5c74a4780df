#include "nodal/scalar.hpp"

#include <cstdlib>

namespace nodal {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    // Deterministic Miller-Rabin for n < 3,215,031,751.
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

FieldSpec FieldSpec::prime_field(std::uint32_t p) {
    if (p < (1u << 15) || p >= (1u << 31))
        throw Error("prime modulus out of range [2^15, 2^31): " +
                    std::to_string(p));
    if (!is_prime(p))
        throw Error("modulus is not prime: " + std::to_string(p));
    return FieldSpec{Kind::PrimeField, p};
}

std::string FieldSpec::to_string() const {
    if (kind == Kind::Rationals) return "qq";
    return "fp:" + std::to_string(p);
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "qq") return rationals();
    if (text.rfind("fp:", 0) == 0) {
        const std::string mod = text.substr(3);
        char* end = nullptr;
        unsigned long long v = std::strtoull(mod.c_str(), &end, 10);
        if (end == nullptr || *end != '\0' || mod.empty())
            throw ParseError("bad field spec: " + text);
        if (v >= (1ull << 31)) throw ParseError("bad field spec: " + text);
        return prime_field(static_cast<std::uint32_t>(v));
    }
    throw ParseError("bad field spec: " + text);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(p));
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

Scalar Scalar::from_int(const FieldSpec& f, long long v) {
    if (f.kind == FieldSpec::Kind::Rationals) return Scalar(mpq_class(static_cast<long>(v)));
    std::int64_t r = v % static_cast<std::int64_t>(f.p);
    if (r < 0) r += f.p;
    return Scalar(FpValue{f.p, static_cast<std::uint32_t>(r)});
}

Scalar Scalar::from_fraction(long long num, long long den) {
    if (den == 0) throw DivisionByZero("fraction with zero denominator");
    mpq_class q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::from_residue(const FieldSpec& f, std::uint64_t v) {
    if (f.kind != FieldSpec::Kind::PrimeField)
        throw FieldMismatch("from_residue requires a prime field");
    return Scalar(FpValue{f.p, static_cast<std::uint32_t>(v % f.p)});
}

bool Scalar::is_zero() const {
    if (const FpValue* fp = std::get_if<FpValue>(&payload_)) return fp->v == 0;
    return std::get<mpq_class>(payload_) == 0;
}

std::uint32_t Scalar::residue() const {
    const FpValue* fp = std::get_if<FpValue>(&payload_);
    if (!fp) throw FieldMismatch("residue() on a rational scalar");
    return fp->v;
}

const mpq_class& Scalar::rational() const {
    const mpq_class* q = std::get_if<mpq_class>(&payload_);
    if (!q) throw FieldMismatch("rational() on a prime-field scalar");
    return *q;
}

void Scalar::check_same_field(const Scalar& a, const Scalar& b) {
    if (a.payload_.index() != b.payload_.index())
        throw FieldMismatch("mixed Q and F_p operands");
    if (const FpValue* fa = std::get_if<FpValue>(&a.payload_)) {
        const FpValue* fb = std::get_if<FpValue>(&b.payload_);
        if (fa->p != fb->p)
            throw FieldMismatch("mixed moduli " + std::to_string(fa->p) +
                                " and " + std::to_string(fb->p));
    }
}

Scalar Scalar::operator-() const {
    if (const FpValue* fp = std::get_if<FpValue>(&payload_))
        return Scalar(FpValue{fp->p, fp->v == 0 ? 0 : fp->p - fp->v});
    return Scalar(mpq_class(-std::get<mpq_class>(payload_)));
}

Scalar Scalar::inverse() const {
    if (const FpValue* fp = std::get_if<FpValue>(&payload_))
        return Scalar(FpValue{fp->p, mod_inverse(fp->v, fp->p)});
    const mpq_class& q = std::get<mpq_class>(payload_);
    if (q == 0) throw DivisionByZero("inverse of zero");
    return Scalar(mpq_class(1 / q));
}

Scalar Scalar::pow(unsigned e) const {
    Scalar result = Scalar::one(field());
    Scalar base = *this;
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar::check_same_field(a, b);
    if (const auto* fa = std::get_if<Scalar::FpValue>(&a.payload_)) {
        const auto* fb = std::get_if<Scalar::FpValue>(&b.payload_);
        std::uint64_t s = static_cast<std::uint64_t>(fa->v) + fb->v;
        if (s >= fa->p) s -= fa->p;
        return Scalar(Scalar::FpValue{fa->p, static_cast<std::uint32_t>(s)});
    }
    return Scalar(mpq_class(std::get<mpq_class>(a.payload_) +
                            std::get<mpq_class>(b.payload_)));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    Scalar::check_same_field(a, b);
    if (const auto* fa = std::get_if<Scalar::FpValue>(&a.payload_)) {
        const auto* fb = std::get_if<Scalar::FpValue>(&b.payload_);
        std::uint32_t r = fa->v >= fb->v ? fa->v - fb->v : fa->v + fa->p - fb->v;
        return Scalar(Scalar::FpValue{fa->p, r});
    }
    return Scalar(mpq_class(std::get<mpq_class>(a.payload_) -
                            std::get<mpq_class>(b.payload_)));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar::check_same_field(a, b);
    if (const auto* fa = std::get_if<Scalar::FpValue>(&a.payload_)) {
        const auto* fb = std::get_if<Scalar::FpValue>(&b.payload_);
        std::uint64_t r = static_cast<std::uint64_t>(fa->v) * fb->v % fa->p;
        return Scalar(Scalar::FpValue{fa->p, static_cast<std::uint32_t>(r)});
    }
    return Scalar(mpq_class(std::get<mpq_class>(a.payload_) *
                            std::get<mpq_class>(b.payload_)));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    Scalar::check_same_field(a, b);
    if (b.is_zero()) throw DivisionByZero("division by zero");
    if (const auto* fa = std::get_if<Scalar::FpValue>(&a.payload_)) {
        const auto* fb = std::get_if<Scalar::FpValue>(&b.payload_);
        std::uint64_t r = static_cast<std::uint64_t>(fa->v) *
                          mod_inverse(fb->v, fa->p) % fa->p;
        return Scalar(Scalar::FpValue{fa->p, static_cast<std::uint32_t>(r)});
    }
    return Scalar(mpq_class(std::get<mpq_class>(a.payload_) /
                            std::get<mpq_class>(b.payload_)));
}

bool Scalar::operator==(const Scalar& b) const {
    check_same_field(*this, b);
    return payload_ == b.payload_;
}

int Scalar::cmp(const Scalar& b) const {
    check_same_field(*this, b);
    if (const FpValue* fa = std::get_if<FpValue>(&payload_)) {
        const FpValue* fb = std::get_if<FpValue>(&b.payload_);
        return fa->v < fb->v ? -1 : fa->v > fb->v ? 1 : 0;
    }
    return ::cmp(std::get<mpq_class>(payload_), std::get<mpq_class>(b.payload_));
}

std::string Scalar::to_string() const {
    if (const FpValue* fp = std::get_if<FpValue>(&payload_))
        return std::to_string(fp->v);
    const mpq_class& q = std::get<mpq_class>(payload_);
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Scalar Scalar::parse(const FieldSpec& f, const std::string& text) {
    if (text.empty()) throw ParseError("empty scalar literal");
    if (f.kind == FieldSpec::Kind::Rationals) {
        try {
            mpq_class q(text);
            if (q.get_den() == 0) throw ParseError("zero denominator: " + text);
            q.canonicalize();
            return Scalar(std::move(q));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational literal: " + text);
        }
    }
    try {
        mpz_class z(text);
        mpz_class r = z % f.p;
        if (r < 0) r += f.p;
        return Scalar(FpValue{f.p, static_cast<std::uint32_t>(r.get_ui())});
    } catch (const std::invalid_argument&) {
        throw ParseError("bad residue literal: " + text);
    }
}

Scalar Scalar::to_prime_field(std::uint32_t p) const {
    if (const FpValue* fp = std::get_if<FpValue>(&payload_)) {
        if (fp->p != p) throw FieldMismatch("scalar already in a different F_p");
        return *this;
    }
    const mpq_class& q = std::get<mpq_class>(payload_);
    mpz_class num = q.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = q.get_den() % p;
    if (den == 0)
        throw DivisionByZero("denominator divisible by " + std::to_string(p));
    const std::uint64_t n = num.get_ui();
    const std::uint64_t d = den.get_ui();
    return Scalar(FpValue{
        p, static_cast<std::uint32_t>(n * mod_inverse(static_cast<std::uint32_t>(d), p) % p)});
}

std::uint64_t Rng::next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw Error("Rng::below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

Rng Rng::child(std::uint64_t label) const {
    Rng probe(state_ ^ (0xd1b54a32d192ed03ull * (label + 1)));
    Rng c(probe.next_u64());
    c.seed_of_record_ = c.state_;
    return c;
}

Rng make_rng(std::uint64_t seed) {
    Rng r(seed);
    r.seed_of_record_ = seed;
    return r;
}

Scalar random_scalar(const FieldSpec& f, Rng& rng) {
    if (f.kind == FieldSpec::Kind::PrimeField)
        return Scalar::from_residue(f, rng.below(f.p));
    // Bounded random fraction; enough spread for genericity over Q.
    const long long num = static_cast<long long>(rng.below(2001)) - 1000;
    const long long den = static_cast<long long>(rng.below(1000)) + 1;
    return Scalar::from_fraction(num, den);
}

Scalar random_nonzero_scalar(const FieldSpec& f, Rng& rng) {
    for (;;) {
        Scalar s = random_scalar(f, rng);
        if (!s.is_zero()) return s;
    }
}

}  // namespace nodal
