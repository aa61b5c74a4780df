#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "nodal/scalar.hpp"

using namespace nodal;

namespace {
const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec FP = FieldSpec::prime_field(kDefaultPrime);
}  // namespace

TEST_CASE("rational arithmetic is exact fraction arithmetic") {
    const Scalar half = Scalar::from_fraction(1, 2);
    const Scalar third = Scalar::from_fraction(1, 3);
    CHECK(half + third == Scalar::from_fraction(5, 6));
    CHECK((half + third).to_string() == "5/6");
    CHECK(Scalar::from_fraction(2, 4) == half);  // canonical form
    CHECK(Scalar::from_fraction(-1, -2) == half);
    CHECK(Scalar::from_fraction(1, -2).to_string() == "-1/2");
}

TEST_CASE("prime field wraparound and inverse") {
    const Scalar a = Scalar::from_int(FP, 65520);
    const Scalar one = Scalar::one(FP);
    CHECK((a + one).is_zero());

    const Scalar two = Scalar::from_int(FP, 2);
    const Scalar inv = two.inverse();
    CHECK(inv.residue() == 32761);
    CHECK(two * inv == one);  // 2 * 32761 = 65522 = 65521 + 1
}

TEST_CASE("division errors") {
    CHECK_THROWS_AS(Scalar::one(FP) / Scalar::zero(FP), DivisionByZero);
    CHECK_THROWS_AS(Scalar::zero(QQ).inverse(), DivisionByZero);
    CHECK_THROWS_AS(Scalar::one(FP) + Scalar::one(QQ), FieldMismatch);
    const FieldSpec other = FieldSpec::prime_field(65537);
    CHECK_THROWS_AS(Scalar::one(FP) * Scalar::one(other), FieldMismatch);
}

TEST_CASE("field spec parsing and validation") {
    CHECK(FieldSpec::parse("qq") == QQ);
    CHECK(FieldSpec::parse("fp:65521") == FP);
    CHECK(FP.to_string() == "fp:65521");
    CHECK_THROWS_AS(FieldSpec::parse("fp:65520"), Error);  // composite
    CHECK_THROWS_AS(FieldSpec::parse("fp:97"), Error);     // tiny prime
    CHECK_THROWS_AS(FieldSpec::parse("gf:2"), ParseError);
    CHECK(is_prime(65521));
    CHECK(is_prime(2147483647));
    CHECK(!is_prime(65521ull * 3));
}

TEST_CASE("scalar string round trips") {
    for (const char* text : {"3/7", "-2", "0", "123456789012345678901/7"}) {
        const Scalar s = Scalar::parse(QQ, text);
        CHECK(Scalar::parse(QQ, s.to_string()) == s);
    }
    const Scalar r = Scalar::parse(FP, "70000");
    CHECK(r.residue() == 70000 - 65521);
    CHECK(Scalar::parse(FP, "-1").residue() == 65520);
    CHECK_THROWS_AS(Scalar::parse(QQ, "1/0"), Error);
    CHECK_THROWS_AS(Scalar::parse(QQ, "abc"), ParseError);
}

TEST_CASE("random scalars are deterministic per seed") {
    Rng a = make_rng(1);
    Rng b = make_rng(1);
    const Scalar x = random_scalar(FP, a);
    const Scalar y = random_scalar(FP, b);
    CHECK(x == y);

    // Two draws from one stream sit at distinct positions.
    const Scalar z = random_scalar(FP, a);
    CHECK(x != z);
}

TEST_CASE("random residues look uniform in coarse bins") {
    Rng rng = make_rng(7);
    constexpr int kDraws = 10'000;
    constexpr int kBins = 64;
    std::map<int, int> bins;
    for (int i = 0; i < kDraws; ++i) {
        const Scalar s = random_scalar(FP, rng);
        bins[static_cast<int>(s.residue() / ((kDefaultPrime / kBins) + 1))]++;
    }
    const double expected = static_cast<double>(kDraws) / kBins;
    for (const auto& [bin, count] : bins) CHECK(count < 10 * expected);
    CHECK(bins.size() == kBins);
}

TEST_CASE("field axioms hold exactly on random triples") {
    for (const FieldSpec& f : {QQ, FP}) {
        Rng rng = make_rng(11);
        for (int i = 0; i < 1000; ++i) {
            const Scalar a = random_scalar(f, rng);
            const Scalar b = random_scalar(f, rng);
            const Scalar c = random_scalar(f, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == Scalar::zero(f));
            if (!b.is_zero()) CHECK(b * b.inverse() == Scalar::one(f));
            CHECK((a - b) + b == a);
        }
    }
}

TEST_CASE("canonical encodings decide equality") {
    Rng rng = make_rng(23);
    for (int i = 0; i < 200; ++i) {
        const Scalar a = random_scalar(QQ, rng);
        const Scalar b = random_scalar(QQ, rng);
        CHECK((a == b) == (a.to_string() == b.to_string()));
        CHECK((a.cmp(b) == 0) == (a == b));
    }
}

TEST_CASE("rational reduction mod p matches field inverse") {
    const Scalar half = Scalar::from_fraction(1, 2);
    CHECK(half.to_prime_field(kDefaultPrime).residue() == 32761);
    const Scalar bad = Scalar::from_fraction(1, kDefaultPrime);
    CHECK_THROWS_AS(bad.to_prime_field(kDefaultPrime), DivisionByZero);

    Rng rng = make_rng(31);
    for (int i = 0; i < 100; ++i) {
        const Scalar a = random_scalar(QQ, rng);
        const Scalar b = random_scalar(QQ, rng);
        // Reduction is a ring homomorphism.
        CHECK((a + b).to_prime_field(kDefaultPrime) ==
              a.to_prime_field(kDefaultPrime) + b.to_prime_field(kDefaultPrime));
        CHECK((a * b).to_prime_field(kDefaultPrime) ==
              a.to_prime_field(kDefaultPrime) * b.to_prime_field(kDefaultPrime));
    }
}

TEST_CASE("pow matches repeated multiplication") {
    Rng rng = make_rng(41);
    for (int i = 0; i < 50; ++i) {
        const Scalar a = random_scalar(FP, rng);
        Scalar acc = Scalar::one(FP);
        for (unsigned e = 0; e <= 6; ++e) {
            CHECK(a.pow(e) == acc);
            acc *= a;
        }
    }
}
