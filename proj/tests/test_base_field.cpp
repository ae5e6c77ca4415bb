#include <catch2/catch_amalgamated.hpp>

#include <cayleyff/base_field.hpp>
#include <cayleyff/errors.hpp>

using namespace cayleyff;

TEST_CASE("prime field construction and validation", "[base_field]") {
    BaseField f2(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.p() == 2);
    CHECK(f2.m() == 1);

    CHECK_THROWS_AS(BaseField(4, 1), InputError);
    CHECK_THROWS_AS(BaseField(1, 1), InputError);
    CHECK_THROWS_AS(BaseField(0, 1), InputError);
    CHECK_THROWS_MATCHES(BaseField(91, 1), InputError,
                         Catch::Matchers::Predicate<InputError>([](const InputError& e) { return e.code() == "NotPrime"; }));

    // m = 1 admits only a monic linear modulus
    CHECK_NOTHROW(BaseField(5, 1, std::vector<Felt>{1, 1}));
    CHECK_THROWS_AS(BaseField(5, 1, std::vector<Felt>{1, 1, 1}), InputError);
    CHECK_THROWS_AS(BaseField(5, 1, std::vector<Felt>{1, 2}), InputError);
}

TEST_CASE("canonical modulus selection", "[base_field]") {
    CHECK(BaseField(2, 2).modulus() == std::vector<Felt>{1, 1, 1});       // y^2+y+1
    CHECK(BaseField(3, 2).modulus() == std::vector<Felt>{1, 0, 1});       // y^2+1
    CHECK(BaseField(2, 3).modulus() == std::vector<Felt>{1, 1, 0, 1});    // y^3+y+1
    CHECK(BaseField(2, 4).modulus() == std::vector<Felt>{1, 1, 0, 0, 1}); // y^4+y+1
}

TEST_CASE("explicit modulus validation", "[base_field]") {
    // y^2+1 is reducible over F_2: (y+1)^2
    CHECK_THROWS_AS(BaseField(2, 2, std::vector<Felt>{1, 0, 1}), InputError);
    // degree disagrees with m
    CHECK_THROWS_AS(BaseField(2, 2, std::vector<Felt>{1, 1, 0, 1}), InputError);
    // not monic
    CHECK_THROWS_AS(BaseField(3, 2, std::vector<Felt>{1, 0, 2}), InputError);
    // coefficient out of range
    CHECK_THROWS_AS(BaseField(3, 2, std::vector<Felt>{4, 0, 1}), InputError);
    // a valid alternative modulus is accepted as-is
    BaseField f9(3, 2, std::vector<Felt>{2, 1, 1});  // y^2+y+2
    CHECK(f9.modulus() == std::vector<Felt>{2, 1, 1});
    CHECK(f9.q() == 9);
}

TEST_CASE("field axioms hold exhaustively", "[base_field]") {
    for (const BaseField& F : {BaseField(2, 3), BaseField(3, 2), BaseField(7, 1)}) {
        Felt q = static_cast<Felt>(F.q());
        for (Felt a = 0; a < q; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1) == a);
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a != 0) {
                CHECK(F.mul(a, F.inv(a)) == 1);
                CHECK(F.div(a, a) == 1);
            }
            for (Felt b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
                for (Felt c = 0; c < q; ++c) {
                    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("division by zero and zero inverse are rejected", "[base_field]") {
    BaseField F(3, 2);
    CHECK_THROWS_AS(F.inv(0), InputError);
    CHECK_THROWS_AS(F.div(1, 0), InputError);
}

TEST_CASE("powers follow the multiplicative group", "[base_field]") {
    for (const BaseField& F : {BaseField(3, 2), BaseField(2, 4), BaseField(13, 1)}) {
        Felt q = static_cast<Felt>(F.q());
        for (Felt a = 1; a < q; ++a) {
            CHECK(F.pow(a, q - 1) == 1);
            Felt acc = 1;
            for (std::uint32_t e = 0; e < 6; ++e) {
                CHECK(F.pow(a, e) == acc);
                acc = F.mul(acc, a);
            }
        }
        CHECK(F.pow(0, 3) == 0);
        CHECK_THROWS_AS(F.pow(0, 0), InputError);
    }
}

TEST_CASE("frobenius is additive in characteristic p", "[base_field]") {
    BaseField F(3, 2);
    auto frob = [&](Felt a) { return a == 0 ? Felt{0} : F.pow(a, 3); };
    for (Felt a = 0; a < 9; ++a)
        for (Felt b = 0; b < 9; ++b)
            CHECK(frob(F.add(a, b)) == F.add(frob(a), frob(b)));
}

TEST_CASE("digit packing round-trips", "[base_field]") {
    BaseField F(5, 3);
    for (Felt a = 0; a < 125; ++a) {
        auto digits = F.digits(a);
        REQUIRE(digits.size() == 3);
        CHECK(F.pack(digits) == a);
        for (Felt d : digits) CHECK(d < 5);
    }
}

TEST_CASE("large base fields work without lookup tables", "[base_field]") {
    BaseField F(2, 11);  // q = 2048, beyond the table limit
    REQUIRE(F.q() == 2048);
    Felt a = 1234, b = 987;
    CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.mul(F.mul(a, b), F.inv(b)) == a);
    CHECK(F.pow(a, F.q() - 1) == 1);
    CHECK(F.mul(a, b) == F.mul(b, a));
}

TEST_CASE("equality distinguishes fields by modulus", "[base_field]") {
    CHECK(BaseField(3, 2) == BaseField(3, 2));
    CHECK_FALSE(BaseField(3, 2) == BaseField(3, 2, std::vector<Felt>{2, 1, 1}));
    CHECK_FALSE(BaseField(3, 1) == BaseField(5, 1));
}
