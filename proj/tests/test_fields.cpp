#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <vector>

#include "char2q/fields.hpp"

using namespace char2q;

namespace {

const FieldDescriptor GF2 = FieldDescriptor::finite(1);
const FieldDescriptor GF4 = FieldDescriptor::finite(2);
const FieldDescriptor GF8 = FieldDescriptor::finite(3);
const FieldDescriptor F2T = FieldDescriptor::laurent(1, 32);
const FieldDescriptor F4T = FieldDescriptor::laurent(2, 16);

FieldElement P(const FieldDescriptor &d, const char *s) { return FieldElement::parse(d, s); }

std::vector<FieldDescriptor> all_families() {
    return {GF2, GF4, GF8, FieldDescriptor::finite(8), F2T, F4T, FieldDescriptor::laurent(3, 24)};
}

} // namespace

TEST_CASE("descriptor strings round trip") {
    CHECK(FieldDescriptor::parse("gf(4)") == GF4);
    CHECK(FieldDescriptor::parse("gf(2^3)") == GF8);
    CHECK(FieldDescriptor::parse("laurent(gf(2),prec=32)") == F2T);
    CHECK(FieldDescriptor::parse("laurent( gf(4) , prec=16 )") == F4T);
    CHECK(FieldDescriptor::parse("laurent(gf(2))").precision == kDefaultPrecision);
    CHECK(F4T.to_string() == "laurent(gf(4),prec=16)");
    CHECK_THROWS_AS(FieldDescriptor::parse("gf(6)"), SyntaxError);
    CHECK_THROWS_AS(FieldDescriptor::parse("gf(512)"), SyntaxError);
    CHECK_THROWS_AS(FieldDescriptor::parse("laurent(gf(2),prec=0)"), SyntaxError);
}

TEST_CASE("every table polynomial is irreducible") {
    // Irreducible iff GF(2)[x]/(f) has no zero divisors.
    for (int k = 1; k <= kMaxDegree; ++k) {
        for (int x = 1; x < (1 << k); ++x) {
            int products_to_one = 0;
            for (int y = 1; y < (1 << k); ++y) {
                CHECK(gf::mul(k, static_cast<Coeff>(x), static_cast<Coeff>(y)) != 0);
                if (gf::mul(k, static_cast<Coeff>(x), static_cast<Coeff>(y)) == 1) ++products_to_one;
            }
            CHECK(products_to_one == 1);
        }
        CHECK(gf::trace(k, gf::trace_one(k)) == 1);
    }
    CHECK(gf::minimal_polynomial(2) == 0x7u);
    CHECK(gf::minimal_polynomial(3) == 0xBu);
    CHECK(gf::minimal_polynomial(4) == 0x13u);
}

TEST_CASE("parse_element examples") {
    const FieldElement w1 = P(GF4, "w+1");
    CHECK(w1.finite_value() == 0b11);
    CHECK(w1.to_string() == "w+1");

    const FieldElement x = P(F2T, "t^-1 + 1 + t^2");
    CHECK(x.valuation() == -1);
    CHECK(x.coefficient(-1) == 1);
    CHECK(x.coefficient(0) == 1);
    CHECK(x.coefficient(1) == 0);
    CHECK(x.coefficient(2) == 1);
    CHECK(x.coefficient(3) == 0);
    CHECK(x.relative_precision() == 32);

    CHECK_THROWS_AS(P(GF2, "w"), SyntaxError);
    CHECK_THROWS_AS(P(GF4, "t"), SyntaxError);
    CHECK_THROWS_AS(P(F2T, "1 +"), SyntaxError);
    CHECK_THROWS_AS(P(F2T, "1 + t^40"), PrecisionOverflow);
    CHECK_THROWS_AS(P(F2T, "t^99999999"), PrecisionOverflow);

    CHECK(P(F4T, "(w+1)*t^2 + w*t").to_string() == "w*t + (w+1)*t^2");
    CHECK(P(GF4, "w^2") == P(GF4, "w+1"));
    CHECK(P(F2T, "(1+t)^2") == P(F2T, "1+t^2"));
    CHECK(P(F2T, "t^(-2)*t") == P(F2T, "t^-1"));
    CHECK(P(GF8, "w^-1") == P(GF8, "w^2+1"));
    CHECK(P(F2T, "0").is_exact_zero());
}

TEST_CASE("field_arith examples") {
    const FieldElement w = P(GF4, "w");
    CHECK((w + w).is_zero());
    // Minimal polynomial x^2 + x + 1: w(w+1) = w^2 + w = 1.
    CHECK(w * P(GF4, "w+1") == FieldElement::one(GF4));
    CHECK(w.inverse() == P(GF4, "w+1"));

    const FieldElement t = P(F2T, "t");
    const FieldElement ti = t.inverse();
    CHECK(ti.valuation() == -1);
    CHECK(ti == P(F2T, "t^-1"));

    CHECK_THROWS_AS((void)FieldElement::zero(GF4).inverse(), DivisionByZero);
    CHECK_THROWS_AS(P(GF4, "w") + P(GF8, "w"), DescriptorMismatch);
}

TEST_CASE("precision bookkeeping") {
    const FieldElement u = P(F2T, "1 + t");
    const FieldElement ui = u.inverse();
    CHECK(ui.relative_precision() == 32);
    for (int e = 0; e < 32; ++e) CHECK(ui.coefficient(e) == 1);
    CHECK_THROWS_AS((void)ui.coefficient(32), PrecisionLoss);
    CHECK(u * ui == FieldElement::one(F2T));

    // Cancellation leaves a zero known to the operands' absolute precision.
    const FieldElement z = ui + ui;
    CHECK(z.is_zero());
    CHECK_FALSE(z.is_exact_zero());
    CHECK(z.absolute_precision() == 32);

    // Differences lose relative precision, never gain it.
    const FieldElement d = ui + P(F2T, "1");
    CHECK(d.valuation() == 1);
    CHECK(d.absolute_precision() == 32);
    CHECK(d.relative_precision() == 31);

    const FieldElement s = d.square();
    CHECK(s.valuation() == 2);
    CHECK(s.relative_precision() == 32);
}

TEST_CASE("square_ops examples") {
    CHECK_FALSE(square_ops(P(F2T, "t")).is_square);
    const SquareResult r = square_ops(P(F2T, "t^2 + t^4"));
    REQUIRE(r.is_square);
    CHECK(*r.root == P(F2T, "t + t^2"));
    for (const FieldElement &x : enumerate_elements(GF8)) {
        const SquareResult s = square_ops(x);
        REQUIRE(s.is_square);
        CHECK(s.root->square() == x);
    }
    CHECK_FALSE(square_ops(P(F2T, "1 + t")).is_square);
    CHECK(square_ops(P(F4T, "w*t^-2")).is_square);
}

TEST_CASE("artin_schreier_solve examples") {
    CHECK_FALSE(artin_schreier_solve(P(GF2, "1")).root.has_value());

    // Exhaustive oracle over GF(4): the roots of x^2 + x = 1.
    std::vector<Coeff> roots;
    for (const FieldElement &x : enumerate_elements(GF4))
        if (wp(x) == P(GF4, "1")) roots.push_back(x.finite_value());
    CHECK(roots == std::vector<Coeff>{0b10, 0b11});
    const AsSolution s4 = artin_schreier_solve(P(GF4, "1"));
    REQUIRE(s4.root);
    CHECK(*s4.root == P(GF4, "w"));

    const AsSolution st = artin_schreier_solve(P(F2T, "t"));
    REQUIRE(st.root);
    CHECK(*st.root == P(F2T, "t + t^2 + t^4 + t^8 + t^16 + t^32"));
    CHECK(wp(*st.root) == P(F2T, "t"));

    const AsSolution pole = artin_schreier_solve(P(F2T, "t^-1"));
    CHECK_FALSE(pole.root.has_value());
    CHECK(pole.obstruction == AsObstruction::OddPole);

    const AsSolution tr = artin_schreier_solve(P(F2T, "1 + t^3"));
    CHECK_FALSE(tr.root.has_value());
    CHECK(tr.obstruction == AsObstruction::ResidueTrace);

    const AsSolution even = artin_schreier_solve(P(F2T, "t^-4 + t^-1"));
    REQUIRE(even.root);
    CHECK(wp(*even.root) == P(F2T, "t^-4 + t^-1"));

    CHECK_THROWS_AS((void)artin_schreier_solve(FieldElement::inexact_zero(F2T, -3)), PrecisionLoss);
}

TEST_CASE("artin_schreier_reduce examples") {
    CHECK(artin_schreier_reduce(P(F2T, "t^2 + t")).is_zero());
    const FieldElement r = artin_schreier_reduce(P(F2T, "t^-2"));
    CHECK(r == P(F2T, "t^-1"));
    // t^-2 - t^-1 lies in wp(F).
    CHECK(artin_schreier_solve(P(F2T, "t^-2") + r).root.has_value());
    CHECK(artin_schreier_reduce(P(GF4, "1")).is_zero());
    CHECK(artin_schreier_reduce(P(GF8, "1")) == P(GF8, "1"));
    // Trace-one representative of GF(4) is w.
    CHECK(artin_schreier_reduce(P(F4T, "w + t^-3 + t")) == P(F4T, "t^-3 + w"));
}

TEST_CASE("residue_and_trace examples") {
    CHECK(residue_and_trace(P(F2T, "1"), P(F2T, "t")) == 1);
    CHECK(residue_and_trace(P(F2T, "t"), P(F2T, "t")) == 0);
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const FieldElement b = random_element(F2T, rng);
        CHECK(residue_and_trace(P(F2T, "t^2 + t"), b) == 0);
    }
    CHECK_THROWS_AS((void)residue_and_trace(P(F2T, "1"), FieldElement::zero(F2T)), DivisionByZero);
    CHECK_THROWS_AS((void)residue_and_trace(P(GF4, "1"), P(GF4, "w")), DescriptorMismatch);
}

TEST_CASE("residue_trace_of_product") {
    CHECK(residue_trace_of_product(P(F2T, "t^-2"), P(F2T, "t")) == 1);
    CHECK(residue_trace_of_product(P(F4T, "w*t^-1"), P(F4T, "1")) == gf::trace(2, 2));
    CHECK(residue_trace_of_product(FieldElement::zero(F2T), P(F2T, "t^-9")) == 0);
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        const FieldElement a = random_element(F2T, rng);
        const FieldElement b = random_element(F2T, rng);
        CHECK(residue_trace_of_product(a, b.derivative() * b.inverse()) == residue_and_trace(a, b));
    }
    // t^-3 known mod t^1 against y known mod t^2: the t^2 coefficient of y is needed
    const std::vector<Coeff> one{1};
    const FieldElement x = FieldElement::from_series(F2T, -3, one, 1);
    const FieldElement y = FieldElement::from_series(F2T, 0, one, 2);
    CHECK_THROWS_AS((void)residue_trace_of_product(x, y), PrecisionLoss);
    CHECK(residue_trace_of_product(x, FieldElement::from_series(F2T, 0, one, 3)) == 0);
}

TEST_CASE("enumerate_elements") {
    const auto gf4 = enumerate_elements(GF4);
    REQUIRE(gf4.size() == 4);
    CHECK(gf4[0].is_zero());
    CHECK(gf4[1] == P(GF4, "1"));
    CHECK(gf4[2] == P(GF4, "w"));
    CHECK(gf4[3] == P(GF4, "w+1"));
    CHECK(enumerate_elements(GF8).size() == 8);

    // Zero plus, per valuation, 2^2 normalized coefficient triples.
    const auto window = enumerate_elements(FieldDescriptor::laurent(1, 16), LaurentWindow{-1, 1, 3});
    CHECK(window.size() == 1 + 3 * 4);
    std::set<std::string> distinct;
    for (const auto &x : window) distinct.insert(x.to_string());
    CHECK(distinct.size() == window.size());

    CHECK_THROWS_AS((void)enumerate_elements(F4T, LaurentWindow{-2, 2, 8}, 1000), WindowTooLarge);
}

TEST_CASE("field axioms over random triples") {
    for (const FieldDescriptor &d : all_families()) {
        Rng rng(1234 + static_cast<std::uint64_t>(d.k));
        for (int i = 0; i < 1000; ++i) {
            const FieldElement x = random_element(d, rng), y = random_element(d, rng), z = random_element(d, rng);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x * y == y * x);
            CHECK(x * x.inverse() == FieldElement::one(d));
            CHECK((x + x).is_zero());
            CHECK((x + y).square() == x.square() + y.square());
            CHECK(wp(x + y) == wp(x) + wp(y));
        }
    }
}

TEST_CASE("print then parse is the identity") {
    for (const FieldDescriptor &d : all_families()) {
        Rng rng(99);
        for (int i = 0; i < 200; ++i) {
            const FieldElement x = random_element(d, rng) * random_element(d, rng).inverse();
            const FieldElement y = FieldElement::parse(d, x.to_string());
            CHECK(y == x);
            CHECK(y.to_string() == x.to_string());
        }
    }
}

TEST_CASE("artin_schreier_solve soundness against exhaustive search") {
    for (const FieldDescriptor &d : {GF2, GF4, GF8, FieldDescriptor::finite(4)}) {
        const auto all = enumerate_elements(d);
        for (const FieldElement &a : all) {
            bool exists = false;
            for (const FieldElement &x : all) exists = exists || wp(x) == a;
            const AsSolution s = artin_schreier_solve(a);
            CHECK(s.root.has_value() == exists);
            if (s.root) CHECK(wp(*s.root) == a);
            CHECK(artin_schreier_reduce(a).is_zero() == exists);
        }
    }
    // Laurent: whenever NoSolution, no element of a window solves the equation to precision.
    const FieldDescriptor d = FieldDescriptor::laurent(1, 12);
    const auto candidates = enumerate_elements(d, LaurentWindow{-2, 1, 6});
    Rng rng(5);
    int unsolvable = 0;
    for (int i = 0; i < 40; ++i) {
        const FieldElement a = random_element(d, rng, LaurentWindow{-3, 1, 4});
        const AsSolution s = artin_schreier_solve(a);
        if (s.root) {
            CHECK(wp(*s.root) == a);
            continue;
        }
        ++unsolvable;
        for (const FieldElement &x : candidates) CHECK_FALSE(wp(x) == a);
    }
    CHECK(unsolvable > 0);
}

TEST_CASE("residue pairing bilinearity and vanishing") {
    for (const FieldDescriptor &d : {F2T, F4T}) {
        Rng rng(77);
        for (int i = 0; i < 200; ++i) {
            const FieldElement a1 = random_element(d, rng), a2 = random_element(d, rng);
            const FieldElement b1 = random_element(d, rng), b2 = random_element(d, rng);
            const FieldElement c = random_element(d, rng);
            CHECK(residue_and_trace(a1 + a2, b1) == (residue_and_trace(a1, b1) ^ residue_and_trace(a2, b1)));
            CHECK(residue_and_trace(a1, b1 * b2) == (residue_and_trace(a1, b1) ^ residue_and_trace(a1, b2)));
            CHECK(residue_and_trace(wp(c), b1) == 0);
            CHECK(residue_and_trace(a1, c.square()) == 0);
            // The pairing only sees a modulo wp(F).
            CHECK(residue_and_trace(artin_schreier_reduce(a1), b1) == residue_and_trace(a1, b1));
        }
    }
}
