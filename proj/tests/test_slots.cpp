#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "char2q/slots.hpp"

using namespace char2q;

namespace {

const FieldDescriptor GF4 = FieldDescriptor::finite(2);
const FieldDescriptor GF8 = FieldDescriptor::finite(3);
const FieldDescriptor F2T = FieldDescriptor::laurent(1, 16);
const FieldDescriptor F4T = FieldDescriptor::laurent(2, 16);

FieldElement P(const FieldDescriptor &d, const char *s) { return FieldElement::parse(d, s); }

Presentation as(const FieldDescriptor &d, const char *a, const char *b) {
    return Presentation(SymbolKind::AS, P(d, a), P(d, b));
}

struct Basis {
    Quaternion e, i, j, ij;
    explicit Basis(const Presentation &p)
        : e(Quaternion::unit(p)), i(Quaternion::basis(p, 1)), j(Quaternion::basis(p, 2)), ij(Quaternion::basis(p, 3)) {}
};

void require_all_pass(const SlotResult &r) {
    for (const Check &c : r.report.checks) {
        INFO(c.name << " " << c.detail);
        CHECK(c.passed);
    }
    CHECK(r.report.all_passed());
    CHECK(verify_slot_result(r).all_passed());
}

} // namespace

TEST_CASE("ensure_nonorthogonal examples") {
    const Presentation p = as(F2T, "1", "t");
    const Basis q(p);
    const NonorthogonalPair same = ensure_nonorthogonal(p, q.j, q.ij);
    CHECK_FALSE(same.trace.fired);
    CHECK(same.y2 == q.ij);

    const Quaternion y2 = P(F2T, "1 + t") * q.j;
    const NonorthogonalPair fixed = ensure_nonorthogonal(p, q.j, y2);
    CHECK(fixed.trace.fired);
    CHECK(fixed.trace.dependent_branch);
    CHECK_FALSE(fixed.trace.shifted);
    REQUIRE(fixed.trace.axis);
    CHECK(*fixed.trace.axis == P(F2T, "t^-1") * q.ij);
    CHECK(fixed.y2 == P(F2T, "1 + t") * (q.j + q.ij));
    CHECK(norm(fixed.y2) == P(F2T, "t*(1 + t)^2"));
    CHECK_FALSE(polar(q.j, fixed.y2).is_zero());
    CHECK(polar(fixed.y2, q.e).is_zero());

    CHECK_THROWS_AS((void)ensure_nonorthogonal(p, q.i, q.j), PreconditionViolated);
    CHECK_THROWS_AS((void)ensure_nonorthogonal(p, q.e, q.j), PreconditionViolated);
}

TEST_CASE("ensure_nonorthogonal shifts a zero-norm axis") {
    // A split ambient: the solved axis can be isotropic, and then u + e is used.
    const Presentation p = as(GF4, "0", "1");
    const Quaternion e = Quaternion::unit(p);
    int shifted = 0;
    for (const FieldElement &c1 : enumerate_elements(GF4))
        for (const FieldElement &c2 : enumerate_elements(GF4))
            for (const FieldElement &c3 : enumerate_elements(GF4)) {
                const Quaternion y1(p, {FieldElement::zero(GF4), FieldElement::zero(GF4), c2, c3});
                const Quaternion y = y1 + c1 * Quaternion::basis(p, 1);
                if (!polar(y, e).is_zero() || norm(y).is_zero() || y.is_zero()) continue;
                const NonorthogonalPair out = ensure_nonorthogonal(p, y, y);
                shifted += out.trace.shifted ? 1 : 0;
                if (out.trace.shifted) CHECK(norm(*out.trace.axis) == FieldElement::one(GF4));
                CHECK(norm(out.y2) == norm(y));
                CHECK_FALSE(polar(y, out.y2).is_zero());
            }
    CHECK(shifted > 0);
}

TEST_CASE("lemma postconditions on random orthogonal pairs") {
    for (const FieldDescriptor &d : {F2T, F4T, GF8}) {
        const Presentation p = d == F4T ? as(d, "w", "t") : (d == GF8 ? as(d, "w", "w + 1") : as(d, "1", "t"));
        const Quaternion e = Quaternion::unit(p);
        Rng rng(17);
        int fired = 0, dependent = 0;
        for (int s = 0; s < 100; ++s) {
            const Realization r = sample_presentation(p, SymbolKind::AS, rng);
            const FieldElement alpha = rng.coin() ? FieldElement::zero(d) : random_element(d, rng, kSampleWindow);
            const Quaternion y2 = alpha * e + random_element(d, rng, kSampleWindow) * r.y;
            if (norm(y2).is_zero()) continue;
            const NonorthogonalPair out = ensure_nonorthogonal(p, r.y, y2);
            CHECK(norm(out.y2) == norm(y2));
            CHECK(polar(out.y2, e).is_zero());
            CHECK_FALSE(polar(r.y, out.y2).is_zero());
            fired += out.trace.fired ? 1 : 0;
            dependent += out.trace.dependent_branch ? 1 : 0;
            // Idempotent once non-orthogonal.
            const NonorthogonalPair again = ensure_nonorthogonal(p, out.y1, out.y2);
            CHECK_FALSE(again.trace.fired);
            CHECK(again.y2 == out.y2);
        }
        CHECK(fired > 50);
        CHECK(dependent == fired);
    }
}

TEST_CASE("independent branch preserves norm and e-orthogonality") {
    const Presentation p = as(F2T, "1", "t");
    const Quaternion e = Quaternion::unit(p);
    Rng rng(23);
    int independent = 0;
    for (int s = 0; s < 50; ++s) {
        const Realization r1 = sample_presentation(p, SymbolKind::AS, rng);
        const Realization r2 = sample_presentation(p, SymbolKind::AS, rng);
        const NonorthogonalPair out = lemma_transvect(p, r1.y, r2.y);
        independent += out.trace.dependent_branch ? 0 : 1;
        CHECK(norm(out.y2) == norm(r2.y));
        CHECK(polar(out.y2, e).is_zero());
        CHECK(polar(*out.trace.axis, r1.y) == P(F2T, "1"));
    }
    CHECK(independent > 40);
}

TEST_CASE("automatic relations for constrained triples") {
    for (const FieldDescriptor &d : {F2T, GF8}) {
        Rng rng(5);
        const Presentation p = d == GF8 ? as(d, "w", "w + 1") : as(d, "1", "t");
        const NormForm nf = norm_form(p);
        const Quaternion e = Quaternion::unit(p);
        for (int s = 0; s < 250; ++s) {
            const Quaternion y0 = random_quaternion(p, rng);
            const Quaternion y = y0 + trace(y0) * Quaternion::basis(p, 1);
            if (!trace(y).is_zero()) continue;
            const std::vector<Vector> span = {nf.to_form(e), nf.to_form(y)};
            if (rank(span) < 2) continue;
            for (bool as_kind : {true, false}) {
                const FieldElement on_e = as_kind ? FieldElement::one(d) : FieldElement::zero(d);
                const FieldElement on_y = as_kind ? FieldElement::zero(d) : FieldElement::one(d);
                const std::vector<PairingConstraint> cs = {{nf.to_form(e), on_e}, {nf.to_form(y), on_y}};
                const Quaternion x = nf.from_form(p, solve_prescribed_pairings(nf.form, cs));
                CHECK(x * y + y * x == (as_kind ? y : e));
            }
        }
    }
}

TEST_CASE("common_second_slot standing instance") {
    const Presentation p = as(F2T, "1", "t");
    const Basis q(p);
    const SlotInstance inst{p, {Realization{p, q.i, q.j},
                                Realization{as(F2T, "1 + t + t^2", "t"), q.i + P(F2T, "t") * q.e, q.j}}};
    const SlotResult r = common_second_slot(inst);
    CHECK_FALSE(r.degenerate);
    CHECK(r.slot == P(F2T, "t"));
    REQUIRE(r.witnesses.size() == 2);
    CHECK(r.witnesses[0].y == q.j);
    require_all_pass(r);
}

TEST_CASE("common first slots on the standing instance") {
    const Presentation p = as(F2T, "1", "t");
    const Basis q(p);
    const SlotInstance inst{p, {Realization{p, q.i, q.j}, Realization{as(F2T, "1 + t + t^2", "t*(1 + t)^2"),
                                                                        q.i + P(F2T, "t") * q.e,
                                                                        P(F2T, "1 + t") * q.j}}};
    const SlotResult r = common_first_slot_as(inst);
    CHECK(r.lemma.fired);
    CHECK_FALSE(r.degenerate);
    require_all_pass(r);
    CHECK(class_equal(make_symbol(SymbolKind::AS, r.slot, inst.targets[0].target.b()),
                      make_symbol(SymbolKind::AS, p.a(), p.b())));

    CHECK_THROWS_AS((void)common_first_slot_bil(inst), InvalidInstance);
    SlotInstance broken = inst;
    broken.targets[1].y = q.ij;
    CHECK_THROWS_AS((void)common_second_slot(broken), InvalidInstance);
}

TEST_CASE("common_first_slot_bil on sampled instances") {
    const Presentation p = as(F2T, "1", "t");
    Rng rng(41);
    for (int s = 0; s < 10; ++s) {
        const SlotInstance inst = generate_instance(p, Theorem::CommonFirstBil, rng,
                                                    s % 2 ? Orthogonality::Dependent : Orthogonality::Random);
        const SlotResult r = common_first_slot_bil(inst);
        require_all_pass(r);
        CHECK_FALSE(norm(r.witnesses[0].x).is_zero());
    }
}

TEST_CASE("degenerate branches over finite fields") {
    const FieldDescriptor GF16 = FieldDescriptor::finite(4);
    for (const FieldDescriptor &d : {GF4, GF8, GF16}) {
        const Presentation p = as(d, "w", "w + 1");
        Rng rng(3);
        for (Theorem t : {Theorem::CommonSecond, Theorem::CommonFirstAs, Theorem::CommonFirstBil}) {
            const SlotResult r = run_theorem(t, generate_instance(p, t, rng));
            CHECK(r.degenerate);
            CHECK(r.slot == (t == Theorem::CommonSecond ? FieldElement::one(d) : FieldElement::zero(d)));
            CHECK(r.witnesses.size() == 2);
            require_all_pass(r);
        }
    }
}

TEST_CASE("theorems over sampled nonsplit instances") {
    for (const FieldDescriptor &d : {F2T, F4T}) {
        const Presentation p = d == F4T ? as(d, "w", "t") : as(d, "1", "t");
        Rng rng(1234);
        for (Theorem t : {Theorem::CommonSecond, Theorem::CommonFirstAs, Theorem::CommonFirstBil}) {
            for (int s = 0; s < 8; ++s) {
                const SlotInstance inst =
                    generate_instance(p, t, rng, s % 2 ? Orthogonality::Dependent : Orthogonality::Random);
                const SlotResult r = run_theorem(t, inst);
                require_all_pass(r);
                if (t != Theorem::CommonSecond) CHECK(r.witnesses.front().x[0].is_exact_zero());
            }
        }
    }
}

TEST_CASE("tampering is detected") {
    const Presentation p = as(F2T, "1", "t");
    Rng rng(8);
    for (Theorem t : {Theorem::CommonSecond, Theorem::CommonFirstAs, Theorem::CommonFirstBil}) {
        const SlotResult r = run_theorem(t, generate_instance(p, t, rng));
        SlotResult bumped = r;
        bumped.slot = r.slot + P(F2T, "t");
        CHECK_FALSE(verify_slot_result(bumped).all_passed());
        SlotResult moved = r;
        auto c = moved.witnesses[1].x.coords();
        c[2] += P(F2T, "1");
        moved.witnesses[1].x = Quaternion(p, c);
        CHECK_FALSE(verify_slot_result(moved).all_passed());
    }
}

TEST_CASE("results are deterministic") {
    const Presentation p = as(F4T, "w", "t");
    for (Theorem t : {Theorem::CommonSecond, Theorem::CommonFirstAs, Theorem::CommonFirstBil}) {
        Rng r1(77), r2(77);
        const SlotResult a = run_theorem(t, generate_instance(p, t, r1, Orthogonality::Dependent));
        const SlotResult b = run_theorem(t, generate_instance(p, t, r2, Orthogonality::Dependent));
        CHECK(a.slot.identical(b.slot));
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t c = 0; c < 4; ++c) {
                CHECK(a.witnesses[k].x[c].identical(b.witnesses[k].x[c]));
                CHECK(a.witnesses[k].y[c].identical(b.witnesses[k].y[c]));
            }
    }
}

TEST_CASE("random mutations are detected") {
    Rng rng(50);
    std::vector<SlotResult> results;
    for (Theorem t : {Theorem::CommonSecond, Theorem::CommonFirstAs, Theorem::CommonFirstBil}) {
        results.push_back(run_theorem(t, generate_instance(as(F2T, "1", "t"), t, rng, Orthogonality::Dependent)));
        results.push_back(run_theorem(t, generate_instance(as(GF4, "w", "1"), t, rng)));
    }
    int detected = 0;
    for (int s = 0; s < 60; ++s) {
        const SlotResult &r = results[static_cast<std::size_t>(s) % results.size()];
        detected += verify_slot_result(mutate_result(r, rng)).all_passed() ? 0 : 1;
    }
    CHECK(detected == 60);
}
