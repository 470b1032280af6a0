#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pptlab/ball.hpp"
#include "pptlab/group.hpp"

using namespace pptlab;

namespace {

std::mt19937_64 rng(20260810);

int64_t pick(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

GroupElement random_element(const GroupInstance& inst) {
    switch (inst.family) {
        case Family::Lamplighter: {
            std::vector<int64_t> lamps;
            for (int64_t p = -6; p <= 6; ++p)
                if (pick(0, 3) == 0) lamps.push_back(p);
            return GroupElement::lamplighter(lamps, pick(-4, 4));
        }
        case Family::BaumslagSolitar:
            return GroupElement::bs(inst, pick(-3, 3), Int(pick(-20, 20)),
                                    static_cast<uint32_t>(pick(0, 3)));
        case Family::Free: {
            std::vector<int32_t> word;
            for (int64_t i = 0, len = pick(0, 8); i < len; ++i) {
                int32_t c = static_cast<int32_t>(pick(1, inst.rank));
                word.push_back(pick(0, 1) ? c : -c);
            }
            return GroupElement::free_word(inst, word);
        }
        case Family::FreeAbelian: {
            std::vector<int64_t> coords;
            for (int i = 0; i < inst.rank; ++i) coords.push_back(pick(-10, 10));
            return GroupElement::zn(inst, coords);
        }
    }
    throw std::logic_error("unreachable");
}

const std::vector<GroupInstance> kInstances = {
    GroupInstance::lamplighter(),
    GroupInstance::baumslag_solitar(2),
    GroupInstance::baumslag_solitar(3),
    GroupInstance::free_group(2),
    GroupInstance::free_abelian(2),
};

}  // namespace

TEST_CASE("identity and inverse laws on random elements") {
    for (const auto& inst : kInstances) {
        GroupElement e = GroupElement::identity(inst);
        CHECK(e.is_identity());
        for (int trial = 0; trial < 50; ++trial) {
            GroupElement g = random_element(inst);
            CHECK(mul(e, g) == g);
            CHECK(mul(g, e) == g);
            CHECK(mul(g, inv(g)).is_identity());
            CHECK(mul(inv(g), g).is_identity());
        }
    }
}

TEST_CASE("associativity on random triples, exact equality") {
    for (const auto& inst : kInstances) {
        for (int trial = 0; trial < 1000; ++trial) {
            GroupElement a = random_element(inst);
            GroupElement b = random_element(inst);
            GroupElement c = random_element(inst);
            CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        }
    }
}

TEST_CASE("mixed-instance arguments rejected") {
    GroupElement g = GroupElement::identity(GroupInstance::lamplighter());
    GroupElement h = GroupElement::identity(GroupInstance::baumslag_solitar(2));
    CHECK_THROWS_AS(mul(g, h), ValidationError);
    GroupElement b2 = GroupElement::identity(GroupInstance::baumslag_solitar(2));
    GroupElement b3 = GroupElement::identity(GroupInstance::baumslag_solitar(3));
    CHECK_THROWS_AS(mul(b2, b3), ValidationError);
}

TEST_CASE("lamplighter generators") {
    GroupInstance inst = GroupInstance::lamplighter();
    GroupElement a = gen_a(inst), t = gen_t(inst);

    // a is an involution
    CHECK(mul(a, a).is_identity());

    // t.a under the fixed multiplication convention: lamp at -1, shift 1.
    GroupElement ta = mul(t, a);
    CHECK(ta.lamp().shift == 1);
    CHECK(ta.lamp().lamps == std::vector<int64_t>{-1});

    // conjugation by t moves lamps down by one
    GroupElement tat = conjugate(t, a);
    CHECK(tat.lamp().shift == 0);
    CHECK(tat.lamp().lamps == std::vector<int64_t>{-1});
    CHECK(conjugate(inv(t), a).lamp().lamps == std::vector<int64_t>{1});
}

TEST_CASE("bs affine arithmetic") {
    GroupInstance inst = GroupInstance::baumslag_solitar(2);
    GroupElement a = gen_a(inst), t = gen_t(inst);

    // t a t^-1 = a^n
    CHECK(conjugate(t, a) == power(a, 2));

    // t^-1 a t is the translation by 1/n
    GroupElement c = conjugate(inv(t), a);
    CHECK(c.bs().tpow == 0);
    CHECK(c.bs().num == 1);
    CHECK(c.bs().denom_exp == 1);

    for (int trial = 0; trial < 100; ++trial) {
        GroupElement g = random_element(inst);
        CHECK(mul(g, inv(g)).is_identity());
    }

    // denominator exponent stays minimal
    GroupElement half = GroupElement::bs(inst, 0, 4, 2);
    CHECK(half.bs().num == 1);
    CHECK(half.bs().denom_exp == 0);
}

TEST_CASE("parse/format roundtrip") {
    for (const auto& inst : kInstances) {
        for (int trial = 0; trial < 200; ++trial) {
            GroupElement g = random_element(inst);
            CHECK(parse_element(inst, g.str()) == g);
        }
        CHECK(parse_element(inst, "e").is_identity());
    }
    GroupInstance lamp = GroupInstance::lamplighter();
    CHECK(parse_element(lamp, "lamps=3,-2;shift=1") == GroupElement::lamplighter({-2, 3}, 1));
    CHECK_THROWS_AS(parse_element(lamp, "lamps=1,1;shift=0"), ValidationError);
    GroupInstance bs = GroupInstance::baumslag_solitar(2);
    CHECK(parse_element(bs, "k=1;q=3/4") == GroupElement::bs(bs, 1, 3, 2));
    CHECK_THROWS_AS(parse_element(bs, "k=0;q=1/3"), ValidationError);
    GroupInstance free2 = GroupInstance::free_group(2);
    CHECK(parse_element(free2, "word=abA").fw().word == std::vector<int32_t>{1, 2, -1});
}

TEST_CASE("canonical keys separate exactly the distinct elements") {
    for (const auto& inst : kInstances) {
        for (int trial = 0; trial < 200; ++trial) {
            GroupElement g = random_element(inst), h = random_element(inst);
            CHECK((g == h) == (g.key() == h.key()));
        }
    }
}

TEST_CASE("ball sizes: lamplighter radius 1") {
    GroupInstance inst = GroupInstance::lamplighter();
    Ball ball = enumerate_ball(standard_generators(inst), 1);
    CHECK(ball.count_within(1) == 4);  // e, a, t, t^-1 (a is an involution)
}

TEST_CASE("ball sizes: free rank 2 radius 2") {
    GroupInstance inst = GroupInstance::free_group(2);
    Ball ball = enumerate_ball(standard_generators(inst), 2);
    CHECK(ball.count_within(0) == 1);
    CHECK(ball.count_within(1) == 5);
    CHECK(ball.count_within(2) == 17);
}

TEST_CASE("ball sizes: bs(1,2) radius 6 reference value") {
    GroupInstance inst = GroupInstance::baumslag_solitar(2);
    Ball ball = enumerate_ball(standard_generators(inst), 6);
    CHECK(ball.count_within(6) == 375);  // frozen reference enumeration
}

TEST_CASE("balls grow strictly and nest") {
    for (const auto& inst : kInstances) {
        Ball big = enumerate_ball(standard_generators(inst), 5);
        for (int k = 0; k < 5; ++k) CHECK(big.sizes[k] < big.sizes[k + 1]);

        Ball small = enumerate_ball(standard_generators(inst), 4);
        CHECK(small.sizes[4] == big.sizes[4]);
        for (size_t i = 0; i < small.elements.size(); ++i)
            CHECK(small.elements[i] == big.elements[i]);
    }
}

TEST_CASE("ball budget raises a resource error") {
    GroupInstance inst = GroupInstance::free_group(2);
    BallParams params;
    params.budget = 10;
    CHECK_THROWS_AS(enumerate_ball(standard_generators(inst), 4, params), ResourceError);
}

TEST_CASE("ball word tracking records minimal words") {
    GroupInstance inst = GroupInstance::lamplighter();
    BallParams params;
    params.track_words = true;
    params.gen_names = standard_generator_names(inst);
    Ball ball = enumerate_ball(standard_generators(inst), 3, params);
    for (size_t i = 0; i < ball.elements.size(); ++i) {
        if (ball.elements[i] == gen_t(inst)) CHECK(ball.word[i] == "t");
        if (ball.elements[i] == gen_a(inst)) CHECK(ball.word[i] == "a");
    }
}
