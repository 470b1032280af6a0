#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pptlab/action.hpp"
#include "pptlab/ball.hpp"

using namespace pptlab;

namespace {

std::mt19937_64 rng(777);
int64_t pick(int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

const GroupInstance kLamp = GroupInstance::lamplighter();
const GroupInstance kBs2 = GroupInstance::baumslag_solitar(2);
const GroupInstance kFree2 = GroupInstance::free_group(2);

GroupElement random_bs() {
    return GroupElement::bs(kBs2, pick(-3, 3), Int(pick(-20, 20)),
                            static_cast<uint32_t>(pick(0, 3)));
}

std::vector<ActionHandle> all_exact_actions() {
    return {
        ActionHandle::lamplighter_t1(),
        ActionHandle::lamplighter_t2(),
        ActionHandle::bs_tree(kBs2),
        ActionHandle::free_cayley(kFree2),
        ActionHandle::quasi_line(GroupInstance::free_abelian(2), {Rat(1), Rat(-1)}),
    };
}

}  // namespace

TEST_CASE("frozen displacements") {
    ActionHandle t1 = ActionHandle::lamplighter_t1();
    CHECK(exact_displacement(t1, GroupElement::lamplighter({}, 3)) == 3);  // t^3
    CHECK(exact_displacement(t1, GroupElement::identity(kLamp)) == 0);

    ActionHandle h2 = ActionHandle::hyperbolic_plane(kBs2);
    CHECK(displacement(h2, gen_t(kBs2)) == doctest::Approx(std::log(2)).epsilon(1e-9));
    CHECK(displacement(h2, GroupElement::identity(kBs2)) == 0.0);

    // cosh d(i, a^m i) = 1 + m^2 / 2
    for (int m = 1; m <= 5; ++m) {
        double d = displacement(h2, power(gen_a(kBs2), m));
        CHECK(std::cosh(d) == doctest::Approx(1.0 + m * m / 2.0).epsilon(1e-9));
    }

    ActionHandle tn = ActionHandle::bs_tree(kBs2);
    CHECK(exact_displacement(tn, gen_a(kBs2)) == 0);
    CHECK(exact_displacement(tn, gen_t(kBs2)) == 1);
}

TEST_CASE("incompatible group/action rejected") {
    ActionHandle t1 = ActionHandle::lamplighter_t1();
    CHECK_THROWS_AS(displacement(t1, gen_t(kBs2)), ValidationError);
    CHECK_THROWS_AS(ActionHandle::bs_tree(kLamp), ValidationError);
    CHECK_THROWS_AS(ActionHandle::quasi_line(kLamp, {Rat(1), Rat(2)}), ValidationError);
}

TEST_CASE("displacement symmetry d(g) = d(g^-1)") {
    for (const auto& action : all_exact_actions()) {
        Ball ball = enumerate_ball(standard_generators(action.group), 5);
        for (const auto& g : ball.elements)
            CHECK(exact_displacement(action, g) == exact_displacement(action, inv(g)));
    }
    ActionHandle h2 = ActionHandle::hyperbolic_plane(kBs2);
    for (int trial = 0; trial < 100; ++trial) {
        GroupElement g = random_bs();
        CHECK(displacement(h2, g) == doctest::Approx(displacement(h2, inv(g))).epsilon(1e-9));
    }
}

TEST_CASE("subadditivity d(gh) <= d(g) + d(h), exact on trees") {
    for (const auto& action : all_exact_actions()) {
        Ball ball = enumerate_ball(standard_generators(action.group), 4);
        for (size_t i = 0; i < ball.elements.size(); i += 3)
            for (size_t j = 0; j < ball.elements.size(); j += 3) {
                const GroupElement &g = ball.elements[i], &h = ball.elements[j];
                CHECK(exact_displacement(action, mul(g, h)) <=
                      exact_displacement(action, g) + exact_displacement(action, h));
            }
    }
}

TEST_CASE("conjugation-covariance triangle bound") {
    for (const auto& action : all_exact_actions()) {
        Ball ball = enumerate_ball(standard_generators(action.group), 3);
        for (const auto& g : ball.elements)
            for (const auto& h : ball.elements) {
                Rat lhs = exact_displacement(action, conjugate(h, g));
                Rat rhs = exact_displacement(action, h) + exact_displacement(action, g) +
                          exact_displacement(action, inv(h));
                CHECK(lhs <= rhs);
            }
    }
}

TEST_CASE("translation lengths: frozen examples") {
    ActionHandle tn = ActionHandle::bs_tree(kBs2);
    CHECK(translation_length(tn, gen_a(kBs2)).exact_value == 0);  // fixes the base vertex
    CHECK(translation_length(tn, gen_t(kBs2)).exact_value == 1);

    ActionHandle h2 = ActionHandle::hyperbolic_plane(kBs2);
    CHECK(translation_length(h2, gen_t(kBs2)).value ==
          doctest::Approx(std::log(2)).epsilon(1e-9));
    CHECK(translation_length(h2, gen_a(kBs2)).value == 0.0);  // parabolic

    // torsion element off the basepoint: schedule oscillates, tree criterion decides
    ActionHandle t2 = ActionHandle::lamplighter_t2();
    GroupElement torsion = GroupElement::lamplighter({-1}, 0);
    CHECK(exact_displacement(t2, torsion) == 2);
    CHECK(translation_length(t2, torsion).exact_value == 0);
}

TEST_CASE("l(g^k) = |k| l(g) on random elements") {
    ActionHandle tn = ActionHandle::bs_tree(kBs2);
    ActionHandle line = ActionHandle::quasi_line(kBs2, {Rat(1)});
    for (int trial = 0; trial < 200; ++trial) {
        GroupElement g = random_bs();
        Rat l_tn = translation_length(tn, g).exact_value;
        Rat l_line = translation_length(line, g).exact_value;
        for (int k = -4; k <= 4; ++k) {
            GroupElement gk = power(g, k);
            CHECK(translation_length(tn, gk).exact_value == Rat(std::abs(k)) * l_tn);
            CHECK(translation_length(line, gk).exact_value == Rat(std::abs(k)) * l_line);
        }
    }
}

TEST_CASE("classify_element: frozen examples") {
    ActionHandle tn = ActionHandle::bs_tree(kBs2);
    CHECK(classify_element(tn, gen_a(kBs2)) == IsometryType::Elliptic);
    CHECK(classify_element(tn, gen_t(kBs2)) == IsometryType::Loxodromic);

    ActionHandle h2 = ActionHandle::hyperbolic_plane(kBs2);
    CHECK(classify_element(h2, gen_a(kBs2)) == IsometryType::Parabolic);
    CHECK(classify_element(h2, gen_t(kBs2)) == IsometryType::Loxodromic);
    CHECK(classify_element(h2, GroupElement::identity(kBs2)) == IsometryType::Elliptic);

    ActionHandle line = ActionHandle::quasi_line(GroupInstance::free_abelian(2),
                                                 {Rat(1), Rat(-1)});
    GroupInstance z2 = GroupInstance::free_abelian(2);
    CHECK(classify_element(line, GroupElement::zn(z2, {1, 1})) == IsometryType::Elliptic);
    CHECK(classify_element(line, GroupElement::zn(z2, {1, 0})) == IsometryType::Loxodromic);
}

TEST_CASE("no parabolics on trees: classification matches translation length") {
    for (const auto& action : all_exact_actions()) {
        if (!action.is_tree()) continue;
        Ball ball = enumerate_ball(standard_generators(action.group), 5);
        for (const auto& g : ball.elements) {
            bool lox = classify_element(action, g) == IsometryType::Loxodromic;
            CHECK(lox == (translation_length(action, g).exact_value > 0));
        }
    }
}

TEST_CASE("busemann: frozen values and the fiat orientation beta(t) = +1") {
    ActionHandle tn = ActionHandle::bs_tree(kBs2);
    HoroEnd end = fixed_end(tn);
    CHECK(busemann(tn, end, GroupElement::identity(kBs2)).exact_value == 0);
    CHECK(busemann(tn, end, gen_t(kBs2)).exact_value == 1);
    CHECK(busemann(tn, end, gen_a(kBs2)).exact_value == 0);

    for (const auto& kind : {ActionHandle::lamplighter_t1(), ActionHandle::lamplighter_t2()}) {
        HoroEnd e2 = fixed_end(kind);
        CHECK(busemann(kind, e2, gen_t(kLamp)).exact_value == 1);
        CHECK(busemann(kind, e2, gen_a(kLamp)).exact_value == 0);
    }

    ActionHandle h2 = ActionHandle::hyperbolic_plane(kBs2);
    HoroEnd infinity = fixed_end(h2);
    CHECK(busemann(h2, infinity, gen_t(kBs2)).value ==
          doctest::Approx(std::log(2)).epsilon(1e-9));
}

TEST_CASE("busemann is exactly additive on random pairs") {
    ActionHandle tn = ActionHandle::bs_tree(kBs2);
    HoroEnd end = fixed_end(tn);
    for (int trial = 0; trial < 500; ++trial) {
        GroupElement g = random_bs(), h = random_bs();
        CHECK(busemann(tn, end, mul(g, h)).exact_value ==
              busemann(tn, end, g).exact_value + busemann(tn, end, h).exact_value);
    }
}

TEST_CASE("beta(g) != 0 iff loxodromic, radius-5 balls") {
    for (const auto& action :
         {ActionHandle::bs_tree(kBs2), ActionHandle::lamplighter_t1(),
          ActionHandle::lamplighter_t2()}) {
        HoroEnd end = fixed_end(action);
        Ball ball = enumerate_ball(standard_generators(action.group), 5);
        for (const auto& g : ball.elements) {
            bool lox = classify_element(action, g) == IsometryType::Loxodromic;
            CHECK((busemann(action, end, g).exact_value != 0) == lox);
        }
    }
}

TEST_CASE("raw horokernel signs: t repelled by the tree end, attracted on h2") {
    CHECK(busemann_raw_sign(ActionHandle::bs_tree(kBs2), gen_t(kBs2)) == -1);
    CHECK(busemann_raw_sign(ActionHandle::hyperbolic_plane(kBs2), gen_t(kBs2)) == 1);
    CHECK(busemann_raw_sign(ActionHandle::lamplighter_t1(), gen_t(kLamp)) == -1);
    CHECK(busemann_raw_sign(ActionHandle::lamplighter_t2(), gen_t(kLamp)) == 1);
}

TEST_CASE("h2 busemann closed form agrees with the sampled horokernel") {
    ActionHandle h2 = ActionHandle::hyperbolic_plane(kBs2);
    HoroEnd end = fixed_end(h2);
    for (int trial = 0; trial < 50; ++trial) {
        GroupElement g = random_bs();
        // h(x, gx) at c_T = iT: converges to log Im(g i) as T grows
        HPoint gi = h2_apply(g, HPoint{0.0, 1.0});
        double T = 1e8;
        double sampled = h2_distance(HPoint{0.0, 1.0}, HPoint{0.0, T}) -
                         h2_distance(gi, HPoint{0.0, T});
        CHECK(sampled == doctest::Approx(std::log(gi.y)).epsilon(1e-5));
        // beta via powers: (1/m) h(x, g^m x) equals k log 2
        CHECK(busemann(h2, end, g).raw ==
              doctest::Approx(g.bs().tpow * std::log(2)).epsilon(1e-9));
    }
}

TEST_CASE("free Cayley action has no fixed end") {
    CHECK_THROWS_AS(fixed_end(ActionHandle::free_cayley(kFree2)), ValidationError);
}

TEST_CASE("vertex keys: root fiber is exactly the vertex stabilizer") {
    ActionHandle t1 = ActionHandle::lamplighter_t1();
    std::string root = vertex_key(t1, GroupElement::identity(kLamp));
    Ball ball = enumerate_ball(standard_generators(kLamp), 5);
    for (const auto& g : ball.elements) {
        bool in_A = g.lamp().shift == 0 &&
                    (g.lamp().lamps.empty() || g.lamp().lamps.back() <= 0);
        CHECK((vertex_key(t1, g) == root) == in_A);
    }

    ActionHandle tn = ActionHandle::bs_tree(kBs2);
    std::string root_tn = vertex_key(tn, GroupElement::identity(kBs2));
    Ball bs_ball = enumerate_ball(standard_generators(kBs2), 5);
    for (const auto& g : bs_ball.elements) {
        bool in_a = g.bs().tpow == 0 && g.bs().denom_exp == 0;
        CHECK((vertex_key(tn, g) == root_tn) == in_a);
    }
}
