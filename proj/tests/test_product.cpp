#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pptlab/product.hpp"

using namespace pptlab;

namespace {

const GroupInstance kLamp = GroupInstance::lamplighter();
const GroupInstance kBs2 = GroupInstance::baumslag_solitar(2);
const GroupInstance kZ2 = GroupInstance::free_abelian(2);

ProductAction lamp_t1t2() {
    return ProductAction({ActionHandle::lamplighter_t1(), ActionHandle::lamplighter_t2()});
}

ProductAction z2_two_lines() {
    return ProductAction({ActionHandle::quasi_line(kZ2, {Rat(1), Rat(0)}),
                          ActionHandle::quasi_line(kZ2, {Rat(0), Rat(1)})});
}

AuditParams params_with(int L, std::vector<Rat> grid, int delta = 2) {
    AuditParams p;
    p.L = L;
    p.r_grid = std::move(grid);
    p.delta = delta;
    return p;
}

}  // namespace

TEST_CASE("l1 displacement basics") {
    ProductAction p = lamp_t1t2();
    CHECK(l1_exact(p, GroupElement::identity(kLamp)) == 0);
    // a fixes both basepoints
    CHECK(l1_exact(p, gen_a(kLamp)) == 0);

    // the displacement-0 set of T1 x T2 is exactly {e, a}
    Ball ball = enumerate_ball(standard_generators(kLamp), 6);
    std::vector<std::string> zero;
    for (const auto& g : ball.elements)
        if (l1_exact(p, g) == 0) zero.push_back(g.str());
    CHECK(zero == std::vector<std::string>{"lamps=;shift=0", "lamps=0;shift=0"});
}

TEST_CASE("bs tree factor: t^-k a t^k displaces 2k") {
    ActionHandle tn = ActionHandle::bs_tree(kBs2);
    ProductAction p({ActionHandle::hyperbolic_plane(kBs2), tn});
    for (int k = 1; k <= 6; ++k) {
        GroupElement g = conjugate(power(inv(gen_t(kBs2)), k), gen_a(kBs2));
        CHECK(exact_displacement(tn, g) == 2 * k);
        CHECK(l1_displacement(p, g) >= 2.0 * k);
    }
}

TEST_CASE("mixed products refuse the exact path") {
    ProductAction p({ActionHandle::hyperbolic_plane(kBs2), ActionHandle::bs_tree(kBs2)});
    CHECK_FALSE(p.exact());
    CHECK_THROWS_AS(l1_exact(p, gen_t(kBs2)), ValidationError);
    CHECK(l1_displacement(p, GroupElement::identity(kBs2)) == 0.0);
}

TEST_CASE("product factors must share the instance") {
    CHECK_THROWS_AS(ProductAction({ActionHandle::lamplighter_t1(),
                                   ActionHandle::bs_tree(kBs2)}),
                    ValidationError);
    CHECK_THROWS_AS(ProductAction({}), ValidationError);
}

TEST_CASE("predicted displacement counts, frozen") {
    CHECK(predicted_displacement_count(0) == 2);  // {e, a}
    CHECK(predicted_displacement_count(1) == 2);  // total displacement is even
    CHECK(predicted_displacement_count(2) == 14);
    CHECK(predicted_displacement_count(3) == 14);
}

TEST_CASE("lamplighter audit: stable counts equal the predicted counts") {
    for (int r = 0; r <= 3; ++r) {
        AuditReport report = properness_audit(lamp_t1t2(), standard_generators(kLamp),
                                              params_with(2 * r + 4, {Rat(r)}));
        REQUIRE(report.rows.size() == 1);
        const AuditRow& row = report.rows.front();
        CHECK(row.stable);  // N(r, 2r+2) == N(r, 2r+4)
        CHECK(row.count == predicted_displacement_count(r));
        REQUIRE(row.predicted.has_value());
        CHECK(*row.predicted == row.count);
        CHECK(report.verdict == "proper-evidence");
    }
}

TEST_CASE("z2 on two quasi-lines: diamond counts 2r^2 + 2r + 1") {
    AuditReport report = properness_audit(z2_two_lines(), standard_generators(kZ2),
                                          params_with(8, {Rat(0), Rat(1), Rat(2), Rat(3)}));
    for (const auto& row : report.rows) {
        int64_t r = numerator(row.r).convert_to<int64_t>();
        CHECK(row.count == 2 * r * r + 2 * r + 1);
        CHECK(row.stable);
    }
    CHECK(report.verdict == "proper-evidence");
}

TEST_CASE("z2 on one quasi-line: kernel family detected") {
    ProductAction one_line({ActionHandle::quasi_line(kZ2, {Rat(1), Rat(-1)})});
    for (int L : {6, 8}) {
        AuditReport report = properness_audit(one_line, standard_generators(kZ2),
                                              params_with(L, {Rat(0)}));
        const AuditRow& row = report.rows.front();
        CHECK(row.count == 2 * (L / 2) + 1);  // (n, n) for |n| <= L/2
        CHECK_FALSE(row.stable);
        CHECK(report.verdict == "non-proper-witness");
        REQUIRE(report.family.has_value());
        CHECK(report.family->generator == "coords=1,1");
    }
}

TEST_CASE("counts are monotone in r and in L") {
    AuditReport report = properness_audit(lamp_t1t2(), standard_generators(kLamp),
                                          params_with(8, {Rat(0), Rat(1), Rat(2), Rat(3)}));
    for (size_t i = 1; i < report.rows.size(); ++i)
        CHECK(report.rows[i - 1].count <= report.rows[i].count);
    for (const auto& row : report.rows) CHECK(row.count_shrunk <= row.count);

    AuditReport bigger = properness_audit(lamp_t1t2(), standard_generators(kLamp),
                                          params_with(10, {Rat(0), Rat(1), Rat(2), Rat(3)}));
    for (size_t i = 0; i < report.rows.size(); ++i)
        CHECK(report.rows[i].count <= bigger.rows[i].count);
}

TEST_CASE("dropping a factor where the subgroup displaces 0 leaves counts unchanged") {
    // The subgroup <e1> of Z^2 is elliptic on the second line.
    std::vector<GroupElement> gens{zn_basis(kZ2, 0)};
    AuditParams params = params_with(8, {Rat(0), Rat(1), Rat(2)});
    AuditReport both = properness_audit(z2_two_lines(), gens, params);
    ProductAction first_only({ActionHandle::quasi_line(kZ2, {Rat(1), Rat(0)})});
    AuditReport dropped = properness_audit(first_only, gens, params);
    for (size_t i = 0; i < both.rows.size(); ++i) {
        CHECK(both.rows[i].count == dropped.rows[i].count);
        CHECK(both.rows[i].count_shrunk == dropped.rows[i].count_shrunk);
    }
}

TEST_CASE("audit warns when L does not dominate the r grid") {
    AuditReport report = properness_audit(lamp_t1t2(), standard_generators(kLamp),
                                          params_with(4, {Rat(5)}));
    CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("mixed float audit records borderline elements at exact thresholds") {
    ProductAction p({ActionHandle::hyperbolic_plane(kBs2), ActionHandle::bs_tree(kBs2)});
    // t has displacement exactly 1 on the tree and log 2 on the plane;
    // threshold 1 + log 2 sits on the boundary.
    AuditParams params = params_with(6, {Rat(0)});
    params.r_grid = {rat_from_string("1.693147180559945")};
    AuditReport report = properness_audit(p, standard_generators(kBs2), params);
    REQUIRE(report.rows.size() == 1);
    bool found_t = false;
    for (const auto& s : report.rows.front().borderline) found_t = found_t || s == "k=1;q=0";
    CHECK(found_t);
}

TEST_CASE("commutators displace quasi-line factors by exactly 0") {
    for (const auto& [inst, phi] : std::vector<std::pair<GroupInstance, std::vector<Rat>>>{
             {kZ2, {Rat(1), Rat(-1)}},
             {kLamp, {Rat(1)}},
             {kBs2, {Rat(1)}}}) {
        ActionHandle line = ActionHandle::quasi_line(inst, phi);
        CHECK(max_commutator_displacement(line, standard_generators(inst), 4) == 0);
    }
}
