#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pptlab/group.hpp"
#include "pptlab/normal_form.hpp"

namespace pptlab {

enum class SpaceKind {
    LamplighterTreeRight,  // T1, basepoint = coset of A = {supp <= 0, shift 0}
    LamplighterTreeLeft,   // T2, basepoint = coset of B = {supp >= 0, shift 0}
    BsTree,                // Tn, basepoint = coset of <a>
    FreeCayley,            // basepoint = identity vertex
    QuasiLine,             // R through a designated homomorphism, basepoint 0
    HyperbolicPlane,       // upper half-plane, basepoint i
};

/// A named concrete isometric action: space kind + group instance + the fixed
/// basepoint convention. Immutable; all queries are pure.
struct ActionHandle {
    SpaceKind kind;
    GroupInstance group;
    std::vector<Rat> phi;  // QuasiLine: functional on the abelianization

    static ActionHandle lamplighter_t1();
    static ActionHandle lamplighter_t2();
    static ActionHandle bs_tree(const GroupInstance& inst);
    static ActionHandle hyperbolic_plane(const GroupInstance& inst);
    static ActionHandle free_cayley(const GroupInstance& inst);
    static ActionHandle quasi_line(const GroupInstance& inst, std::vector<Rat> phi);

    std::string space_name() const;
    std::string basepoint_name() const;
    bool is_tree() const;
    bool metric_exact() const { return kind != SpaceKind::HyperbolicPlane; }
};

void require_compatible(const ActionHandle& action, const GroupElement& g);

ActionHandle action_from_config(const GroupInstance& inst, const std::string& space,
                                const std::string& phi_csv = "");

/// Upper half-plane point, y > 0.
struct HPoint {
    double x = 0.0;
    double y = 1.0;
};

HPoint h2_apply(const GroupElement& g, const HPoint& z);
double h2_distance(const HPoint& a, const HPoint& b);

/// phi(g) for quasi-line actions, exact.
Rat phi_value(const ActionHandle& action, const GroupElement& g);

/// d(x, g x); exact integers on trees, |phi| on quasi-lines. Throws on H2.
Rat exact_displacement(const ActionHandle& action, const GroupElement& g);
double displacement(const ActionHandle& action, const GroupElement& g);

/// Canonical id of the vertex/point g.basepoint; equal keys iff equal images.
std::string vertex_key(const ActionHandle& action, const GroupElement& g);

enum class IsometryType { Elliptic, Parabolic, Loxodromic };
std::string isometry_type_name(IsometryType t);

IsometryType classify_element(const ActionHandle& action, const GroupElement& g);

struct TranslationLength {
    bool exact = true;
    Rat exact_value = 0;  // valid when exact
    double value = 0.0;
};

/// Stable translation length. Computed from the d(x, g^k x) schedule
/// (k = 1..16, stable when the last four successive differences agree),
/// with the tree criterion d(x,g^2 x) <= d(x,gx) <=> elliptic as the exact
/// fallback, and closed forms on H2 and quasi-lines. Throws UndeterminedError
/// rather than emitting an unproven number.
TranslationLength translation_length(const ActionHandle& action, const GroupElement& g);

/// The boundary point fixed by the whole group instance: the limit of the ray
/// stable^-m . basepoint on trees, infinity on H2 and quasi-lines. The
/// orientation makes the reported Busemann value +1 on the positive stable
/// letter (t / shift by +1 / translation by +1).
struct HoroEnd {
    SpaceKind kind;
    int orientation = 1;  // reported beta = orientation * raw horokernel value
    std::string description;
};

/// Constructs and verifies the globally fixed end; throws ValidationError when
/// the action has none (free Cayley trees).
HoroEnd fixed_end(const ActionHandle& action);

struct Busemann {
    bool exact = true;
    Rat exact_value = 0;  // reported value when exact
    double value = 0.0;   // reported value
    double raw = 0.0;     // horokernel value before orientation
};

/// Busemann homomorphism value at the given end. On trees this is computed as
/// d(x, c_m) - d(g x, c_m) for ray vertices c_m beyond both projections and
/// checked to be independent of m.
Busemann busemann(const ActionHandle& action, const HoroEnd& end, const GroupElement& g);

/// Exact sign of the raw horokernel value at the fixed end: +1 when the fixed
/// point attracts g, -1 when it repels, 0 for non-loxodromic g.
int busemann_raw_sign(const ActionHandle& action, const GroupElement& g);

}  // namespace pptlab
