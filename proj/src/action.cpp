#include "pptlab/action.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pptlab {

ActionHandle ActionHandle::lamplighter_t1() {
    return {SpaceKind::LamplighterTreeRight, GroupInstance::lamplighter(), {}};
}
ActionHandle ActionHandle::lamplighter_t2() {
    return {SpaceKind::LamplighterTreeLeft, GroupInstance::lamplighter(), {}};
}
ActionHandle ActionHandle::bs_tree(const GroupInstance& inst) {
    if (inst.family != Family::BaumslagSolitar)
        throw ValidationError("bs tree needs a bs instance");
    return {SpaceKind::BsTree, inst, {}};
}
ActionHandle ActionHandle::hyperbolic_plane(const GroupInstance& inst) {
    if (inst.family != Family::BaumslagSolitar)
        throw ValidationError("hyperbolic plane action needs a bs instance");
    return {SpaceKind::HyperbolicPlane, inst, {}};
}
ActionHandle ActionHandle::free_cayley(const GroupInstance& inst) {
    if (inst.family != Family::Free) throw ValidationError("cayley tree needs a free instance");
    return {SpaceKind::FreeCayley, inst, {}};
}
ActionHandle ActionHandle::quasi_line(const GroupInstance& inst, std::vector<Rat> phi) {
    if (static_cast<int>(phi.size()) != inst.abelianization_dim())
        throw ValidationError("quasi-line functional needs " +
                              std::to_string(inst.abelianization_dim()) + " entries for " +
                              inst.name());
    return {SpaceKind::QuasiLine, inst, std::move(phi)};
}

std::string ActionHandle::space_name() const {
    switch (kind) {
        case SpaceKind::LamplighterTreeRight: return "bass-serre-tree-T1";
        case SpaceKind::LamplighterTreeLeft: return "bass-serre-tree-T2";
        case SpaceKind::BsTree: return "bs-tree-Tn";
        case SpaceKind::FreeCayley: return "free-cayley-tree";
        case SpaceKind::QuasiLine: return "quasi-line-via-homomorphism";
        case SpaceKind::HyperbolicPlane: return "hyperbolic-plane";
    }
    return "?";
}

std::string ActionHandle::basepoint_name() const {
    switch (kind) {
        case SpaceKind::LamplighterTreeRight: return "coset A";
        case SpaceKind::LamplighterTreeLeft: return "coset B";
        case SpaceKind::BsTree: return "coset <a>";
        case SpaceKind::FreeCayley: return "identity vertex";
        case SpaceKind::QuasiLine: return "0";
        case SpaceKind::HyperbolicPlane: return "i";
    }
    return "?";
}

bool ActionHandle::is_tree() const {
    return kind == SpaceKind::LamplighterTreeRight || kind == SpaceKind::LamplighterTreeLeft ||
           kind == SpaceKind::BsTree || kind == SpaceKind::FreeCayley;
}

void require_compatible(const ActionHandle& action, const GroupElement& g) {
    if (!(g.instance() == action.group))
        throw ValidationError("element of " + g.instance().name() +
                              " is incompatible with the " + action.space_name() +
                              " action of " + action.group.name());
}

ActionHandle action_from_config(const GroupInstance& inst, const std::string& space,
                                const std::string& phi_csv) {
    if (space == "t1") {
        if (inst.family != Family::Lamplighter)
            throw ValidationError("space t1 needs the lamplighter");
        return ActionHandle::lamplighter_t1();
    }
    if (space == "t2") {
        if (inst.family != Family::Lamplighter)
            throw ValidationError("space t2 needs the lamplighter");
        return ActionHandle::lamplighter_t2();
    }
    if (space == "tn") return ActionHandle::bs_tree(inst);
    if (space == "h2") return ActionHandle::hyperbolic_plane(inst);
    if (space == "cayley") return ActionHandle::free_cayley(inst);
    if (space.rfind("line", 0) == 0) {
        std::string csv = phi_csv;
        if (space.size() > 5 && space[4] == ':') csv = space.substr(5);
        if (csv.empty()) throw ValidationError("quasi-line needs a functional, e.g. line:1,-1");
        std::vector<Rat> phi;
        std::string cur;
        for (char c : csv + ",") {
            if (c == ',') {
                phi.push_back(rat_from_string(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        return ActionHandle::quasi_line(inst, std::move(phi));
    }
    throw ValidationError("unknown space '" + space + "' (expected t1|t2|tn|cayley|h2|line:<phi>)");
}

HPoint h2_apply(const GroupElement& g, const HPoint& z) {
    const auto& d = g.bs();
    double scale = std::pow(static_cast<double>(g.instance().bs_base),
                            static_cast<double>(d.tpow));
    double q = static_cast<double>(Rat(d.num, pow_int(g.instance().bs_base, d.denom_exp)));
    return {scale * z.x + q, scale * z.y};
}

double h2_distance(const HPoint& a, const HPoint& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * a.y * b.y));
}

Rat phi_value(const ActionHandle& action, const GroupElement& g) {
    if (action.kind != SpaceKind::QuasiLine)
        throw ValidationError("phi_value: not a quasi-line action");
    require_compatible(action, g);
    std::vector<int64_t> ab = g.abelianization();
    Rat v = 0;
    for (size_t i = 0; i < ab.size(); ++i) v += action.phi[i] * Rat(ab[i]);
    return v;
}

Rat exact_displacement(const ActionHandle& action, const GroupElement& g) {
    require_compatible(action, g);
    switch (action.kind) {
        case SpaceKind::LamplighterTreeRight: return lamplighter_nf_right(g).displacement();
        case SpaceKind::LamplighterTreeLeft: return lamplighter_nf_left(g).displacement();
        case SpaceKind::BsTree: return bs_normal_form(g).displacement();
        case SpaceKind::FreeCayley: return static_cast<int64_t>(g.fw().word.size());
        case SpaceKind::QuasiLine: return abs_rat(phi_value(action, g));
        case SpaceKind::HyperbolicPlane:
            throw ValidationError("hyperbolic-plane displacement is not exact; use displacement()");
    }
    throw ValidationError("unreachable kind");
}

double displacement(const ActionHandle& action, const GroupElement& g) {
    if (action.kind == SpaceKind::HyperbolicPlane) {
        require_compatible(action, g);
        return h2_distance(HPoint{0.0, 1.0}, h2_apply(g, HPoint{0.0, 1.0}));
    }
    return static_cast<double>(exact_displacement(action, g));
}

std::string vertex_key(const ActionHandle& action, const GroupElement& g) {
    require_compatible(action, g);
    std::ostringstream os;
    switch (action.kind) {
        case SpaceKind::LamplighterTreeRight: {
            // (f,n)A with A = {supp <= 0}: lamps at coordinates <= -n are coset-free.
            const auto& d = g.lamp();
            os << d.shift << '|';
            for (int64_t p : d.lamps)
                if (p > -d.shift) os << p << ',';
            break;
        }
        case SpaceKind::LamplighterTreeLeft: {
            const auto& d = g.lamp();
            os << d.shift << '|';
            for (int64_t p : d.lamps)
                if (p < -d.shift) os << p << ',';
            break;
        }
        case SpaceKind::BsTree: {
            // (k,q)<a> = (k, q + n^k Z): residue of q modulo n^k Z.
            const auto& d = g.bs();
            const Int base = action.group.bs_base;
            int64_t me = static_cast<int64_t>(d.denom_exp) + d.tpow;
            Int num = 0;
            uint32_t e = 0;
            if (me > 0) {
                Int mod = pow_int(base, me);
                num = d.num % mod;
                if (num < 0) num += mod;
                e = d.denom_exp;
                while (e > 0 && num != 0 && num % base == 0) {
                    num /= base;
                    --e;
                }
                if (num == 0) e = 0;
            }
            os << d.tpow << '|' << num << '|' << e;
            break;
        }
        case SpaceKind::FreeCayley: return g.key();
        case SpaceKind::QuasiLine: return rat_to_string(phi_value(action, g));
        case SpaceKind::HyperbolicPlane: {
            const auto& d = g.bs();
            os << d.tpow << '|' << d.num << '|' << d.denom_exp;
            break;
        }
    }
    return os.str();
}

std::string isometry_type_name(IsometryType t) {
    switch (t) {
        case IsometryType::Elliptic: return "elliptic";
        case IsometryType::Parabolic: return "parabolic";
        case IsometryType::Loxodromic: return "loxodromic";
    }
    return "?";
}

IsometryType classify_element(const ActionHandle& action, const GroupElement& g) {
    require_compatible(action, g);
    switch (action.kind) {
        case SpaceKind::HyperbolicPlane: {
            const auto& d = g.bs();
            if (d.tpow != 0) return IsometryType::Loxodromic;
            if (d.num != 0) return IsometryType::Parabolic;
            return IsometryType::Elliptic;
        }
        case SpaceKind::QuasiLine:
            return phi_value(action, g) != 0 ? IsometryType::Loxodromic : IsometryType::Elliptic;
        default: {
            // Trees carry no parabolics: d(x,g^2 x) > d(x,gx) iff loxodromic.
            Rat d1 = exact_displacement(action, g);
            Rat d2 = exact_displacement(action, mul(g, g));
            return d2 > d1 ? IsometryType::Loxodromic : IsometryType::Elliptic;
        }
    }
}

TranslationLength translation_length(const ActionHandle& action, const GroupElement& g) {
    require_compatible(action, g);
    switch (action.kind) {
        case SpaceKind::QuasiLine: {
            Rat v = abs_rat(phi_value(action, g));
            return {true, v, static_cast<double>(v)};
        }
        case SpaceKind::HyperbolicPlane: {
            int64_t k = g.bs().tpow;
            double v = k == 0 ? 0.0
                              : static_cast<double>(std::abs(k)) *
                                    std::log(static_cast<double>(action.group.bs_base));
            return {false, 0, v};
        }
        default: break;
    }

    // Tree schedule: d(x, g^k x) for k = 1..16, stable once the last four
    // successive differences agree.
    std::vector<Rat> d{0};
    GroupElement gk = GroupElement::identity(g.instance());
    for (int k = 1; k <= 16; ++k) {
        gk = mul(gk, g);
        d.push_back(exact_displacement(action, gk));
        if (k >= 5) {
            Rat diff = d[k] - d[k - 1];
            bool stable = true;
            for (int u = k - 3; u < k; ++u)
                if (d[u] - d[u - 1] != diff) stable = false;
            if (stable) {
                if (diff < 0) break;  // oscillating torsion, fall through
                return {true, diff, static_cast<double>(diff)};
            }
        }
    }
    // The schedule oscillates exactly for finite-order elements; on a tree
    // d(x,g^2 x) <= d(x,gx) certifies ellipticity, hence length 0.
    if (d[2] <= d[1]) return {true, 0, 0.0};
    throw UndeterminedError("translation length: stabilization window exhausted for " + g.str());
}

namespace {

const char* end_description(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::LamplighterTreeRight: return "limit of t^-m . A";
        case SpaceKind::LamplighterTreeLeft: return "limit of s^-m . B (s = t^-1)";
        case SpaceKind::BsTree: return "limit of t^-m . <a>";
        case SpaceKind::QuasiLine: return "+infinity";
        case SpaceKind::HyperbolicPlane: return "infinity";
        default: return "";
    }
}

HnnStructure tree_structure(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::LamplighterTreeRight: return HnnStructure::LamplighterRight;
        case SpaceKind::LamplighterTreeLeft: return HnnStructure::LamplighterLeft;
        case SpaceKind::BsTree: return HnnStructure::BsTree;
        default: throw ValidationError("not an HNN tree");
    }
}

}  // namespace

HoroEnd fixed_end(const ActionHandle& action) {
    int orientation = 1;
    switch (action.kind) {
        case SpaceKind::FreeCayley:
            throw ValidationError("the free Cayley action fixes no boundary point");
        case SpaceKind::LamplighterTreeRight:
        case SpaceKind::BsTree:
            orientation = -1;  // raw value is -(t-exponent); report beta(t) = +1
            break;
        case SpaceKind::LamplighterTreeLeft:
        case SpaceKind::QuasiLine:
        case SpaceKind::HyperbolicPlane:
            orientation = 1;
            break;
    }
    HoroEnd end{action.kind, orientation, end_description(action.kind)};

    if (action.is_tree()) {
        // Verify on generators: each generator sends a deep ray vertex back
        // onto the ray.
        GroupElement s = stable_letter(tree_structure(action.kind), action.group);
        const int m = 10;
        GroupElement cm = power(s, -m);
        for (const auto& g : standard_generators(action.group)) {
            std::string image = vertex_key(action, mul(g, cm));
            bool on_ray = false;
            for (int v = m - 4; v <= m + 4 && !on_ray; ++v)
                on_ray = image == vertex_key(action, power(s, -v));
            if (!on_ray)
                throw Error("designated end is not fixed by generator " + g.str());
        }
    }
    return end;
}

Busemann busemann(const ActionHandle& action, const HoroEnd& end, const GroupElement& g) {
    require_compatible(action, g);
    if (end.kind != action.kind)
        throw ValidationError("end does not belong to this action's space");

    if (action.kind == SpaceKind::QuasiLine) {
        Rat v = phi_value(action, g) * end.orientation;
        return {true, v, static_cast<double>(v), static_cast<double>(phi_value(action, g))};
    }
    if (action.kind == SpaceKind::HyperbolicPlane) {
        double raw = static_cast<double>(g.bs().tpow) *
                     std::log(static_cast<double>(action.group.bs_base));
        return {false, 0, end.orientation * raw, raw};
    }

    // Tree horokernel: d(x, c_m) - d(g x, c_m) with c_m = s^-m . x deep enough,
    // asserted independent of m.
    GroupElement s = stable_letter(tree_structure(action.kind), action.group);
    int64_t depth = static_cast<int64_t>(exact_displacement(action, g)) + 4;
    GroupElement ginv = inv(g);
    Rat raw = 0;
    for (int64_t m = depth; m < depth + 3; ++m) {
        Rat value = Rat(m) - exact_displacement(action, mul(ginv, power(s, -m)));
        if (m == depth)
            raw = value;
        else if (value != raw)
            throw Error("horokernel value not independent of the ray depth");
    }
    Rat reported = raw * end.orientation;
    return {true, reported, static_cast<double>(reported), static_cast<double>(raw)};
}

int busemann_raw_sign(const ActionHandle& action, const GroupElement& g) {
    require_compatible(action, g);
    int64_t drift = 0;
    switch (action.kind) {
        case SpaceKind::LamplighterTreeRight: drift = -g.lamp().shift; break;
        case SpaceKind::LamplighterTreeLeft: drift = g.lamp().shift; break;
        case SpaceKind::BsTree: drift = -g.bs().tpow; break;
        case SpaceKind::HyperbolicPlane: drift = g.bs().tpow; break;
        case SpaceKind::QuasiLine: {
            Rat v = phi_value(action, g);
            return v == 0 ? 0 : (v > 0 ? 1 : -1);
        }
        case SpaceKind::FreeCayley:
            throw ValidationError("no fixed end on the free Cayley action");
    }
    return drift == 0 ? 0 : (drift > 0 ? 1 : -1);
}

}  // namespace pptlab
