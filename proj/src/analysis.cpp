#include "pptlab/analysis.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pptlab {

std::string action_type_name(ActionType t) {
    switch (t) {
        case ActionType::Elliptic: return "elliptic";
        case ActionType::Horocyclic: return "horocyclic";
        case ActionType::Lineal: return "lineal";
        case ActionType::Focal: return "focal";
        case ActionType::GeneralType: return "general-type";
    }
    return "?";
}

namespace {

int64_t drift(const ActionHandle& action, const GroupElement& g) {
    switch (action.kind) {
        case SpaceKind::LamplighterTreeRight:
        case SpaceKind::LamplighterTreeLeft: return g.lamp().shift;
        case SpaceKind::BsTree: return g.bs().tpow;
        default: throw ValidationError("drift: HNN tree kinds only");
    }
}

// Vertex keys along [x, g x] after the root, up to `depth` steps. The geodesic
// descends the fixed ray for i steps and ascends through the stem branch for j.
std::vector<std::string> geodesic_prefix(const ActionHandle& action, const GroupElement& g,
                                         int depth) {
    std::vector<std::string> keys;
    if (action.kind == SpaceKind::FreeCayley) {
        const auto& w = g.fw().word;
        std::vector<int32_t> prefix;
        for (size_t u = 0; u < w.size() && static_cast<int>(u) < depth; ++u) {
            prefix.push_back(w[u]);
            keys.push_back(GroupElement::free_word(g.instance(), prefix).key());
        }
        return keys;
    }
    HnnNormalForm nf = action.kind == SpaceKind::LamplighterTreeRight ? lamplighter_nf_right(g)
                       : action.kind == SpaceKind::LamplighterTreeLeft ? lamplighter_nf_left(g)
                                                                       : bs_normal_form(g);
    GroupElement s = stable_letter(nf.structure, g.instance());
    for (int64_t u = 1; u <= nf.i && static_cast<int>(keys.size()) < depth; ++u)
        keys.push_back(vertex_key(action, power(s, -u)));
    GroupElement base = mul(power(s, -nf.i), nf.stem);
    for (int64_t v = 1; v <= nf.j && static_cast<int>(keys.size()) < depth; ++v)
        keys.push_back(vertex_key(action, mul(base, power(s, v))));
    return keys;
}

}  // namespace

std::vector<std::string> end_signature(const ActionHandle& action, const GroupElement& g,
                                       int depth) {
    TranslationLength tl = translation_length(action, g);
    if (!tl.exact || tl.exact_value <= 0)
        throw ValidationError("end_signature needs a loxodromic tree isometry");
    // disp(g^K) >= 2*depth + 2*disp(g) + 4 pins the prefix onto the limit ray.
    Rat need = Rat(2 * depth + 4) + 2 * exact_displacement(action, g);
    int64_t K = static_cast<int64_t>(floor_rat(need / tl.exact_value)) + 1;
    std::vector<std::string> sig = geodesic_prefix(action, power(g, K), depth);
    std::vector<std::string> sig2 = geodesic_prefix(action, power(g, K + 1), depth);
    if (sig != sig2) throw Error("end signature did not stabilize");
    return sig;
}

namespace {

// Signature of the endpoint of g away from the globally fixed end.
std::vector<std::string> branch_end_signature(const ActionHandle& action,
                                              const GroupElement& g, int depth) {
    return busemann_raw_sign(action, g) < 0 ? end_signature(action, g, depth)
                                            : end_signature(action, inv(g), depth);
}

Classification classify_quasi_line(const ActionHandle& action,
                                   const std::vector<GroupElement>& gens) {
    for (const auto& g : gens) {
        if (phi_value(action, g) != 0) {
            Classification c{ActionType::Lineal, true, true, {g.str()}, ""};
            c.note = "translation by phi; nonzero on a generator";
            return c;
        }
    }
    return {ActionType::Elliptic, false, true, {}, "phi vanishes on all generators"};
}

Classification classify_h2(const ActionHandle& action, const std::vector<GroupElement>& gens) {
    bool any_lox = false, any_parab = false;
    GroupElement lox = GroupElement::identity(action.group);
    for (const auto& g : gens) {
        if (g.bs().tpow != 0) {
            any_lox = true;
            lox = g;
        } else if (g.bs().num != 0) {
            any_parab = true;
        }
    }
    if (!any_lox) {
        // t-exponent is additive, so the generated subgroup has none either.
        if (any_parab)
            return {ActionType::Horocyclic, false, true, {},
                    "translations only; unique fixed point at infinity"};
        return {ActionType::Elliptic, false, true, {}, "trivial subgroup"};
    }
    // Loxodromics present and every element fixes infinity. Lineal iff all
    // generators also fix the finite fixed point of one loxodromic.
    const auto& d = lox.bs();
    Rat scale = pow_rat(Rat(action.group.bs_base), d.tpow);
    Rat q(d.num, pow_int(action.group.bs_base, d.denom_exp));
    Rat p = q / (Rat(1) - scale);  // n^k p + q = p
    for (const auto& g : gens) {
        Rat gs = pow_rat(Rat(action.group.bs_base), g.bs().tpow);
        Rat gq(g.bs().num, pow_int(action.group.bs_base, g.bs().denom_exp));
        if (gs * p + gq != p) {
            Classification c{ActionType::Focal, false, true, {lox.str(), g.str()}, ""};
            c.note = "fixed point at infinity; generator moves the finite fixed point " +
                     rat_to_string(p);
            return c;
        }
    }
    Classification c{ActionType::Lineal, true, true, {lox.str()}, ""};
    c.note = "all generators fix infinity and " + rat_to_string(p);
    return c;
}

Classification classify_free(const ActionHandle& action,
                             const std::vector<GroupElement>& gens) {
    std::vector<GroupElement> nontrivial;
    for (const auto& g : gens)
        if (!g.is_identity()) nontrivial.push_back(g);
    if (nontrivial.empty())
        return {ActionType::Elliptic, false, true, {}, "trivial subgroup"};
    for (size_t i = 0; i < nontrivial.size(); ++i)
        for (size_t j = i + 1; j < nontrivial.size(); ++j) {
            const GroupElement &g = nontrivial[i], &h = nontrivial[j];
            if (!(mul(g, h) == mul(h, g))) {
                Classification c{ActionType::GeneralType, false, true, {g.str(), h.str()}, ""};
                c.note = "non-commuting generators act with independent axes";
                return c;
            }
        }
    Classification c{ActionType::Lineal, true, true, {nontrivial.front().str()}, ""};
    c.note = "commuting generators of a free group share one axis";
    return c;
}

Classification classify_hnn_tree(const ActionHandle& action,
                                 const std::vector<GroupElement>& gens, int W) {
    bool any_drift = false;
    for (const auto& g : gens) any_drift = any_drift || drift(action, g) != 0;

    if (!any_drift) {
        // Every element of the subgroup is elliptic; exhibit a common fixed
        // vertex on the fixed ray.
        int64_t v = 0;
        for (const auto& g : gens) {
            switch (action.kind) {
                case SpaceKind::LamplighterTreeRight:
                    if (!g.lamp().lamps.empty()) v = std::max(v, g.lamp().lamps.back());
                    break;
                case SpaceKind::LamplighterTreeLeft:
                    if (!g.lamp().lamps.empty()) v = std::max(v, -g.lamp().lamps.front());
                    break;
                case SpaceKind::BsTree:
                    v = std::max(v, static_cast<int64_t>(g.bs().denom_exp));
                    break;
                default: break;
            }
        }
        Classification c{ActionType::Elliptic, false, true, {}, ""};
        c.note = "global fixed vertex at depth " + std::to_string(v) + " on the fixed ray";
        return c;
    }

    // Loxodromics exist and the group fixes the ray end, so the action is
    // lineal or focal; two distinct branch ends certify focal.
    std::vector<GroupElement> dedup;
    for (const auto& g : gens) {
        bool dup = false;
        for (const auto& h : dedup) dup = dup || g == h || inv(g) == h;
        if (!dup && !g.is_identity()) dedup.push_back(g);
    }
    if (dedup.size() == 1 && drift(action, dedup.front()) != 0) {
        Classification c{ActionType::Lineal, true, true, {dedup.front().str()}, ""};
        c.note = "cyclic subgroup of a loxodromic element";
        return c;
    }

    BallParams bp;
    bp.track_words = true;
    bp.gen_names = standard_generator_names(action.group);
    bp.gen_names.resize(gens.size(), "g");
    Ball ball = enumerate_ball(gens, std::min(W, 6), bp);

    const int depth = W + 4;
    std::vector<std::pair<std::string, std::vector<std::string>>> sigs;
    for (size_t i = 0; i < ball.elements.size() && sigs.size() < 48; ++i) {
        const GroupElement& w = ball.elements[i];
        if (drift(action, w) == 0) continue;
        sigs.emplace_back(ball.word[i], branch_end_signature(action, w, depth));
    }
    for (size_t i = 0; i < sigs.size(); ++i)
        for (size_t j = i + 1; j < sigs.size(); ++j) {
            if (sigs[i].second != sigs[j].second) {
                Classification c{ActionType::Focal, false, true,
                                 {sigs[i].first, sigs[j].first}, ""};
                c.note = "distinct branch ends certified; the ray end is fixed";
                return c;
            }
        }
    Classification c{ActionType::Lineal, true, false, {sigs.front().first}, ""};
    c.note = "all sampled loxodromics share their branch end to depth W";
    return c;
}

}  // namespace

Classification classify_action(const ActionHandle& action,
                               const std::vector<GroupElement>& gens, int W) {
    if (W < 2) throw ValidationError("classification depth W must be >= 2");
    if (gens.empty()) throw ValidationError("classify_action: empty generating set");
    for (const auto& g : gens) require_compatible(action, g);
    switch (action.kind) {
        case SpaceKind::QuasiLine: return classify_quasi_line(action, gens);
        case SpaceKind::HyperbolicPlane: return classify_h2(action, gens);
        case SpaceKind::FreeCayley: return classify_free(action, gens);
        default: return classify_hnn_tree(action, gens, W);
    }
}

std::optional<RankObstruction> rank_obstruction(const RatMatrix& phi) {
    auto z = nullspace_vector(phi);
    if (!z) return std::nullopt;

    Rat min_abs = 0;
    for (const Rat& v : *z)
        if (v != 0 && (min_abs == 0 || abs_rat(v) < min_abs)) min_abs = abs_rat(v);
    for (Rat& v : *z) v /= min_abs;

    Rat bound = 0;
    for (const auto& row : phi)
        for (const Rat& v : row) bound += abs_rat(v);

    // |Phi . floor(n z)|_inf <= K for n = 1..100, exactly.
    for (int n = 1; n <= 100; ++n) {
        for (const auto& row : phi) {
            Rat acc = 0;
            for (size_t j = 0; j < row.size(); ++j) acc += row[j] * Rat(floor_rat(Rat(n) * (*z)[j]));
            if (abs_rat(acc) > bound)
                throw Error("rank obstruction bound violated at n = " + std::to_string(n));
        }
    }

    std::ostringstream family;
    family << "floor(n z) with z = (";
    for (size_t i = 0; i < z->size(); ++i) family << (i ? ", " : "") << rat_to_string((*z)[i]);
    family << "), n = 1, 2, ...";
    return RankObstruction{std::move(*z), bound, family.str()};
}

ConfiningReport confining_check(const ConfiningInstance& instance, int N, int n0_max) {
    if (N < 0 || n0_max < 0) throw ValidationError("confining_check: negative bounds");
    ConfiningReport report;
    report.instance = instance.description;
    report.window_size = static_cast<int64_t>(instance.window.size());

    std::vector<const GroupElement*> a_window;
    for (const auto& h : instance.window)
        if (instance.in_A(h)) a_window.push_back(&h);
    report.a_size = static_cast<int64_t>(a_window.size());

    report.cond1 = true;
    for (const auto* h : a_window) {
        if (!instance.in_A(instance.alpha(*h))) {
            report.cond1 = false;
            report.cond1_counterexample = h->str();
            break;
        }
    }

    report.cond2 = true;
    for (const auto& h : instance.window) {
        GroupElement cur = h;
        int n = 0;
        while (n <= N && !instance.in_A(cur)) {
            cur = instance.alpha(cur);
            ++n;
        }
        if (n > N) {
            report.cond2 = false;
            report.cond2_failure = h.str();
            break;
        }
        report.cond2_max_n = std::max(report.cond2_max_n, n);
    }

    report.cond3 = false;
    for (int n0 = 0; n0 <= n0_max && !report.cond3; ++n0) {
        bool ok = true;
        for (size_t i = 0; i < a_window.size() && ok; ++i)
            for (size_t j = 0; j < a_window.size() && ok; ++j) {
                GroupElement prod = mul(*a_window[i], *a_window[j]);
                for (int n = 0; n < n0; ++n) prod = instance.alpha(prod);
                ok = instance.in_A(prod);
            }
        if (ok) {
            report.cond3 = true;
            report.n0 = n0;
        }
    }
    return report;
}

ConfiningInstance lamplighter_confining_instance(int r0, int window, int max_lamps,
                                                 bool reversed) {
    if (window < 1 || max_lamps < 1) throw ValidationError("bad confining window");
    if (max_lamps > 2 && window > 16) throw ResourceError("confining window too large to enumerate");

    ConfiningInstance inst;
    inst.description = std::string("lamplighter shift-kernel, alpha = conj by ") +
                       (reversed ? "t^-1" : "t") + ", A = {T1 displacement <= " +
                       std::to_string(r0) + "}, supports in [-" + std::to_string(window) +
                       ", " + std::to_string(window) + "], <= " + std::to_string(max_lamps) +
                       " lamps";

    // Enumerate configurations with at most max_lamps lamps in the range.
    std::vector<std::vector<int64_t>> supports{{}};
    std::vector<std::vector<int64_t>> current{{}};
    for (int size = 1; size <= max_lamps; ++size) {
        std::vector<std::vector<int64_t>> next;
        for (const auto& s : current) {
            int64_t from = s.empty() ? -window : s.back() + 1;
            for (int64_t p = from; p <= window; ++p) {
                auto t = s;
                t.push_back(p);
                next.push_back(t);
            }
        }
        for (const auto& s : next) supports.push_back(s);
        current = std::move(next);
    }
    for (const auto& s : supports)
        inst.window.push_back(GroupElement::lamplighter(s, 0));

    GroupInstance g = GroupInstance::lamplighter();
    GroupElement conj_by = reversed ? inv(gen_t(g)) : gen_t(g);
    inst.alpha = [conj_by](const GroupElement& h) { return conjugate(conj_by, h); };

    ActionHandle t1 = ActionHandle::lamplighter_t1();
    Rat bound = r0;
    inst.in_A = [t1, bound](const GroupElement& h) {
        return h.lamp().shift == 0 && exact_displacement(t1, h) <= bound;
    };
    return inst;
}

PingPongResult pingpong_certify(const ActionHandle& action, const GroupElement& g,
                                const GroupElement& h, int N, int W) {
    if (N < 1 || W < 1) throw ValidationError("pingpong: N and W must be positive");
    require_compatible(action, g);
    require_compatible(action, h);
    for (const auto* e : {&g, &h})
        if (classify_element(action, *e) != IsometryType::Loxodromic)
            throw ValidationError("pingpong needs loxodromic inputs; " + e->str() + " is not");

    PingPongResult result;
    result.N = N;
    result.W = W;
    result.g_str = g.str();
    result.h_str = h.str();

    if (action.kind != SpaceKind::FreeCayley) {
        // Every loxodromic fixes the globally fixed boundary point, so the
        // four endpoints can never be pairwise distinct.
        HoroEnd end = fixed_end(action);
        result.refusal = "common fixed end: every loxodromic of this action has it as an endpoint";
        result.common_end = end.description;
        return result;
    }

    if (mul(g, h) == mul(h, g)) {
        result.refusal = "shared ends: the loxodromics commute";
        result.common_end = "axis ends of " + g.str();
        return result;
    }

    // Endpoint separation evidence: ray prefixes of the four ends.
    const int depth = 4;
    std::vector<std::pair<std::string, std::vector<std::string>>> ends = {
        {"g+", end_signature(action, g, depth)},
        {"g-", end_signature(action, inv(g), depth)},
        {"h+", end_signature(action, h, depth)},
        {"h-", end_signature(action, inv(h), depth)},
    };
    for (size_t i = 0; i < ends.size(); ++i)
        for (size_t j = i + 1; j < ends.size(); ++j) {
            size_t d = 0;
            while (d < ends[i].second.size() && d < ends[j].second.size() &&
                   ends[i].second[d] == ends[j].second[d])
                ++d;
            result.end_evidence.push_back(ends[i].first + " vs " + ends[j].first +
                                          ": rays diverge at depth " + std::to_string(d + 1));
        }

    // Every nonempty reduced word in g^N, h^N of syllable length <= W.
    GroupElement letters[4] = {power(g, N), power(g, -N), power(h, N), power(h, -N)};
    auto inverse_of = [](int s) { return s ^ 1; };
    struct Frame {
        GroupElement value;
        int last;
        int depth;
    };
    std::vector<Frame> stack;
    GroupElement id = GroupElement::identity(action.group);
    for (int s = 0; s < 4; ++s) stack.push_back({mul(id, letters[s]), s, 1});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        ++result.words_checked;
        if (f.value.is_identity()) {
            result.refusal = "identity word of syllable length " + std::to_string(f.depth);
            return result;
        }
        if (f.depth < W) {
            for (int s = 0; s < 4; ++s) {
                if (s == inverse_of(f.last)) continue;
                stack.push_back({mul(f.value, letters[s]), s, f.depth + 1});
            }
        }
    }
    result.certified = true;
    return result;
}

std::vector<GroupElement> extract_stabilizer(const ActionHandle& action,
                                             const std::vector<GroupElement>& elements) {
    std::map<std::string, std::vector<const GroupElement*>> fibers;
    for (const auto& g : elements) {
        require_compatible(action, g);
        fibers[vertex_key(action, g)].push_back(&g);
    }
    std::string base_key = vertex_key(action, GroupElement::identity(action.group));
    std::vector<GroupElement> out;
    for (auto& [key, fiber] : fibers) {
        if (fiber.size() < 2) continue;
        std::sort(fiber.begin(), fiber.end(),
                  [](const GroupElement* a, const GroupElement* b) { return a->key() < b->key(); });
        GroupElement rep_inv = inv(*fiber.front());
        for (const auto* h : fiber) {
            GroupElement stab = mul(rep_inv, *h);
            if (vertex_key(action, stab) != base_key)
                throw Error("stabilizer extraction produced a non-fixing element");
            out.push_back(std::move(stab));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const GroupElement& a, const GroupElement& b) { return a.key() < b.key(); });
    return out;
}

GrowthSeries growth_series(const std::vector<GroupElement>& gens, int L, int64_t budget) {
    if (L < 4) throw ValidationError("growth series needs L >= 4");
    BallParams bp;
    bp.budget = budget;
    Ball ball = enumerate_ball(gens, L, bp);
    GrowthSeries series;
    series.sizes = ball.sizes;
    series.exponential = true;
    for (int k = L / 2; k < L; ++k) {
        double ratio = static_cast<double>(series.sizes[k + 1]) /
                       static_cast<double>(series.sizes[k]);
        if (ratio < 1.0 + series.margin) series.exponential = false;
    }
    return series;
}

TitsReport tits_report(const ProductAction& p, const std::vector<GroupElement>& gens, int W) {
    TitsReport report;
    for (const auto& f : p.factors)
        report.factor_types.push_back(classify_action(f, gens, W));

    // Case: some factor of general type -> free subgroup, with a certificate.
    for (size_t i = 0; i < p.factors.size(); ++i) {
        if (report.factor_types[i].type != ActionType::GeneralType) continue;
        report.verdict = "contains-F2";
        const ActionHandle& f = p.factors[i];
        for (size_t a = 0; a < gens.size() && !report.certificate; ++a)
            for (size_t b = a + 1; b < gens.size() && !report.certificate; ++b) {
                const GroupElement &g = gens[a], &h = gens[b];
                if (g.is_identity() || h.is_identity() || mul(g, h) == mul(h, g)) continue;
                PingPongResult cert = pingpong_certify(f, g, h, 2, 8);
                if (cert.certified) report.certificate = std::move(cert);
            }
        return report;
    }

    bool all_elliptic_or_lineal = true;
    int lineal = 0;
    for (const auto& c : report.factor_types) {
        if (c.type == ActionType::Lineal) ++lineal;
        else if (c.type != ActionType::Elliptic) all_elliptic_or_lineal = false;
    }
    if (all_elliptic_or_lineal) {
        report.verdict = "virtually-abelian";
        report.rank_bound = lineal;
        return report;
    }

    // Two focal factors plus an element whose raw horokernel signs at the two
    // fixed points are opposite.
    std::vector<size_t> focal;
    for (size_t i = 0; i < p.factors.size(); ++i)
        if (report.factor_types[i].type == ActionType::Focal) focal.push_back(i);
    if (focal.size() >= 2) {
        BallParams bp;
        bp.track_words = true;
        bp.gen_names = standard_generator_names(p.group());
        bp.gen_names.resize(gens.size(), "g");
        Ball ball = enumerate_ball(gens, W, bp);
        for (size_t a = 0; a < focal.size(); ++a)
            for (size_t b = a + 1; b < focal.size(); ++b) {
                // Lexicographically least word among the shortest witnesses.
                size_t best = ball.elements.size();
                for (size_t i = 0; i < ball.elements.size(); ++i) {
                    int sa = busemann_raw_sign(p.factors[focal[a]], ball.elements[i]);
                    int sb = busemann_raw_sign(p.factors[focal[b]], ball.elements[i]);
                    if (sa * sb != -1) continue;
                    if (best == ball.elements.size() ||
                        ball.length[i] < ball.length[best] ||
                        (ball.length[i] == ball.length[best] && ball.word[i] < ball.word[best]))
                        best = i;
                }
                if (best < ball.elements.size()) {
                    int sa = busemann_raw_sign(p.factors[focal[a]], ball.elements[best]);
                    report.verdict = "amenable-not-virtually-abelian";
                    report.case3_alpha = ball.word[best];
                    const char* attract = sa > 0 ? "attracts" : "repels";
                    const char* other = sa > 0 ? "repels" : "attracts";
                    report.case3_detail =
                        "fixed point of " + p.factors[focal[a]].space_name() + " " + attract +
                        " alpha; fixed point of " + p.factors[focal[b]].space_name() + " " +
                        other + " it";
                    return report;
                }
            }
    }
    report.verdict = "undecided";
    return report;
}

}  // namespace pptlab
