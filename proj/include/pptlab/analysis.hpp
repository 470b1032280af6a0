#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pptlab/action.hpp"
#include "pptlab/ball.hpp"
#include "pptlab/linalg.hpp"
#include "pptlab/product.hpp"

namespace pptlab {

enum class ActionType { Elliptic, Horocyclic, Lineal, Focal, GeneralType };
std::string action_type_name(ActionType t);

/// Verdict of the five-type taxonomy for the subgroup generated by `gens`.
/// `exact` is set only when the verdict is decided structurally (a verified
/// fixed vertex, certified distinct ends, affine fixed-point analysis);
/// otherwise it is evidence at enumeration depth W.
struct Classification {
    ActionType type = ActionType::Elliptic;
    bool orientable = false;  // meaningful for lineal verdicts
    bool exact = false;
    std::vector<std::string> witnesses;
    std::string note;
};

Classification classify_action(const ActionHandle& action,
                               const std::vector<GroupElement>& gens, int W);

/// First `depth` vertex keys of the geodesic ray from the basepoint toward
/// the non-fixed end of a loxodromic tree isometry; proven to lie on the
/// limit ray (prefix computed from a power of g deep enough).
std::vector<std::string> end_signature(const ActionHandle& action, const GroupElement& g,
                                       int depth);

struct RankObstruction {
    std::vector<Rat> z;  // nullvector scaled so min nonzero |z_i| = 1
    Rat bound;           // K = sum of |phi_i(h_j)|
    std::string family;  // the integer family floor(n z)
};

/// Exact nullvector of the homomorphism matrix with the boundedness check
/// |Phi . floor(n z)|_inf <= K verified for n = 1..100 before returning.
std::optional<RankObstruction> rank_obstruction(const RatMatrix& phi);

/// A finite truncation of a subgroup H together with the self-map alpha and
/// the membership predicate for the candidate confining subset A.
struct ConfiningInstance {
    std::string description;
    std::vector<GroupElement> window;
    std::function<GroupElement(const GroupElement&)> alpha;
    std::function<bool(const GroupElement&)> in_A;
};

struct ConfiningReport {
    std::string instance;
    int64_t window_size = 0;
    int64_t a_size = 0;           // |A within the window|
    bool cond1 = false;           // alpha(A) subset of A
    std::string cond1_counterexample;
    bool cond2 = false;           // every window element enters A within N steps
    int cond2_max_n = 0;          // largest minimal n observed
    std::string cond2_failure;
    bool cond3 = false;           // alpha^{n0}(A.A) subset of A for some n0 <= n0_max
    int n0 = -1;
    bool pass() const { return cond1 && cond2 && cond3; }
};

ConfiningReport confining_check(const ConfiningInstance& instance, int N, int n0_max);

/// H = shift-kernel lamp configurations; alpha = conjugation by t (or by t^-1
/// when reversed); A = {h in H : T1 displacement <= r0}; window = supports
/// within [-window, window] with at most max_lamps lamps.
ConfiningInstance lamplighter_confining_instance(int r0, int window, int max_lamps,
                                                 bool reversed);

struct PingPongResult {
    bool certified = false;
    int64_t words_checked = 0;
    int N = 0;
    int W = 0;
    std::string g_str, h_str;
    std::string refusal;     // empty when certified
    std::string common_end;  // witness on a shared-end refusal
    std::vector<std::string> end_evidence;
};

/// Certifies that <g^N, h^N> is free of rank 2 by checking end separation and
/// evaluating every reduced word of syllable length <= W, or refuses with a
/// common-end witness.
PingPongResult pingpong_certify(const ActionHandle& action, const GroupElement& g,
                                const GroupElement& h, int N, int W);

/// Pigeonhole stabilizer extraction: group the inputs by image vertex; each
/// fiber B with |B| >= 2 and first representative g contributes {g^-1 h}.
/// Every output fixes the basepoint (asserted).
std::vector<GroupElement> extract_stabilizer(const ActionHandle& action,
                                             const std::vector<GroupElement>& elements);

struct GrowthSeries {
    std::vector<int64_t> sizes;  // |B(k)| for k = 0..L
    bool exponential = false;
    double margin = 0.5;  // exponential when trailing ratios stay >= 1 + margin
};

GrowthSeries growth_series(const std::vector<GroupElement>& gens, int L,
                           int64_t budget = 2'000'000);

struct TitsReport {
    std::string verdict;  // virtually-abelian | contains-F2 | amenable-not-virtually-abelian | undecided
    int rank_bound = 0;   // meaningful for virtually-abelian
    std::vector<Classification> factor_types;
    std::optional<PingPongResult> certificate;  // attached for contains-F2
    std::string case3_alpha;                    // witness word for the focal-pair case
    std::string case3_detail;
};

/// Trichotomy for the subgroup generated by `gens` acting diagonally:
/// all factors elliptic/lineal -> virtually abelian of rank <= #lineal;
/// a general-type factor -> contains F2 with a ping-pong certificate;
/// two focal factors with an element of opposite horokernel signs at the two
/// fixed points -> amenable-not-virtually-abelian evidence; else undecided.
TitsReport tits_report(const ProductAction& p, const std::vector<GroupElement>& gens, int W);

}  // namespace pptlab
