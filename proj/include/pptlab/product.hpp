#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pptlab/action.hpp"
#include "pptlab/ball.hpp"

namespace pptlab {

/// Ordered list of factor actions of one group instance; the diagonal action
/// displaces by the sum of factor displacements.
struct ProductAction {
    std::vector<ActionHandle> factors;

    explicit ProductAction(std::vector<ActionHandle> fs);

    const GroupInstance& group() const { return factors.front().group; }
    bool exact() const;
};

Rat l1_exact(const ProductAction& p, const GroupElement& g);
double l1_displacement(const ProductAction& p, const GroupElement& g);

struct AuditRow {
    Rat r = 0;
    int64_t count = 0;         // N(r, L)
    int64_t count_shrunk = 0;  // N(r, L - delta)
    bool stable = false;
    std::optional<int64_t> predicted;      // lamplighter T1 x T2 closed-form count
    std::vector<std::string> borderline;   // |D - r| <= tol (float path only)
};

struct WitnessFamily {
    std::string generator;
    std::string description;
};

struct AuditReport {
    std::string group;
    std::vector<std::string> factors;
    std::vector<std::string> generators;
    int L = 0;
    int delta = 2;
    bool exact = true;
    double tol = 1e-9;
    std::vector<AuditRow> rows;
    std::vector<std::string> witnesses;  // elements realizing minimal nonzero displacement
    std::string min_positive;
    std::string verdict;  // "proper-evidence" | "non-proper-witness"
    std::optional<WitnessFamily> family;
    std::vector<std::string> warnings;
};

struct AuditParams {
    int L = 8;
    std::vector<Rat> r_grid;
    int delta = 2;
    int64_t budget = 2'000'000;
    double tol = 1e-9;
};

/// Exact counts N(r, L) = #{g in B(L) : l1 displacement <= r} with stability
/// flags against B(L - delta). Mixed (H2) products compare with the float
/// tolerance and record borderline elements separately.
AuditReport properness_audit(const ProductAction& p, const std::vector<GroupElement>& gens,
                             const AuditParams& params,
                             const std::vector<std::string>& gen_names = {});

/// Number of lamplighter elements with T1+T2 displacement <= r, by direct
/// enumeration of the finite candidate window (shift and support within
/// [-r, r], then exact filtering).
int64_t predicted_displacement_count(int r);

/// max over commutators [g,h] of ball elements of their factor displacement;
/// exactly 0 on quasi-lines.
Rat max_commutator_displacement(const ActionHandle& action,
                                const std::vector<GroupElement>& gens, int radius);

}  // namespace pptlab
