#include "pptlab/product.hpp"

#include <algorithm>
#include <cmath>

namespace pptlab {

ProductAction::ProductAction(std::vector<ActionHandle> fs) : factors(std::move(fs)) {
    if (factors.empty()) throw ValidationError("product action needs at least one factor");
    for (const auto& f : factors)
        if (!(f.group == factors.front().group))
            throw ValidationError("product factors must share the group instance");
}

bool ProductAction::exact() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const ActionHandle& f) { return f.metric_exact(); });
}

Rat l1_exact(const ProductAction& p, const GroupElement& g) {
    if (!p.exact()) throw ValidationError("product has a non-exact factor; use l1_displacement");
    Rat sum = 0;
    for (const auto& f : p.factors) sum += exact_displacement(f, g);
    return sum;
}

double l1_displacement(const ProductAction& p, const GroupElement& g) {
    double sum = 0;
    for (const auto& f : p.factors) sum += displacement(f, g);
    return sum;
}

namespace {

bool is_t1_t2(const ProductAction& p) {
    return p.factors.size() == 2 &&
           p.factors[0].kind == SpaceKind::LamplighterTreeRight &&
           p.factors[1].kind == SpaceKind::LamplighterTreeLeft;
}

std::optional<WitnessFamily> find_family(const ProductAction& p, const Ball& ball,
                                         const std::vector<Rat>& exact_d,
                                         const std::vector<double>& float_d, bool exact,
                                         const Rat& r, double tol) {
    for (size_t i = 0; i < ball.elements.size(); ++i) {
        const GroupElement& w = ball.elements[i];
        if (w.is_identity()) continue;
        bool inside = exact ? exact_d[i] <= r
                            : float_d[i] <= static_cast<double>(r) + tol;
        if (!inside) continue;
        // The family {w^m}: verify the first powers stay inside the threshold.
        bool verified = true;
        for (int m = 2; m <= 8 && verified; ++m) {
            GroupElement wm = power(w, m);
            if (exact)
                verified = l1_exact(p, wm) <= r;
            else
                verified = l1_displacement(p, wm) <= static_cast<double>(r) + tol;
        }
        if (verified)
            return WitnessFamily{w.str(), "powers (" + w.str() + ")^m, m = 1, 2, ..."};
    }
    return std::nullopt;
}

}  // namespace

AuditReport properness_audit(const ProductAction& p, const std::vector<GroupElement>& gens,
                             const AuditParams& params,
                             const std::vector<std::string>& gen_names) {
    if (params.r_grid.empty()) throw ValidationError("audit needs a nonempty r grid");
    if (params.delta <= 0 || params.delta >= params.L)
        throw ValidationError("audit needs 0 < delta < L");

    AuditReport report;
    report.group = p.group().name();
    for (const auto& f : p.factors) report.factors.push_back(f.space_name());
    for (size_t i = 0; i < gens.size(); ++i)
        report.generators.push_back(i < gen_names.size() ? gen_names[i] : gens[i].str());
    report.L = params.L;
    report.delta = params.delta;
    report.exact = p.exact();
    report.tol = params.tol;

    Rat rmax = *std::max_element(params.r_grid.begin(), params.r_grid.end());
    if (Rat(params.L) <= rmax)
        report.warnings.push_back("enumeration radius L should exceed max(r_grid)");

    BallParams bp;
    bp.budget = params.budget;
    Ball ball = enumerate_ball(gens, params.L, bp);

    std::vector<Rat> exact_d;
    std::vector<double> float_d;
    if (report.exact) {
        exact_d.reserve(ball.elements.size());
        for (const auto& g : ball.elements) exact_d.push_back(l1_exact(p, g));
    } else {
        float_d.reserve(ball.elements.size());
        for (const auto& g : ball.elements) float_d.push_back(l1_displacement(p, g));
    }

    // Sorted r grid, one row per threshold.
    std::vector<Rat> grid(params.r_grid);
    std::sort(grid.begin(), grid.end());
    bool all_stable = true;
    for (const Rat& r : grid) {
        AuditRow row;
        row.r = r;
        for (size_t i = 0; i < ball.elements.size(); ++i) {
            bool inside;
            if (report.exact) {
                inside = exact_d[i] <= r;
            } else {
                double d = float_d[i], rv = static_cast<double>(r);
                inside = d <= rv + params.tol;
                if (std::abs(d - rv) <= params.tol)
                    row.borderline.push_back(ball.elements[i].str());
            }
            if (inside) {
                ++row.count;
                if (ball.length[i] <= params.L - params.delta) ++row.count_shrunk;
            }
        }
        row.stable = row.count == row.count_shrunk;
        all_stable = all_stable && row.stable;
        if (is_t1_t2(p) && denominator(row.r) == 1 && row.r >= 0)
            row.predicted = predicted_displacement_count(
                static_cast<int>(numerator(row.r).convert_to<int64_t>()));
        report.rows.push_back(std::move(row));
    }

    // Witnesses: minimal nonzero displacement.
    bool have_min = false;
    Rat min_exact = 0;
    double min_float = 0;
    for (size_t i = 0; i < ball.elements.size(); ++i) {
        if (report.exact) {
            if (exact_d[i] == 0) continue;
            if (!have_min || exact_d[i] < min_exact) min_exact = exact_d[i];
        } else {
            if (float_d[i] <= params.tol) continue;
            if (!have_min || float_d[i] < min_float) min_float = float_d[i];
        }
        have_min = true;
    }
    if (have_min) {
        for (size_t i = 0; i < ball.elements.size(); ++i) {
            bool hit = report.exact ? exact_d[i] == min_exact
                                    : std::abs(float_d[i] - min_float) <= params.tol;
            if (hit && report.witnesses.size() < 16)
                report.witnesses.push_back(ball.elements[i].str());
        }
        report.min_positive =
            report.exact ? rat_to_string(min_exact) : std::to_string(min_float);
    }

    if (all_stable) {
        report.verdict = "proper-evidence";
    } else {
        report.verdict = "non-proper-witness";
        for (const auto& row : report.rows) {
            if (row.stable) continue;
            report.family = find_family(p, ball, exact_d, float_d, report.exact, row.r,
                                        params.tol);
            if (report.family) break;
        }
        if (!report.family)
            report.warnings.push_back("instability detected but no verified power family");
    }
    return report;
}

int64_t predicted_displacement_count(int r) {
    if (r < 0) throw ValidationError("negative radius");
    if (r > 12) throw ResourceError("candidate window 2^(2r+1) too large for r > 12");
    ProductAction t1t2({ActionHandle::lamplighter_t1(), ActionHandle::lamplighter_t2()});
    const int width = 2 * r + 1;
    int64_t count = 0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << width); ++mask) {
        std::vector<int64_t> lamps;
        for (int b = 0; b < width; ++b)
            if (mask & (uint64_t{1} << b)) lamps.push_back(b - r);
        for (int64_t n = -r; n <= r; ++n) {
            GroupElement g = GroupElement::lamplighter(lamps, n);
            if (l1_exact(t1t2, g) <= r) ++count;
        }
    }
    return count;
}

Rat max_commutator_displacement(const ActionHandle& action,
                                const std::vector<GroupElement>& gens, int radius) {
    Ball ball = enumerate_ball(gens, radius);
    Rat best = 0;
    for (const auto& g : ball.elements)
        for (const auto& h : ball.elements) {
            Rat d = exact_displacement(action, commutator(g, h));
            if (d > best) best = d;
        }
    return best;
}

}  // namespace pptlab
