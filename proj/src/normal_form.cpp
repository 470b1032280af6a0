#include "pptlab/normal_form.hpp"

#include <algorithm>

namespace pptlab {

GroupElement stable_letter(HnnStructure s, const GroupInstance& inst) {
    switch (s) {
        case HnnStructure::LamplighterRight: return gen_t(inst);
        case HnnStructure::LamplighterLeft: return inv(gen_t(inst));
        case HnnStructure::BsTree: return gen_t(inst);
    }
    throw ValidationError("unreachable structure");
}

HnnNormalForm lamplighter_nf_right(const GroupElement& g) {
    const auto& d = g.lamp();
    int64_t i = std::max<int64_t>(0, -d.shift);
    if (!d.lamps.empty()) i = std::max(i, d.lamps.back());  // max supp f
    std::vector<int64_t> stem(d.lamps);
    for (auto& p : stem) p -= i;
    return HnnNormalForm{HnnStructure::LamplighterRight, i, d.shift + i,
                         GroupElement::lamplighter(std::move(stem), 0)};
}

HnnNormalForm lamplighter_nf_left(const GroupElement& g) {
    const auto& d = g.lamp();
    int64_t i = std::max<int64_t>(0, d.shift);
    if (!d.lamps.empty()) i = std::max(i, -d.lamps.front());  // -min supp f
    std::vector<int64_t> stem(d.lamps);
    for (auto& p : stem) p += i;
    return HnnNormalForm{HnnStructure::LamplighterLeft, i, i - d.shift,
                         GroupElement::lamplighter(std::move(stem), 0)};
}

HnnNormalForm bs_normal_form(const GroupElement& g) {
    const auto& d = g.bs();
    int64_t i = std::max<int64_t>(static_cast<int64_t>(d.denom_exp), -d.tpow);
    if (i < 0) i = 0;
    Int m = d.num * pow_int(g.instance().bs_base, i - static_cast<int64_t>(d.denom_exp));
    return HnnNormalForm{HnnStructure::BsTree, i, d.tpow + i,
                         GroupElement::bs(g.instance(), 0, std::move(m), 0)};
}

GroupElement evaluate(const HnnNormalForm& nf) {
    GroupElement s = stable_letter(nf.structure, nf.stem.instance());
    return mul(mul(power(s, -nf.i), nf.stem), power(s, nf.j));
}

bool is_reduced(const HnnNormalForm& nf) {
    if (nf.i < 0 || nf.j < 0) return false;
    switch (nf.structure) {
        case HnnStructure::LamplighterRight: {
            const auto& d = nf.stem.lamp();
            if (d.shift != 0) return false;
            if (!d.lamps.empty() && d.lamps.back() > 0) return false;  // stem in A
            if (nf.i > 0 && nf.j > 0)
                return !d.lamps.empty() && d.lamps.back() == 0;  // boundary lamp lit
            return true;
        }
        case HnnStructure::LamplighterLeft: {
            const auto& d = nf.stem.lamp();
            if (d.shift != 0) return false;
            if (!d.lamps.empty() && d.lamps.front() < 0) return false;  // stem in B
            if (nf.i > 0 && nf.j > 0) return !d.lamps.empty() && d.lamps.front() == 0;
            return true;
        }
        case HnnStructure::BsTree: {
            const auto& d = nf.stem.bs();
            if (d.tpow != 0 || d.denom_exp != 0) return false;  // stem in <a>
            if (nf.i > 0 && nf.j > 0)
                return d.num % nf.stem.instance().bs_base != 0;
            return true;
        }
    }
    return false;
}

std::vector<int64_t> stem_indices(const HnnNormalForm& nf) {
    std::vector<int64_t> idx;
    for (int64_t p : nf.stem.lamp().lamps) idx.push_back(-p);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace pptlab
