#pragma once

#include <cstdint>
#include <string>

#include "pptlab/group.hpp"

namespace pptlab {

/// The three HNN structures with a stem-and-stable-letter normal form.
enum class HnnStructure {
    LamplighterRight,  // vertex group A = {supp f <= 0, shift 0}, stable letter t
    LamplighterLeft,   // vertex group B = {supp f >= 0, shift 0}, stable letter t^-1
    BsTree,            // vertex group <a> = {k = 0, integer q}, stable letter t
};

GroupElement stable_letter(HnnStructure s, const GroupInstance& inst);

/// The triple (i, stem, j) realizing stable^-i * stem * stable^j with i, j >= 0
/// and the stem in the vertex group. When i > 0 and j > 0 the stem is not in
/// the image of the structural endomorphism (boundary lamp at coordinate 0,
/// resp. base does not divide the stem exponent).
struct HnnNormalForm {
    HnnStructure structure;
    int64_t i = 0;
    int64_t j = 0;
    GroupElement stem;

    int64_t displacement() const { return i + j; }
};

/// Normal form in the right structure: i = max{0, max supp f, -shift},
/// j = shift + i, stem support = supp f - i.
HnnNormalForm lamplighter_nf_right(const GroupElement& g);

/// Normal form in the left structure: i = max{0, -min supp f, shift},
/// j = i - shift, stem support = supp f + i.
HnnNormalForm lamplighter_nf_left(const GroupElement& g);

/// Normal form of the affine map x -> n^k x + num/n^e:
/// i = max(e, -k, 0), j = k + i, stem exponent m = num * n^(i-e).
HnnNormalForm bs_normal_form(const GroupElement& g);

/// Multiplies the triple back out; evaluate(nf(g)) == g for all g.
GroupElement evaluate(const HnnNormalForm& nf);

bool is_reduced(const HnnNormalForm& nf);

/// Stem lamp configuration in vertex-group index coordinates
/// (index u <-> lamp coordinate -u; nonnegative for the right structure,
/// nonpositive for the left one).
std::vector<int64_t> stem_indices(const HnnNormalForm& nf);

}  // namespace pptlab
