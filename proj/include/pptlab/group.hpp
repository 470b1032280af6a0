#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pptlab/errors.hpp"
#include "pptlab/numeric.hpp"

namespace pptlab {

enum class Family { Lamplighter, BaumslagSolitar, Free, FreeAbelian };

/// Describes one of the four built-in group families. Elements carry a copy
/// and arithmetic rejects mixed-instance arguments.
struct GroupInstance {
    Family family = Family::Lamplighter;
    int bs_base = 0;  // n for BS(1,n), n >= 2
    int rank = 0;     // free rank or Z^r dimension

    static GroupInstance lamplighter();
    static GroupInstance baumslag_solitar(int n);
    static GroupInstance free_group(int rank);
    static GroupInstance free_abelian(int dim);

    bool operator==(const GroupInstance&) const = default;

    std::string name() const;

    /// Dimension of the abelianization lattice hom(G, Z) acts on.
    int abelianization_dim() const;
};

/// Pair (f, n): f a finite 0/1 lamp configuration on Z, n the shift.
/// Multiplication follows (f,n)(g,m) = (h, n+m) with h(k) = f(k) + g(n+k).
struct LamplighterData {
    std::vector<int64_t> lamps;  // strictly increasing coordinates where f = 1
    int64_t shift = 0;
};

/// The affine map x -> n^tpow * x + num / n^denom_exp. denom_exp is minimal:
/// if denom_exp > 0 then base does not divide num.
struct BsData {
    int64_t tpow = 0;
    Int num = 0;
    uint32_t denom_exp = 0;
};

/// Freely reduced word; letters are +-(i+1) for generator index i.
struct FreeData {
    std::vector<int32_t> word;
};

struct ZnData {
    std::vector<int64_t> coords;
};

class GroupElement {
public:
    GroupElement() = default;

    static GroupElement identity(const GroupInstance& inst);
    static GroupElement lamplighter(std::vector<int64_t> lamps, int64_t shift);
    static GroupElement bs(const GroupInstance& inst, int64_t tpow, Int num, uint32_t denom_exp);
    static GroupElement free_word(const GroupInstance& inst, std::vector<int32_t> word);
    static GroupElement zn(const GroupInstance& inst, std::vector<int64_t> coords);

    const GroupInstance& instance() const { return inst_; }
    bool is_identity() const;

    const LamplighterData& lamp() const;
    const BsData& bs() const;
    const FreeData& fw() const;
    const ZnData& zn() const;

    /// Canonical byte serialization of the normalized fields; equal iff the
    /// elements are equal. Used as the dedup/hash/sort key everywhere.
    std::string key() const;

    /// Documented text syntax, parseable by parse_element.
    std::string str() const;

    /// Exponent vector in the abelianization (shift / t-exponent / letter sums / coords).
    std::vector<int64_t> abelianization() const;

    friend bool operator==(const GroupElement& a, const GroupElement& b);

private:
    GroupInstance inst_;
    std::variant<LamplighterData, BsData, FreeData, ZnData> data_;
};

GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& g);
GroupElement power(const GroupElement& g, int64_t e);
/// h g h^-1
GroupElement conjugate(const GroupElement& h, const GroupElement& g);
GroupElement commutator(const GroupElement& g, const GroupElement& h);

GroupElement parse_element(const GroupInstance& inst, const std::string& text);

/// a = (0,1) resp. lamp at the origin; t = (1,0) resp. the shift generator.
GroupElement gen_a(const GroupInstance& inst);
GroupElement gen_t(const GroupInstance& inst);
GroupElement lamp_at(const GroupInstance& inst, int64_t pos);
GroupElement free_gen(const GroupInstance& inst, int index);
GroupElement zn_basis(const GroupInstance& inst, int index);

/// The documented generating set: {a, t} / {a, t} / free letters / lattice basis.
std::vector<GroupElement> standard_generators(const GroupInstance& inst);

GroupInstance instance_from_config(const std::string& family, int bs_n, int rank, int dim);

}  // namespace pptlab
