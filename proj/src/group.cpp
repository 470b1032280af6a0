#include "pptlab/group.hpp"

#include <algorithm>
#include <sstream>

namespace pptlab {

std::string rat_to_string(const Rat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            auto dot = s.find('.');
            if (dot == std::string::npos) return Rat(Int(s));
            // decimal literal -> exact rational
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            int frac = static_cast<int>(s.size() - dot - 1);
            return Rat(Int(digits), pow_int(10, frac));
        }
        Int den(s.substr(slash + 1));
        if (den == 0) throw ValidationError("rational with zero denominator: " + s);
        return Rat(Int(s.substr(0, slash)), den);
    } catch (const std::exception& e) {
        throw ValidationError("bad rational '" + s + "': " + e.what());
    }
}

GroupInstance GroupInstance::lamplighter() { return {Family::Lamplighter, 0, 0}; }

GroupInstance GroupInstance::baumslag_solitar(int n) {
    if (n < 2) throw ValidationError("BS(1,n) requires n >= 2");
    return {Family::BaumslagSolitar, n, 0};
}

GroupInstance GroupInstance::free_group(int rank) {
    if (rank < 1 || rank > 26) throw ValidationError("free rank must be in [1,26]");
    return {Family::Free, 0, rank};
}

GroupInstance GroupInstance::free_abelian(int dim) {
    if (dim < 1) throw ValidationError("zn dimension must be >= 1");
    return {Family::FreeAbelian, 0, dim};
}

std::string GroupInstance::name() const {
    switch (family) {
        case Family::Lamplighter: return "lamplighter";
        case Family::BaumslagSolitar: return "bs(1," + std::to_string(bs_base) + ")";
        case Family::Free: return "free(" + std::to_string(rank) + ")";
        case Family::FreeAbelian: return "zn(" + std::to_string(rank) + ")";
    }
    return "?";
}

int GroupInstance::abelianization_dim() const {
    switch (family) {
        case Family::Lamplighter: return 1;  // the shift coordinate
        case Family::BaumslagSolitar: return 1;  // the t-exponent
        case Family::Free:
        case Family::FreeAbelian: return rank;
    }
    return 0;
}

GroupInstance instance_from_config(const std::string& family, int bs_n, int rank, int dim) {
    if (family == "lamplighter") return GroupInstance::lamplighter();
    if (family == "bs") return GroupInstance::baumslag_solitar(bs_n);
    if (family == "free") return GroupInstance::free_group(rank);
    if (family == "zn") return GroupInstance::free_abelian(dim);
    throw ValidationError("unknown group family '" + family +
                          "' (expected lamplighter|bs|free|zn)");
}

namespace {

void require_same(const GroupElement& a, const GroupElement& b) {
    if (!(a.instance() == b.instance()))
        throw ValidationError("mixed group instances: " + a.instance().name() + " vs " +
                              b.instance().name());
}

void check_lamps_sorted(const std::vector<int64_t>& lamps) {
    for (size_t i = 1; i < lamps.size(); ++i)
        if (lamps[i - 1] >= lamps[i])
            throw ValidationError("lamp support must be strictly increasing");
}

// Minimal denominator exponent: valuation for composite n is divisibility by n.
void bs_reduce(const GroupInstance& inst, Int& num, uint32_t& e) {
    if (num == 0) {
        e = 0;
        return;
    }
    const Int base = inst.bs_base;
    while (e > 0 && num % base == 0) {
        num /= base;
        --e;
    }
}

std::vector<int32_t> free_reduce_concat(const std::vector<int32_t>& u,
                                        const std::vector<int32_t>& v) {
    std::vector<int32_t> out(u);
    for (int32_t c : v) {
        if (!out.empty() && out.back() == -c)
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

// XOR of sorted supports, the right one shifted by -n.
std::vector<int64_t> lamp_merge(const std::vector<int64_t>& f, const std::vector<int64_t>& g,
                                int64_t n) {
    std::vector<int64_t> out;
    out.reserve(f.size() + g.size());
    size_t i = 0, j = 0;
    while (i < f.size() || j < g.size()) {
        int64_t fv = i < f.size() ? f[i] : INT64_MAX;
        int64_t gv = j < g.size() ? g[j] - n : INT64_MAX;
        if (fv < gv) {
            out.push_back(fv);
            ++i;
        } else if (gv < fv) {
            out.push_back(gv);
            ++j;
        } else {  // cancel mod 2
            ++i;
            ++j;
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

int64_t to_i64(const std::string& s) {
    try {
        size_t pos = 0;
        int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw ValidationError("trailing junk in integer '" + s + "'");
        return v;
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("bad integer '" + s + "'");
    }
}

}  // namespace

GroupElement GroupElement::identity(const GroupInstance& inst) {
    GroupElement g;
    g.inst_ = inst;
    switch (inst.family) {
        case Family::Lamplighter: g.data_ = LamplighterData{}; break;
        case Family::BaumslagSolitar: g.data_ = BsData{}; break;
        case Family::Free: g.data_ = FreeData{}; break;
        case Family::FreeAbelian:
            g.data_ = ZnData{std::vector<int64_t>(inst.rank, 0)};
            break;
    }
    return g;
}

GroupElement GroupElement::lamplighter(std::vector<int64_t> lamps, int64_t shift) {
    check_lamps_sorted(lamps);
    GroupElement g;
    g.inst_ = GroupInstance::lamplighter();
    g.data_ = LamplighterData{std::move(lamps), shift};
    return g;
}

GroupElement GroupElement::bs(const GroupInstance& inst, int64_t tpow, Int num,
                              uint32_t denom_exp) {
    if (inst.family != Family::BaumslagSolitar) throw ValidationError("bs element needs a bs instance");
    bs_reduce(inst, num, denom_exp);
    GroupElement g;
    g.inst_ = inst;
    g.data_ = BsData{tpow, std::move(num), denom_exp};
    return g;
}

GroupElement GroupElement::free_word(const GroupInstance& inst, std::vector<int32_t> word) {
    if (inst.family != Family::Free) throw ValidationError("word element needs a free instance");
    std::vector<int32_t> reduced;
    for (int32_t c : word) {
        if (c == 0 || std::abs(c) > inst.rank)
            throw ValidationError("letter out of range for " + inst.name());
        if (!reduced.empty() && reduced.back() == -c)
            reduced.pop_back();
        else
            reduced.push_back(c);
    }
    GroupElement g;
    g.inst_ = inst;
    g.data_ = FreeData{std::move(reduced)};
    return g;
}

GroupElement GroupElement::zn(const GroupInstance& inst, std::vector<int64_t> coords) {
    if (inst.family != Family::FreeAbelian) throw ValidationError("coords element needs a zn instance");
    if (static_cast<int>(coords.size()) != inst.rank)
        throw ValidationError("expected " + std::to_string(inst.rank) + " coordinates");
    GroupElement g;
    g.inst_ = inst;
    g.data_ = ZnData{std::move(coords)};
    return g;
}

bool GroupElement::is_identity() const {
    switch (inst_.family) {
        case Family::Lamplighter: return lamp().lamps.empty() && lamp().shift == 0;
        case Family::BaumslagSolitar: return bs().tpow == 0 && bs().num == 0;
        case Family::Free: return fw().word.empty();
        case Family::FreeAbelian:
            return std::all_of(zn().coords.begin(), zn().coords.end(),
                               [](int64_t c) { return c == 0; });
    }
    return false;
}

const LamplighterData& GroupElement::lamp() const {
    if (inst_.family != Family::Lamplighter) throw ValidationError("not a lamplighter element");
    return std::get<LamplighterData>(data_);
}
const BsData& GroupElement::bs() const {
    if (inst_.family != Family::BaumslagSolitar) throw ValidationError("not a bs element");
    return std::get<BsData>(data_);
}
const FreeData& GroupElement::fw() const {
    if (inst_.family != Family::Free) throw ValidationError("not a free-group element");
    return std::get<FreeData>(data_);
}
const ZnData& GroupElement::zn() const {
    if (inst_.family != Family::FreeAbelian) throw ValidationError("not a zn element");
    return std::get<ZnData>(data_);
}

std::string GroupElement::key() const {
    std::ostringstream os;
    switch (inst_.family) {
        case Family::Lamplighter: {
            os << "L;" << lamp().shift << ';';
            for (size_t i = 0; i < lamp().lamps.size(); ++i)
                os << (i ? "," : "") << lamp().lamps[i];
            break;
        }
        case Family::BaumslagSolitar:
            os << "B;" << bs().tpow << ';' << bs().num << ';' << bs().denom_exp;
            break;
        case Family::Free: {
            os << "F;";
            for (size_t i = 0; i < fw().word.size(); ++i) os << (i ? "," : "") << fw().word[i];
            break;
        }
        case Family::FreeAbelian: {
            os << "Z;";
            for (size_t i = 0; i < zn().coords.size(); ++i)
                os << (i ? "," : "") << zn().coords[i];
            break;
        }
    }
    return os.str();
}

std::string GroupElement::str() const {
    std::ostringstream os;
    switch (inst_.family) {
        case Family::Lamplighter: {
            os << "lamps=";
            for (size_t i = 0; i < lamp().lamps.size(); ++i)
                os << (i ? "," : "") << lamp().lamps[i];
            os << ";shift=" << lamp().shift;
            break;
        }
        case Family::BaumslagSolitar: {
            os << "k=" << bs().tpow << ";q=" << bs().num;
            if (bs().denom_exp > 0) os << '/' << pow_int(inst_.bs_base, bs().denom_exp);
            break;
        }
        case Family::Free: {
            os << "word=";
            for (int32_t c : fw().word)
                os << static_cast<char>(c > 0 ? 'a' + c - 1 : 'A' - c - 1);
            break;
        }
        case Family::FreeAbelian: {
            os << "coords=";
            for (size_t i = 0; i < zn().coords.size(); ++i)
                os << (i ? "," : "") << zn().coords[i];
            break;
        }
    }
    return os.str();
}

std::vector<int64_t> GroupElement::abelianization() const {
    switch (inst_.family) {
        case Family::Lamplighter: return {lamp().shift};
        case Family::BaumslagSolitar: return {bs().tpow};
        case Family::Free: {
            std::vector<int64_t> sums(inst_.rank, 0);
            for (int32_t c : fw().word) sums[std::abs(c) - 1] += c > 0 ? 1 : -1;
            return sums;
        }
        case Family::FreeAbelian: return zn().coords;
    }
    return {};
}

bool operator==(const GroupElement& a, const GroupElement& b) {
    if (!(a.inst_ == b.inst_)) return false;
    return a.key() == b.key();
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
    require_same(a, b);
    const GroupInstance& inst = a.instance();
    switch (inst.family) {
        case Family::Lamplighter: {
            const auto& f = a.lamp();
            const auto& g = b.lamp();
            return GroupElement::lamplighter(lamp_merge(f.lamps, g.lamps, f.shift),
                                             f.shift + g.shift);
        }
        case Family::BaumslagSolitar: {
            const auto& p = a.bs();
            const auto& q = b.bs();
            // n^{k1} q2: shift q2's denominator exponent by -k1.
            Int num2 = q.num;
            int64_t e2 = static_cast<int64_t>(q.denom_exp) - p.tpow;
            if (e2 < 0) {
                num2 *= pow_int(inst.bs_base, -e2);
                e2 = 0;
            }
            int64_t e1 = p.denom_exp;
            int64_t e = std::max(e1, e2);
            Int num = num2 * pow_int(inst.bs_base, e - e2) +
                      p.num * pow_int(inst.bs_base, e - e1);
            return GroupElement::bs(inst, p.tpow + q.tpow, std::move(num),
                                    static_cast<uint32_t>(e));
        }
        case Family::Free:
            return GroupElement::free_word(inst, free_reduce_concat(a.fw().word, b.fw().word));
        case Family::FreeAbelian: {
            std::vector<int64_t> c(a.zn().coords);
            for (size_t i = 0; i < c.size(); ++i) c[i] += b.zn().coords[i];
            return GroupElement::zn(inst, std::move(c));
        }
    }
    throw ValidationError("unreachable family");
}

GroupElement inv(const GroupElement& g) {
    const GroupInstance& inst = g.instance();
    switch (inst.family) {
        case Family::Lamplighter: {
            const auto& d = g.lamp();
            std::vector<int64_t> lamps(d.lamps);
            for (auto& p : lamps) p += d.shift;
            return GroupElement::lamplighter(std::move(lamps), -d.shift);
        }
        case Family::BaumslagSolitar: {
            const auto& d = g.bs();
            // (k, q)^{-1} = (-k, -q n^{-k})
            Int num = -d.num;
            int64_t e = static_cast<int64_t>(d.denom_exp) + d.tpow;
            if (e < 0) {
                num *= pow_int(inst.bs_base, -e);
                e = 0;
            }
            return GroupElement::bs(inst, -d.tpow, std::move(num), static_cast<uint32_t>(e));
        }
        case Family::Free: {
            std::vector<int32_t> w(g.fw().word.rbegin(), g.fw().word.rend());
            for (auto& c : w) c = -c;
            return GroupElement::free_word(inst, std::move(w));
        }
        case Family::FreeAbelian: {
            std::vector<int64_t> c(g.zn().coords);
            for (auto& v : c) v = -v;
            return GroupElement::zn(inst, std::move(c));
        }
    }
    throw ValidationError("unreachable family");
}

GroupElement power(const GroupElement& g, int64_t e) {
    GroupElement base = e < 0 ? inv(g) : g;
    uint64_t k = e < 0 ? static_cast<uint64_t>(-e) : static_cast<uint64_t>(e);
    GroupElement acc = GroupElement::identity(g.instance());
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

GroupElement conjugate(const GroupElement& h, const GroupElement& g) {
    return mul(mul(h, g), inv(h));
}

GroupElement commutator(const GroupElement& g, const GroupElement& h) {
    return mul(mul(g, h), mul(inv(g), inv(h)));
}

GroupElement gen_a(const GroupInstance& inst) {
    switch (inst.family) {
        case Family::Lamplighter: return GroupElement::lamplighter({0}, 0);
        case Family::BaumslagSolitar: return GroupElement::bs(inst, 0, 1, 0);
        default: throw ValidationError("gen_a: not an HNN family");
    }
}

GroupElement gen_t(const GroupInstance& inst) {
    switch (inst.family) {
        case Family::Lamplighter: return GroupElement::lamplighter({}, 1);
        case Family::BaumslagSolitar: return GroupElement::bs(inst, 1, 0, 0);
        default: throw ValidationError("gen_t: not an HNN family");
    }
}

GroupElement lamp_at(const GroupInstance& inst, int64_t pos) {
    if (inst.family != Family::Lamplighter) throw ValidationError("lamp_at: not a lamplighter");
    return GroupElement::lamplighter({pos}, 0);
}

GroupElement free_gen(const GroupInstance& inst, int index) {
    if (inst.family != Family::Free || index < 0 || index >= inst.rank)
        throw ValidationError("free_gen: bad index");
    return GroupElement::free_word(inst, {static_cast<int32_t>(index + 1)});
}

GroupElement zn_basis(const GroupInstance& inst, int index) {
    if (inst.family != Family::FreeAbelian || index < 0 || index >= inst.rank)
        throw ValidationError("zn_basis: bad index");
    std::vector<int64_t> c(inst.rank, 0);
    c[index] = 1;
    return GroupElement::zn(inst, std::move(c));
}

std::vector<GroupElement> standard_generators(const GroupInstance& inst) {
    switch (inst.family) {
        case Family::Lamplighter:
        case Family::BaumslagSolitar: return {gen_a(inst), gen_t(inst)};
        case Family::Free: {
            std::vector<GroupElement> gens;
            for (int i = 0; i < inst.rank; ++i) gens.push_back(free_gen(inst, i));
            return gens;
        }
        case Family::FreeAbelian: {
            std::vector<GroupElement> gens;
            for (int i = 0; i < inst.rank; ++i) gens.push_back(zn_basis(inst, i));
            return gens;
        }
    }
    return {};
}

GroupElement parse_element(const GroupInstance& inst, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s == "e" || s == "id") return GroupElement::identity(inst);

    auto field = [&](const std::string& name) -> std::string {
        for (const auto& part : split(s, ';')) {
            if (part.rfind(name + "=", 0) == 0) return part.substr(name.size() + 1);
        }
        throw ValidationError("element '" + text + "' is missing field '" + name +
                              "' for " + inst.name());
    };

    switch (inst.family) {
        case Family::Lamplighter: {
            std::vector<int64_t> lamps;
            std::string ls = field("lamps");
            if (!ls.empty())
                for (const auto& p : split(ls, ',')) lamps.push_back(to_i64(p));
            std::sort(lamps.begin(), lamps.end());
            check_lamps_sorted(lamps);
            return GroupElement::lamplighter(std::move(lamps), to_i64(field("shift")));
        }
        case Family::BaumslagSolitar: {
            int64_t k = to_i64(field("k"));
            Rat q = rat_from_string(field("q"));
            // denominator must be a power of the base
            Int den = denominator(q), num = numerator(q);
            uint32_t e = 0;
            const Int base = inst.bs_base;
            while (den > 1) {
                if (den % base != 0)
                    throw ValidationError("q denominator must be a power of " +
                                          std::to_string(inst.bs_base));
                den /= base;
                ++e;
            }
            return GroupElement::bs(inst, k, std::move(num), e);
        }
        case Family::Free: {
            std::string ws = field("word");
            std::vector<int32_t> word;
            for (char c : ws) {
                int32_t letter;
                if (c >= 'a' && c <= 'z') letter = c - 'a' + 1;
                else if (c >= 'A' && c <= 'Z') letter = -(c - 'A' + 1);
                else throw ValidationError(std::string("bad word letter '") + c + "'");
                word.push_back(letter);
            }
            return GroupElement::free_word(inst, std::move(word));
        }
        case Family::FreeAbelian: {
            std::vector<int64_t> coords;
            std::string cs = field("coords");
            if (!cs.empty())
                for (const auto& p : split(cs, ',')) coords.push_back(to_i64(p));
            return GroupElement::zn(inst, std::move(coords));
        }
    }
    throw ValidationError("unreachable family");
}

}  // namespace pptlab
