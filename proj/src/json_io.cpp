#include "pptlab/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace pptlab {

double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

Json json_double(double x) { return Json(round12(x)); }

Json make_report(const std::string& kind) {
    Json j;
    j["schema"] = "ppt-lab/1";
    j["kind"] = kind;
    return j;
}

Json normal_form_json(const HnnNormalForm& nf) {
    Json j;
    switch (nf.structure) {
        case HnnStructure::LamplighterRight:
            j["structure"] = "lamplighter-right";
            j["k_R"] = nf.i;
            j["m_R"] = nf.j;
            break;
        case HnnStructure::LamplighterLeft:
            j["structure"] = "lamplighter-left";
            j["k_L"] = nf.i;
            j["m_L"] = nf.j;
            break;
        case HnnStructure::BsTree:
            j["structure"] = "bs";
            break;
    }
    j["i"] = nf.i;
    j["j"] = nf.j;
    j["stem"] = nf.stem.str();
    if (nf.structure != HnnStructure::BsTree) {
        Json idx = Json::array();
        for (int64_t u : stem_indices(nf)) idx.push_back(u);
        j["stem_indices"] = idx;
    }
    j["displacement"] = nf.displacement();
    j["reduced"] = is_reduced(nf);
    return j;
}

Json audit_json(const AuditReport& report) {
    Json j = make_report("audit");
    j["group"] = report.group;
    j["factors"] = report.factors;
    j["generators"] = report.generators;
    j["L"] = report.L;
    j["delta"] = report.delta;
    j["exact"] = report.exact;
    if (!report.exact) j["tol"] = json_double(report.tol);
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json r;
        r["r"] = rat_to_string(row.r);
        r["count"] = row.count;
        r["count_shrunk"] = row.count_shrunk;
        r["stable"] = row.stable;
        if (row.predicted) r["predicted"] = *row.predicted;
        if (!report.exact) r["borderline"] = row.borderline;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["witnesses"] = report.witnesses;
    j["min_positive_displacement"] = report.min_positive;
    j["verdict"] = report.verdict;
    if (report.family) {
        j["family"] = Json{{"generator", report.family->generator},
                           {"description", report.family->description}};
    } else {
        j["family"] = nullptr;
    }
    j["warnings"] = report.warnings;
    return j;
}

std::string audit_csv(const AuditReport& report) {
    std::ostringstream os;
    os << "r,count,count_shrunk,stable,predicted\n";
    for (const auto& row : report.rows) {
        os << rat_to_string(row.r) << ',' << row.count << ',' << row.count_shrunk << ','
           << (row.stable ? "true" : "false") << ',';
        if (row.predicted) os << *row.predicted;
        os << '\n';
    }
    return os.str();
}

std::string audit_text(const AuditReport& report) {
    std::ostringstream os;
    os << "properness audit: " << report.group << " on";
    for (const auto& f : report.factors) os << ' ' << f;
    os << "\nL = " << report.L << ", delta = " << report.delta
       << (report.exact ? ", exact arithmetic" : ", float tolerance") << "\n";
    os << "    r      N(r,L)  N(r,L-d)  stable  predicted\n";
    for (const auto& row : report.rows) {
        char line[128];
        std::string pred = row.predicted ? std::to_string(*row.predicted) : "-";
        std::snprintf(line, sizeof(line), "%5s %9lld %9lld  %-6s  %s\n",
                      rat_to_string(row.r).c_str(), static_cast<long long>(row.count),
                      static_cast<long long>(row.count_shrunk),
                      row.stable ? "yes" : "no", pred.c_str());
        os << line;
    }
    os << "verdict: " << report.verdict << "\n";
    if (report.family)
        os << "family:  " << report.family->description << "\n";
    return os.str();
}

Json classification_json(const Classification& c) {
    Json j;
    j["type"] = action_type_name(c.type);
    if (c.type == ActionType::Lineal) j["orientable"] = c.orientable;
    j["exact"] = c.exact;
    j["witnesses"] = c.witnesses;
    j["note"] = c.note;
    return j;
}

Json tits_json(const TitsReport& report) {
    Json j = make_report("tits");
    j["verdict"] = report.verdict;
    if (report.verdict == "virtually-abelian") j["rank_bound"] = report.rank_bound;
    Json types = Json::array();
    for (const auto& c : report.factor_types) types.push_back(classification_json(c));
    j["factor_types"] = std::move(types);
    if (report.certificate) j["certificate"] = pingpong_json(*report.certificate);
    if (!report.case3_alpha.empty()) {
        j["alpha"] = report.case3_alpha;
        j["detail"] = report.case3_detail;
    }
    return j;
}

Json confining_json(const ConfiningReport& report) {
    Json j = make_report("confining");
    j["instance"] = report.instance;
    j["window_size"] = report.window_size;
    j["a_size"] = report.a_size;
    j["condition1"] = Json{{"pass", report.cond1},
                           {"counterexample", report.cond1_counterexample}};
    j["condition2"] = Json{{"pass", report.cond2},
                           {"max_n", report.cond2_max_n},
                           {"failure", report.cond2_failure}};
    j["condition3"] = Json{{"pass", report.cond3}, {"n0", report.n0}};
    j["pass"] = report.pass();
    return j;
}

Json rank_obstruction_json(const std::optional<RankObstruction>& r) {
    Json j = make_report("rank-obstruction");
    if (!r) {
        j["found"] = false;
        return j;
    }
    j["found"] = true;
    Json z = Json::array();
    for (const auto& v : r->z) z.push_back(rat_to_string(v));
    j["z"] = std::move(z);
    j["K"] = rat_to_string(r->bound);
    j["family"] = r->family;
    j["verified_n"] = 100;
    return j;
}

Json pingpong_json(const PingPongResult& r) {
    Json j = make_report("pingpong");
    j["g"] = r.g_str;
    j["h"] = r.h_str;
    j["N"] = r.N;
    j["W"] = r.W;
    j["certified"] = r.certified;
    if (r.certified) {
        j["words_checked"] = r.words_checked;
    } else {
        j["refusal"] = r.refusal;
        j["common_end"] = r.common_end;
    }
    if (!r.end_evidence.empty()) j["end_evidence"] = r.end_evidence;
    return j;
}

Json growth_json(const GrowthSeries& s) {
    Json j = make_report("growth");
    j["sizes"] = s.sizes;
    j["exponential"] = s.exponential;
    j["margin"] = json_double(s.margin);
    return j;
}

std::string growth_csv(const GrowthSeries& s) {
    std::ostringstream os;
    os << "k,size\n";
    for (size_t k = 0; k < s.sizes.size(); ++k) os << k << ',' << s.sizes[k] << '\n';
    return os.str();
}

}  // namespace pptlab
