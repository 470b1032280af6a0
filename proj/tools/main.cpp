#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "pptlab/json_io.hpp"

using namespace pptlab;

namespace {

struct GroupFlags {
    std::string family;
    int n = 2;
    int rank = 2;
    int dim = 2;
};

void add_group_flags(CLI::App* cmd, GroupFlags& f) {
    cmd->add_option("--group", f.family, "group family: lamplighter|bs|free|zn")->required();
    cmd->add_option("--n", f.n, "base n for bs (default 2)");
    cmd->add_option("--rank", f.rank, "rank for free (default 2)");
    cmd->add_option("--dim", f.dim, "dimension for zn (default 2)");
}

GroupInstance make_instance(const GroupFlags& f) {
    return instance_from_config(f.family, f.n, f.rank, f.dim);
}

struct OutFlags {
    std::string format = "json";
    std::string out;
};

void add_out_flags(CLI::App* cmd, OutFlags& f) {
    cmd->add_option("--format", f.format, "json|csv|text (default json)")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", f.out, "output path (default stdout)");
}

void add_common(CLI::App* cmd, OutFlags& out, int& threads) {
    add_out_flags(cmd, out);
    cmd->add_option("--threads", threads, "worker cap (the sequential core ignores it)")
        ->check(CLI::PositiveNumber);
    cmd->fallthrough();  // lets --config appear after the subcommand name
}

void emit(const OutFlags& f, const std::string& payload) {
    if (f.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream os(f.out);
    if (!os) throw ValidationError("cannot open output path " + f.out);
    os << payload;
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

void emit_json_only(const OutFlags& f, const Json& j) {
    if (f.format != "json")
        throw ValidationError("format '" + f.format + "' is not available for this report");
    emit(f, render_json(j));
}

std::vector<GroupElement> parse_gens(const GroupInstance& inst,
                                     const std::vector<std::string>& words) {
    std::vector<GroupElement> gens;
    for (const auto& w : words) gens.push_back(parse_element(inst, w));
    if (gens.empty()) gens = standard_generators(inst);
    return gens;
}

std::vector<Rat> parse_r_grid(const std::string& csv) {
    std::vector<Rat> grid;
    std::string cur;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!cur.empty()) grid.push_back(rat_from_string(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return grid;
}

ProductAction make_product(const GroupInstance& inst, const std::vector<std::string>& spaces) {
    std::vector<ActionHandle> factors;
    for (const auto& s : spaces) factors.push_back(action_from_config(inst, s));
    return ProductAction(std::move(factors));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ppt-lab: exact group actions on trees, the hyperbolic plane and quasi-lines"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "config file with a [subcommand] section of key=value pairs; flags win");
    app.allow_config_extras(CLI::config_extras_mode::error);

    // nf
    GroupFlags nf_group;
    OutFlags nf_out;
    int nf_threads = 1;
    std::string nf_element, nf_side = "right";
    auto* nf_cmd = app.add_subcommand("nf", "HNN normal form of an element");
    add_group_flags(nf_cmd, nf_group);
    add_common(nf_cmd, nf_out, nf_threads);
    nf_cmd->add_option("--element", nf_element, "element text")->required();
    nf_cmd->add_option("--side", nf_side, "right|left (lamplighter structures)")
        ->check(CLI::IsMember({"right", "left"}));

    // disp
    GroupFlags disp_group;
    OutFlags disp_out;
    int disp_threads = 1;
    std::string disp_element, disp_space, disp_phi;
    auto* disp_cmd = app.add_subcommand("disp", "displacement of the basepoint");
    add_group_flags(disp_cmd, disp_group);
    add_common(disp_cmd, disp_out, disp_threads);
    disp_cmd->add_option("--element", disp_element)->required();
    disp_cmd->add_option("--space", disp_space, "t1|t2|tn|cayley|h2|line:<phi>")->required();
    disp_cmd->add_option("--phi", disp_phi, "quasi-line functional, e.g. 1,-1");

    // busemann
    GroupFlags bus_group;
    OutFlags bus_out;
    int bus_threads = 1;
    std::string bus_element, bus_space, bus_phi;
    auto* bus_cmd = app.add_subcommand("busemann", "Busemann value at the fixed end");
    add_group_flags(bus_cmd, bus_group);
    add_common(bus_cmd, bus_out, bus_threads);
    bus_cmd->add_option("--element", bus_element)->required();
    bus_cmd->add_option("--space", bus_space)->required();
    bus_cmd->add_option("--phi", bus_phi);

    // classify
    GroupFlags cls_group;
    OutFlags cls_out;
    int cls_threads = 1;
    std::string cls_space, cls_phi;
    std::vector<std::string> cls_gens;
    int cls_W = 4;
    auto* cls_cmd = app.add_subcommand("classify", "five-type classification of a subgroup action");
    add_group_flags(cls_cmd, cls_group);
    add_common(cls_cmd, cls_out, cls_threads);
    cls_cmd->add_option("--space", cls_space)->required();
    cls_cmd->add_option("--phi", cls_phi);
    cls_cmd->add_option("--gen", cls_gens, "subgroup generators (default: standard)");
    cls_cmd->add_option("--W", cls_W, "enumeration depth (default 4)");

    // tits
    GroupFlags tits_group;
    OutFlags tits_out;
    int tits_threads = 1;
    std::vector<std::string> tits_spaces, tits_gens;
    int tits_W = 4;
    auto* tits_cmd = app.add_subcommand("tits", "trichotomy report for a diagonal action");
    add_group_flags(tits_cmd, tits_group);
    add_common(tits_cmd, tits_out, tits_threads);
    tits_cmd->add_option("--space", tits_spaces, "factor spaces")->required();
    tits_cmd->add_option("--gen", tits_gens, "subgroup generators (default: standard)");
    tits_cmd->add_option("--W", tits_W);

    // audit
    GroupFlags audit_group;
    OutFlags audit_out;
    int audit_threads = 1;
    std::vector<std::string> audit_spaces, audit_gens;
    int audit_L = 8, audit_delta = 2;
    int64_t audit_budget = 2'000'000;
    std::string audit_r = "0,1,2,3";
    auto* audit_cmd = app.add_subcommand("audit", "properness audit of a diagonal action");
    add_group_flags(audit_cmd, audit_group);
    add_common(audit_cmd, audit_out, audit_threads);
    audit_cmd->add_option("--space", audit_spaces, "factor spaces")->required();
    audit_cmd->add_option("--gen", audit_gens);
    audit_cmd->add_option("--L", audit_L, "enumeration radius (default 8)");
    audit_cmd->add_option("--r", audit_r, "displacement thresholds, e.g. 0,1,2,3");
    audit_cmd->add_option("--delta", audit_delta, "stability window (default 2)");
    audit_cmd->add_option("--budget", audit_budget, "ball element budget");

    // confining
    OutFlags conf_out;
    int conf_threads = 1;
    int conf_r0 = 4, conf_window = 32, conf_lamps = 2, conf_N = 40, conf_n0max = 8;
    bool conf_reversed = false;
    auto* conf_cmd =
        app.add_subcommand("confining", "confining-subset check on the lamplighter instance");
    add_common(conf_cmd, conf_out, conf_threads);
    conf_cmd->add_option("--r0", conf_r0, "radius of A = {T1 displacement <= r0} (default 4)");
    conf_cmd->add_option("--window", conf_window, "support window (default 32)");
    conf_cmd->add_option("--max-lamps", conf_lamps, "lamp-count cap (default 2)");
    conf_cmd->add_option("--N", conf_N, "condition-2 iteration bound (default 40)");
    conf_cmd->add_option("--n0max", conf_n0max, "condition-3 scan bound (default 8)");
    conf_cmd->add_flag("--reversed", conf_reversed, "use conjugation by t^-1 instead of t");

    // rank-obstruction
    OutFlags rank_out;
    int rank_threads = 1;
    std::string rank_matrix;
    auto* rank_cmd = app.add_subcommand("rank-obstruction",
                                        "exact nullvector and boundedness check");
    add_common(rank_cmd, rank_out, rank_threads);
    rank_cmd->add_option("--matrix", rank_matrix, "rows ';', entries ',', e.g. 1,-1;0,2")
        ->required();

    // pingpong
    GroupFlags pp_group;
    OutFlags pp_out;
    int pp_threads = 1;
    std::string pp_space, pp_phi, pp_g, pp_h;
    int pp_N = 2, pp_W = 8;
    auto* pp_cmd = app.add_subcommand("pingpong", "free-subgroup certificate or refusal");
    pp_cmd->set_help_flag("--help", "print help");  // frees -h for the element flag
    add_group_flags(pp_cmd, pp_group);
    add_common(pp_cmd, pp_out, pp_threads);
    pp_cmd->add_option("--space", pp_space)->required();
    pp_cmd->add_option("--phi", pp_phi);
    pp_cmd->add_option("--g", pp_g)->required();
    pp_cmd->add_option("--h", pp_h)->required();
    pp_cmd->add_option("--N", pp_N, "power (default 2)");
    pp_cmd->add_option("--W", pp_W, "syllable length bound (default 8)");

    // growth
    GroupFlags gr_group;
    OutFlags gr_out;
    int gr_threads = 1;
    std::vector<std::string> gr_gens;
    int gr_L = 6;
    int64_t gr_budget = 2'000'000;
    auto* gr_cmd = app.add_subcommand("growth", "ball sizes and exponential-growth flag");
    add_group_flags(gr_cmd, gr_group);
    add_common(gr_cmd, gr_out, gr_threads);
    gr_cmd->add_option("--gen", gr_gens);
    gr_cmd->add_option("--L", gr_L, "maximal radius (default 6)");
    gr_cmd->add_option("--budget", gr_budget);

    // stabilizer
    GroupFlags st_group;
    OutFlags st_out;
    int st_threads = 1;
    std::string st_space, st_phi;
    std::vector<std::string> st_elements;
    auto* st_cmd = app.add_subcommand("stabilizer", "pigeonhole stabilizer extraction");
    add_group_flags(st_cmd, st_group);
    add_common(st_cmd, st_out, st_threads);
    st_cmd->add_option("--space", st_space)->required();
    st_cmd->add_option("--phi", st_phi);
    st_cmd->add_option("--element", st_elements, "input elements")->required();

    // oracle-check
    GroupFlags oc_group;
    OutFlags oc_out;
    int oc_threads = 1;
    std::string oc_space, oc_export;
    int oc_radius = 6, oc_depth = -1;
    int64_t oc_budget = 4'000'000;
    auto* oc_cmd = app.add_subcommand(
        "oracle-check", "closed-form displacements against coset-graph BFS distances");
    add_group_flags(oc_cmd, oc_group);
    add_common(oc_cmd, oc_out, oc_threads);
    oc_cmd->add_option("--space", oc_space, "a tree space: t1|t2|tn|cayley")->required();
    oc_cmd->add_option("--ball-radius", oc_radius, "word-metric ball radius (default 6)");
    oc_cmd->add_option("--depth", oc_depth, "graph depth (default: ball radius)");
    oc_cmd->add_option("--export-edges", oc_export, "write the edge list to this path");
    oc_cmd->add_option("--budget", oc_budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (nf_cmd->parsed()) {
            GroupInstance inst = make_instance(nf_group);
            GroupElement g = parse_element(inst, nf_element);
            HnnNormalForm nf;
            if (inst.family == Family::Lamplighter)
                nf = nf_side == "left" ? lamplighter_nf_left(g) : lamplighter_nf_right(g);
            else if (inst.family == Family::BaumslagSolitar)
                nf = bs_normal_form(g);
            else
                throw ValidationError("nf supports the lamplighter and bs families");
            Json j = make_report("nf");
            j["group"] = inst.name();
            j["element"] = g.str();
            Json body = normal_form_json(nf);
            for (auto& [k, v] : body.items()) j[k] = v;
            emit_json_only(nf_out, j);
            return 0;
        }
        if (disp_cmd->parsed()) {
            GroupInstance inst = make_instance(disp_group);
            ActionHandle act = action_from_config(inst, disp_space, disp_phi);
            GroupElement g = parse_element(inst, disp_element);
            Json j = make_report("disp");
            j["group"] = inst.name();
            j["space"] = act.space_name();
            j["element"] = g.str();
            j["value"] = json_double(displacement(act, g));
            if (act.metric_exact()) j["exact"] = rat_to_string(exact_displacement(act, g));
            emit_json_only(disp_out, j);
            return 0;
        }
        if (bus_cmd->parsed()) {
            GroupInstance inst = make_instance(bus_group);
            ActionHandle act = action_from_config(inst, bus_space, bus_phi);
            GroupElement g = parse_element(inst, bus_element);
            HoroEnd end = fixed_end(act);
            Busemann b = busemann(act, end, g);
            Json j = make_report("busemann");
            j["group"] = inst.name();
            j["space"] = act.space_name();
            j["element"] = g.str();
            j["end"] = end.description;
            j["orientation"] = end.orientation;
            j["value"] = json_double(b.value);
            if (b.exact) j["exact"] = rat_to_string(b.exact_value);
            j["raw"] = json_double(b.raw);
            emit_json_only(bus_out, j);
            return 0;
        }
        if (cls_cmd->parsed()) {
            GroupInstance inst = make_instance(cls_group);
            ActionHandle act = action_from_config(inst, cls_space, cls_phi);
            Classification c = classify_action(act, parse_gens(inst, cls_gens), cls_W);
            Json j = make_report("classify");
            j["group"] = inst.name();
            j["space"] = act.space_name();
            j["W"] = cls_W;
            Json body = classification_json(c);
            for (auto& [k, v] : body.items()) j[k] = v;
            emit_json_only(cls_out, j);
            return 0;
        }
        if (tits_cmd->parsed()) {
            GroupInstance inst = make_instance(tits_group);
            ProductAction p = make_product(inst, tits_spaces);
            TitsReport report = tits_report(p, parse_gens(inst, tits_gens), tits_W);
            Json j = tits_json(report);
            j["group"] = inst.name();
            emit_json_only(tits_out, j);
            return report.verdict == "undecided" ? 4 : 0;
        }
        if (audit_cmd->parsed()) {
            GroupInstance inst = make_instance(audit_group);
            ProductAction p = make_product(inst, audit_spaces);
            AuditParams params;
            params.L = audit_L;
            params.delta = audit_delta;
            params.budget = audit_budget;
            params.r_grid = parse_r_grid(audit_r);
            std::vector<GroupElement> gens = parse_gens(inst, audit_gens);
            std::vector<std::string> names =
                audit_gens.empty() ? standard_generator_names(inst) : audit_gens;
            AuditReport report = properness_audit(p, gens, params, names);
            for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
            if (audit_out.format == "csv")
                emit(audit_out, audit_csv(report));
            else if (audit_out.format == "text")
                emit(audit_out, audit_text(report));
            else
                emit(audit_out, render_json(audit_json(report)));
            return 0;
        }
        if (conf_cmd->parsed()) {
            ConfiningInstance inst = lamplighter_confining_instance(conf_r0, conf_window,
                                                                    conf_lamps, conf_reversed);
            ConfiningReport report = confining_check(inst, conf_N, conf_n0max);
            emit_json_only(conf_out, confining_json(report));
            return 0;
        }
        if (rank_cmd->parsed()) {
            auto r = rank_obstruction(parse_matrix(rank_matrix));
            emit_json_only(rank_out, rank_obstruction_json(r));
            return 0;
        }
        if (pp_cmd->parsed()) {
            GroupInstance inst = make_instance(pp_group);
            ActionHandle act = action_from_config(inst, pp_space, pp_phi);
            PingPongResult r = pingpong_certify(act, parse_element(inst, pp_g),
                                                parse_element(inst, pp_h), pp_N, pp_W);
            Json j = pingpong_json(r);
            j["group"] = inst.name();
            j["space"] = act.space_name();
            emit_json_only(pp_out, j);
            return 0;
        }
        if (gr_cmd->parsed()) {
            GroupInstance inst = make_instance(gr_group);
            GrowthSeries s = growth_series(parse_gens(inst, gr_gens), gr_L, gr_budget);
            if (gr_out.format == "csv") {
                emit(gr_out, growth_csv(s));
            } else {
                Json j = growth_json(s);
                j["group"] = inst.name();
                emit_json_only(gr_out, j);
            }
            return 0;
        }
        if (st_cmd->parsed()) {
            GroupInstance inst = make_instance(st_group);
            ActionHandle act = action_from_config(inst, st_space, st_phi);
            std::vector<GroupElement> elements;
            for (const auto& e : st_elements) elements.push_back(parse_element(inst, e));
            std::vector<GroupElement> stab = extract_stabilizer(act, elements);
            Json j = make_report("stabilizer");
            j["group"] = inst.name();
            j["space"] = act.space_name();
            Json out = Json::array();
            for (const auto& g : stab) out.push_back(g.str());
            j["elements"] = std::move(out);
            j["count"] = stab.size();
            emit_json_only(st_out, j);
            return 0;
        }
        if (oc_cmd->parsed()) {
            GroupInstance inst = make_instance(oc_group);
            ActionHandle act = action_from_config(inst, oc_space);
            if (!act.is_tree()) throw ValidationError("oracle-check needs a tree space");
            int depth = oc_depth < 0 ? oc_radius : oc_depth;
            CosetGraph graph = build_coset_graph(act, depth, oc_budget);
            if (!oc_export.empty()) {
                std::ofstream os(oc_export);
                if (!os) throw ValidationError("cannot open " + oc_export);
                write_edge_list(graph, os);
            }
            BallParams bp;
            bp.budget = oc_budget;
            Ball ball = enumerate_ball(standard_generators(inst), oc_radius, bp);
            Json mismatches = Json::array();
            for (const auto& g : ball.elements) {
                Rat closed = exact_displacement(act, g);
                auto bfs = oracle_distance(graph, g);
                if (!bfs || Rat(*bfs) != closed) {
                    Json m;
                    m["element"] = g.str();
                    m["closed_form"] = rat_to_string(closed);
                    m["oracle"] = bfs ? Json(*bfs) : Json(nullptr);
                    mismatches.push_back(std::move(m));
                }
            }
            Json j = make_report("oracle-check");
            j["group"] = inst.name();
            j["space"] = act.space_name();
            j["ball_radius"] = oc_radius;
            j["depth"] = depth;
            j["checked"] = ball.elements.size();
            j["graph_vertices"] = graph.vertex_count();
            j["agree"] = mismatches.empty();
            j["mismatches"] = mismatches;
            emit_json_only(oc_out, j);
            return mismatches.empty() ? 0 : 1;
        }
        throw ValidationError("no subcommand given");
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const UndeterminedError& e) {
        std::cerr << "undetermined: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
