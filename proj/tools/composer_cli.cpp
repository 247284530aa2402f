#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "composer/delta.hpp"
#include "composer/modelgen.hpp"
#include "composer/report.hpp"
#include "composer/verify.hpp"

using namespace composer;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write " + path);
    out << text;
    if (!out) fail("cannot write " + path);
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    std::size_t at = 0;
    while (at <= text.size()) {
        std::size_t end = text.find(',', at);
        if (end == std::string::npos) end = text.size();
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(text.substr(at, end - at), &used);
        } catch (const std::exception&) {
            fail("not an integer list: " + text);
        }
        if (used != end - at) fail("not an integer list: " + text);
        out.push_back(v);
        at = end + 1;
        if (end == text.size()) break;
    }
    if (out.empty()) fail("not an integer list: " + text);
    return out;
}

std::vector<std::vector<int>> parse_blocks(const std::string& text) {
    std::vector<std::vector<int>> out;
    std::size_t at = 0;
    while (at <= text.size()) {
        std::size_t end = text.find('|', at);
        if (end == std::string::npos) end = text.size();
        out.push_back(parse_ints(text.substr(at, end - at)));
        at = end + 1;
        if (end == text.size()) break;
    }
    return out;
}

DetCondition parse_condition(const std::string& text) {
    std::size_t dot = text.find('.');
    if (dot == std::string::npos) fail("condition must look like p,q.m: " + text);
    std::vector<int> pq = parse_ints(text.substr(0, dot));
    std::vector<int> m = parse_ints(text.substr(dot + 1));
    if (pq.size() != 2 || m.size() != 1)
        fail("condition must look like p,q.m: " + text);
    DetCondition c{pq[0], pq[1], m[0]};
    validate(c);
    return c;
}

std::string join_ints(const std::vector<int>& vals) {
    std::ostringstream oss;
    for (std::size_t p = 0; p < vals.size(); ++p)
        oss << (p ? "," : "") << vals[p];
    return oss.str();
}

std::string map_str(const MonotoneMap& f) {
    return "(" + join_ints(f.vals) + ") -> [" + std::to_string(f.cod_size - 1) + "]";
}

std::string map_str(const StrictMap& f) {
    return "(" + join_ints(f.vals) + ") -> [" + std::to_string(f.cod_size - 1) + "]";
}

std::string row_str(const VTuple& t) {
    std::ostringstream oss;
    oss << "(";
    for (std::size_t p = 0; p < t.size(); ++p) oss << (p ? "," : "") << t[p];
    oss << ")";
    return oss.str();
}

std::string blocks_str(const std::vector<std::vector<int>>& blocks) {
    std::ostringstream oss;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        oss << (b ? "|" : "") << join_ints(blocks[b]);
    return oss.str();
}

std::string echo_command(int argc, char** argv) {
    std::ostringstream oss;
    for (int a = 1; a < argc; ++a) oss << (a > 1 ? " " : "") << argv[a];
    return oss.str();
}

int emit(const Report& rep, const std::optional<RelationFile>& payload,
         const std::string& out_path, const std::string& format) {
    if (payload && !out_path.empty()) spill(out_path, to_json(*payload));
    bool inline_payload = payload && out_path.empty();
    if (format == "json")
        std::cout << (inline_payload ? to_json(rep, *payload) : to_json(rep));
    else
        std::cout << (inline_payload ? to_text(rep, *payload) : to_text(rep));
    return rep.ok ? 0 : 1;
}

int run(int argc, char** argv) {
    CLI::App app{"composer-kit: build and check set models with unique horn filling"};
    app.require_subcommand(1);
    std::string format = "text";
    int jobs = 1;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--jobs", jobs, "threads for the check sweeps")
        ->check(CLI::PositiveNumber);

    auto* enlarge_cmd =
        app.add_subcommand("enlarge", "close a relation over an anchor row");
    enlarge_cmd->fallthrough();
    std::string efile, eout;
    int eanchor = 0, en = 0, ei = 0;
    enlarge_cmd->add_option("file", efile, "relation file")->required();
    enlarge_cmd->add_option("--anchor", eanchor, "anchor row index in file order");
    enlarge_cmd->add_option("--n", en, "simplex dimension")->required();
    enlarge_cmd->add_option("--i", ei, "slot")->required();
    enlarge_cmd->add_option("--out", eout, "write the enlarged relation here");

    auto* verify_cmd = app.add_subcommand(
        "verify", "check horn filling on a relation file or a standard simplex");
    verify_cmd->fallthrough();
    std::string vfile;
    int vsimplex = -1, vn = 0, vi = -1, vdepth = 2;
    bool vhyper = false;
    verify_cmd->add_option("file", vfile, "relation file");
    verify_cmd->add_option("--simplex", vsimplex,
                           "check the standard simplex of this dimension");
    verify_cmd->add_option("--n", vn, "model dimension")->required();
    verify_cmd->add_option("--i", vi, "slot");
    verify_cmd->add_option("--depth", vdepth, "levels above n to sweep")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--hypergroupoid", vhyper, "check every slot");

    auto* count_cmd =
        app.add_subcommand("count", "simplices of the model image complex");
    count_cmd->fallthrough();
    int cn = 0;
    count_cmd->add_option("--n", cn, "simplex dimension")->required();

    auto* model_cmd =
        app.add_subcommand("model", "generate a block model with unique fillers");
    model_cmd->fallthrough();
    int mn = 0, mblocks = 0;
    std::string mout;
    model_cmd->add_option("--n", mn, "simplex dimension")->required();
    model_cmd->add_option("--blocks", mblocks, "number of blocks")->required();
    model_cmd->add_option("--out", mout, "write the model here");

    auto* delta_cmd = app.add_subcommand("delta", "monotone map tools");
    delta_cmd->fallthrough();
    delta_cmd->require_subcommand(1);
    std::string d_map, d_map2;
    int d_cod = 0, d_i = 0, d_j = 0;
    auto* cpl = delta_cmd->add_subcommand("complement",
                                          "paired vertex function of a map");
    cpl->fallthrough();
    cpl->add_option("map", d_map, "values, comma separated")->required();
    cpl->add_option("cod", d_cod, "codomain top")->required();
    auto* sum = delta_cmd->add_subcommand(
        "sum-split", "factor two strict maps through their meet");
    sum->fallthrough();
    sum->add_option("g", d_map, "first image set")->required();
    sum->add_option("g2", d_map2, "second image set")->required();
    auto* hist = delta_cmd->add_subcommand("histogram", "fiber counts of a map");
    hist->fallthrough();
    hist->add_option("map", d_map, "values, comma separated")->required();
    hist->add_option("cod", d_cod, "codomain top")->required();
    auto* recon = delta_cmd->add_subcommand(
        "reconstruct", "monotone map with the given fiber counts");
    recon->fallthrough();
    recon->add_option("counts", d_map, "fiber counts, comma separated")->required();
    std::vector<std::string> d_conds;
    auto* rules = delta_cmd->add_subcommand(
        "rules-closure", "close determinacy conditions under the rules");
    rules->fallthrough();
    rules->add_option("conditions", d_conds, "conditions like 2,5.7")->required();
    std::string d_lam2;
    auto* trio = delta_cmd->add_subcommand(
        "comb-trio", "trios containing two complementary pairs");
    trio->fallthrough();
    trio->add_option("mu", d_map, "first pair mu")->required();
    trio->add_option("lam", d_map2, "first pair lam")->required();
    trio->add_option("mu2", d_lam2, "second pair mu")->required();
    std::string d_lam3;
    trio->add_option("lam2", d_lam3, "second pair lam")->required();
    auto* subp = delta_cmd->add_subcommand(
        "subpartition", "blocks selected from an ordered partition");
    subp->fallthrough();
    subp->add_option("blocks", d_map, "blocks like 0,1|2|3,4")->required();
    subp->add_option("select", d_map2, "block indices")->required();
    auto* ph = delta_cmd->add_subcommand(
        "partition-h", "pairwise position map of two blocks");
    ph->fallthrough();
    ph->add_option("blocks", d_map, "blocks like 0,1|2|3,4")->required();
    ph->add_option("i", d_i, "first block")->required();
    ph->add_option("j", d_j, "second block")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command = echo_command(argc, argv);
    Report rep;
    rep.command = command;
    std::optional<RelationFile> payload;
    std::string out_path;

    if (app.got_subcommand(enlarge_cmd)) {
        RelationFile in = relation_from_json(slurp(efile));
        Relation r = to_relation(in);
        if (en + 1 != r.arity()) fail("enlarge: --n does not match the file arity");
        if (eanchor < 0 || eanchor >= static_cast<int>(in.rows.size()))
            fail("enlarge: anchor row not found");
        Relation grown = enlarge(r, in.rows[eanchor], required_conditions(en, ei));
        CheckRecord rec{"enlarge", en, ei, "pass",
                        static_cast<long long>(grown.rows.size()), 0, {}};
        rec.witnesses.push_back("anchor " + row_str(in.rows[eanchor]));
        for (const VTuple& t : grown.rows)
            if (!r.rows.count(t)) rec.witnesses.push_back("added " + row_str(t));
        rep.records.push_back(std::move(rec));
        rep.work = static_cast<long long>(grown.rows.size());
        payload = from_relation(grown);
        out_path = eout;
    } else if (app.got_subcommand(verify_cmd)) {
        TruncatedComplex C;
        if (!vfile.empty() && vsimplex >= 0)
            fail("verify: give a file or --simplex, not both");
        if (!vfile.empty())
            C = coskeleton(generate_complex(to_relation(relation_from_json(slurp(vfile)))),
                           vn + vdepth);
        else if (vsimplex >= 0)
            C = standard_simplex_complex(vsimplex, vn + vdepth);
        else
            fail("verify: needs a relation file or --simplex");
        CheckReport result;
        if (vhyper) {
            result = check_hypergroupoid(C, vn, vdepth, jobs);
        } else {
            if (vi < 0) fail("verify: needs --i unless --hypergroupoid");
            result = check_truncated_composer(C, vn, vi, vdepth, jobs);
        }
        rep = make_report(command, result);
    } else if (app.got_subcommand(count_cmd)) {
        long long total = simplex_count(cn);
        rep.records.push_back({"count", cn, -1, "pass", total, 0, {}});
        rep.work = total;
    } else if (app.got_subcommand(model_cmd)) {
        Relation model = hypergroupoid_blocks(mn, mblocks);
        for (int slot = 0; slot <= mn + 1; ++slot) {
            CheckRecord rec{"screen det", mn, slot, "pass",
                            static_cast<long long>(model.rows.size()), 0, {}};
            auto bad = find_det_failure(model.rows, required_conditions(mn, slot));
            if (bad) {
                rec.status = "fail";
                rec.failed = 1;
                rec.witnesses.push_back("condition " + to_string(bad->condition));
            }
            rep.ok = rep.ok && !bad;
            rep.work += rec.checked;
            rep.records.push_back(std::move(rec));
        }
        for (OverlapMode mode : {OverlapMode::slot_zero, OverlapMode::slot_top}) {
            CheckRecord rec{mode == OverlapMode::slot_zero ? "overlap slot=0"
                                                           : "overlap slot=top",
                            mn, -1, "pass",
                            static_cast<long long>(model.rows.size()), 0, {}};
            OverlapReport over = model_check_overlap(model, mode);
            if (!over.ok) {
                rec.status = "fail";
                rec.failed = 1;
                if (over.witness)
                    rec.witnesses.push_back(row_str(over.witness->first) + " vs " +
                                            row_str(over.witness->second));
            }
            rep.ok = rep.ok && over.ok;
            rep.work += rec.checked;
            rep.records.push_back(std::move(rec));
        }
        if (rep.ok) {
            payload = from_relation(model);
            out_path = mout;
        }
    } else if (app.got_subcommand(delta_cmd)) {
        CheckRecord rec{"", 0, -1, "pass", 1, 0, {}};
        if (delta_cmd->got_subcommand(cpl)) {
            MonotoneMap lam{parse_ints(d_map), d_cod + 1};
            MonotoneMap mu = complement(lam);
            rec.check = "delta complement";
            rec.dimension = lam.dom_size() + mu.dom_size() - 1;
            rec.witnesses.push_back("lam=" + map_str(lam));
            rec.witnesses.push_back("mu=" + map_str(mu));
        } else if (delta_cmd->got_subcommand(sum)) {
            std::vector<int> gv = parse_ints(d_map), g2v = parse_ints(d_map2);
            int cod = 0;
            for (int v : gv) cod = std::max(cod, v + 1);
            for (int v : g2v) cod = std::max(cod, v + 1);
            SumSplit split = sum_split(StrictMap{gv, cod}, StrictMap{g2v, cod});
            rec.check = "delta sum-split";
            rec.dimension = cod - 1;
            rec.witnesses.push_back("f=" + map_str(split.f));
            rec.witnesses.push_back("f2=" + map_str(split.f2));
            rec.witnesses.push_back("h=" + map_str(split.h));
        } else if (delta_cmd->got_subcommand(hist)) {
            MonotoneMap f{parse_ints(d_map), d_cod + 1};
            validate(f);
            rec.check = "delta histogram";
            rec.dimension = d_cod;
            rec.witnesses.push_back("counts=(" + join_ints(histogram(f)) + ")");
        } else if (delta_cmd->got_subcommand(recon)) {
            MonotoneMap f = reconstruct(parse_ints(d_map));
            rec.check = "delta reconstruct";
            rec.dimension = f.cod_size - 1;
            rec.witnesses.push_back("map=" + map_str(f));
        } else if (delta_cmd->got_subcommand(rules)) {
            std::set<DetCondition> conds;
            for (const std::string& c : d_conds) conds.insert(parse_condition(c));
            std::set<DetCondition> closed = rules_closure(conds);
            rec.check = "delta rules-closure";
            for (const DetCondition& c : closed) {
                rec.dimension = std::max(rec.dimension, c.m);
                rec.witnesses.push_back(to_string(c));
            }
            rec.checked = static_cast<long long>(closed.size());
        } else if (delta_cmd->got_subcommand(trio)) {
            std::vector<int> mu1 = parse_ints(d_map), lam1 = parse_ints(d_map2);
            std::vector<int> mu2 = parse_ints(d_lam2), lam2 = parse_ints(d_lam3);
            VertexPair p1{{mu1, static_cast<int>(lam1.size()) + 1},
                          {lam1, static_cast<int>(mu1.size()) + 1}};
            VertexPair p2{{mu2, static_cast<int>(lam2.size()) + 1},
                          {lam2, static_cast<int>(mu2.size()) + 1}};
            std::vector<CombTrio> trios = comb_trio_from_pairs(p1, p2);
            rec.check = "delta comb-trio";
            rec.checked = static_cast<long long>(trios.size());
            for (const CombTrio& t : trios) {
                rec.dimension = t.m;
                rec.witnesses.push_back("X=(" + join_ints(t.X) + ") A=(" +
                                        join_ints(t.A) + ") A2=(" +
                                        join_ints(t.A2) + ")");
            }
        } else if (delta_cmd->got_subcommand(subp)) {
            std::vector<std::vector<int>> blocks = parse_blocks(d_map);
            int total = 0;
            for (const auto& b : blocks) total += static_cast<int>(b.size());
            OrderedPartition part{total - 1, blocks};
            OrderedPartition out = subpartition(part, parse_ints(d_map2));
            rec.check = "delta subpartition";
            rec.dimension = out.m;
            rec.witnesses.push_back(blocks_str(out.blocks));
        } else {
            std::vector<std::vector<int>> blocks = parse_blocks(d_map);
            int total = 0;
            for (const auto& b : blocks) total += static_cast<int>(b.size());
            OrderedPartition part{total - 1, blocks};
            StrictMap h = partition_h(part, d_i, d_j);
            rec.check = "delta partition-h";
            rec.dimension = part.m;
            rec.witnesses.push_back("h=" + map_str(h));
        }
        rep.work = rec.checked;
        rep.records.push_back(std::move(rec));
    }
    return emit(rep, payload, out_path, format);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
