#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "composer/compose.hpp"

using namespace composer;

namespace {

std::mt19937 rng(20241002);

FundamentalTuple ft(int dim, std::vector<Label> es) {
    return FundamentalTuple{dim, std::move(es)};
}

Relation rel(std::vector<std::set<Label>> cols, std::set<VTuple> rows) {
    return Relation{std::move(cols), std::move(rows)};
}

Relation random_relation(int arity, int nrows, Label hi) {
    std::uniform_int_distribution<Label> d(0, hi);
    Relation r;
    r.columns.assign(arity, {});
    while (static_cast<int>(r.rows.size()) < nrows) {
        VTuple t(arity);
        for (auto& v : t) v = d(rng);
        r.rows.insert(std::move(t));
    }
    for (const VTuple& t : r.rows)
        for (int j = 0; j < arity; ++j) r.columns[j].insert(t[j]);
    return r;
}

/* simplex from explicit per-node vertex rows; nodes may exceed the
 * projections of the top */
SSimplex from_compact(int dim, std::vector<std::set<Label>> sig,
                      CompactTable ct) {
    SSimplex y;
    y.dim = dim;
    y.fsig = std::move(sig);
    for (const auto& [W, rows] : ct) {
        std::set<FundamentalTuple> ts;
        for (const VTuple& t : rows) ts.insert(h_map(t));
        y.nodes[W] = std::move(ts);
    }
    y.compact = std::move(ct);
    validate(y);
    return y;
}

VTuple drop(const VTuple& t, int p) {
    VTuple u(t);
    u.erase(u.begin() + p);
    return u;
}

std::vector<VTuple> all_rows(const std::vector<std::set<Label>>& sig) {
    std::vector<VTuple> out{{}};
    for (const auto& col : sig) {
        std::vector<VTuple> next;
        for (const VTuple& t : out)
            for (Label v : col) {
                VTuple u = t;
                u.push_back(v);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    return out;
}

/* the three-row relation whose (1,4) fillers all land back inside */
Relation det_example() {
    return rel({{0}, {1, 8}, {2}, {3, 7}, {4}, {5, 9}, {6}},
               {{0, 1, 2, 3, 4, 5, 6},
                {0, 1, 2, 7, 4, 5, 6},
                {0, 8, 2, 3, 4, 9, 6}});
}

std::vector<int> step_rows(const FillArrayResult& r) {
    std::vector<int> rs;
    for (const FillStep& s : r.steps) rs.push_back(s.row);
    return rs;
}

std::vector<std::string> step_rules(const FillArrayResult& r) {
    std::vector<std::string> rs;
    for (const FillStep& s : r.steps) rs.push_back(s.rule);
    return rs;
}

}  // namespace

TEST_CASE("conditions validate and serialize") {
    CHECK(to_string(DetCondition{1, 4, 6}) == "1,4.6");
    CHECK(to_string(DetCondition{0, 2, 3}) == "0,2.3");
    CHECK(to_string(SurCondition{3, 6}) == "3-sur.6");
    CHECK_NOTHROW(validate(DetCondition{0, 2, 2}));
    CHECK_THROWS_AS(validate(DetCondition{2, 2, 4}), std::invalid_argument);
    CHECK_THROWS_AS(validate(DetCondition{-1, 1, 4}), std::invalid_argument);
    CHECK_THROWS_AS(validate(DetCondition{1, 5, 4}), std::invalid_argument);
    CHECK_THROWS_AS(validate(SurCondition{7, 6}), std::invalid_argument);

    std::set<DetCondition> ds{{1, 4, 6}, {1, 3, 5}, {1, 4, 5}};
    CHECK(ds.count({1, 3, 5}) == 1);
    CHECK(ds.count({1, 3, 6}) == 0);
}

TEST_CASE("unique filler of an edge pair splices through the middle") {
    SSimplex host = minimal_simplex(rel({{1}, {3}, {5}}, {{1, 3, 5}}));
    PartialElement pe{host, {{0, h_map({3, 5})}, {2, h_map({1, 3})}}};
    CHECK(unique_filler(pe, 1) == ft(1, {5, 1}));
    CHECK(unique_filler(pe, 1) == h_map({1, 5}));

    PartialElement bad{host, {{0, h_map({3, 5})}, {2, h_map({1, 4})}}};
    CHECK_THROWS_AS(unique_filler(bad, 1), std::invalid_argument);
    PartialElement sparse{host, {{0, h_map({3, 5})}}};
    CHECK_THROWS_AS(unique_filler(sparse, 1), std::invalid_argument);
    CHECK_THROWS_AS(unique_filler(pe, 0), std::invalid_argument);
}

TEST_CASE("unique filler returns the matching face of an element") {
    for (int n : {2, 3}) {
        for (int rep = 0; rep < 6; ++rep) {
            Relation r = random_relation(n + 1, 2, 3);
            SSimplex y = minimal_simplex(r);
            for (const FundamentalTuple& a : y.elem())
                for (int i = 0; i <= n; ++i) {
                    PartialElement pe{y, {}};
                    for (int j = 0; j <= n; ++j)
                        if (j != i) pe.entries.emplace(j, proj_e(a, j));
                    CHECK(unique_filler(pe, i) == proj_e(a, i));
                }
        }
    }
}

TEST_CASE("unique filler is the only block completing the element") {
    Relation r = random_relation(4, 2, 1);
    SSimplex y = minimal_simplex(r);
    const std::vector<int> cols = entry_columns(2);
    for (const FundamentalTuple& a : y.elem())
        for (int i = 0; i <= 3; ++i) {
            PartialElement pe{y, {}};
            for (int j = 0; j <= 3; ++j)
                if (j != i) pe.entries.emplace(j, proj_e(a, j));
            FundamentalTuple got = unique_filler(pe, i);

            /* scan every signature tuple for the missing block */
            std::vector<std::set<Label>> dsig = y.fsig;
            dsig.erase(dsig.begin() + i);
            std::vector<std::set<Label>> slots;
            for (int c : cols) slots.push_back(dsig[c]);
            int hits = 0;
            for (const VTuple& es : all_rows(slots)) {
                FundamentalTuple cand{2, es};
                FundamentalTuple whole;
                whole.dim = 3;
                for (int j = 0; j <= 3; ++j) {
                    const FundamentalTuple& blk =
                        j == i ? cand : pe.entries.at(j);
                    whole.entries.insert(whole.entries.end(),
                                         blk.entries.begin(),
                                         blk.entries.end());
                }
                if (is_component_simplicial(whole)) {
                    ++hits;
                    CHECK(cand == got);
                }
            }
            CHECK(hits == 1);
        }
}

TEST_CASE("composing single edges matches relation composition") {
    OpenHorn h;
    h.n = 1;
    h.i = 1;
    h.faces.resize(3);
    h.faces[0] = minimal_simplex(rel({{3}, {5}}, {{3, 5}}));
    h.faces[2] = minimal_simplex(rel({{1}, {3}}, {{1, 3}}));
    SSimplex w = comp_ni(h);
    CHECK(w.elem() == std::set<FundamentalTuple>{h_map({1, 3, 5})});
    CHECK(face(w, 1).elem() == std::set<FundamentalTuple>{ft(1, {5, 1})});
    CHECK(is_ni_composition(w, 1));
}

TEST_CASE("edges with no matching middle compose to nothing") {
    OpenHorn h;
    h.n = 1;
    h.i = 1;
    h.faces.resize(3);
    h.faces[0] = from_compact(1, {{3, 4}, {5}},
                              {{1, {{3}, {4}}}, {2, {{5}}}, {3, {{4, 5}}}});
    h.faces[2] = from_compact(1, {{1}, {3, 4}},
                              {{1, {{1}}}, {2, {{3}, {4}}}, {3, {{1, 3}}}});
    SSimplex w = comp_ni(h);
    CHECK(w.elem().empty());
    CHECK(face(w, 1).elem().empty());
}

TEST_CASE("mismatched horn faces are rejected") {
    OpenHorn h;
    h.n = 1;
    h.i = 1;
    h.faces.resize(3);
    h.faces[0] = minimal_simplex(rel({{3}, {5}}, {{3, 5}}));
    h.faces[2] = minimal_simplex(rel({{1}, {9}}, {{1, 9}}));
    CHECK_THROWS_AS(comp_ni(h), std::invalid_argument);

    OpenHorn engaged;
    engaged.n = 1;
    engaged.i = 1;
    engaged.faces.resize(3);
    engaged.faces[0] = minimal_simplex(rel({{3}, {5}}, {{3, 5}}));
    engaged.faces[1] = engaged.faces[0];
    engaged.faces[2] = minimal_simplex(rel({{1}, {3}}, {{1, 3}}));
    CHECK_THROWS_AS(comp_ni(engaged), std::invalid_argument);
}

TEST_CASE("horn filling agrees with the product scan and itself") {
    for (int n : {1, 2, 3}) {
        for (int rep = 0; rep < 4; ++rep) {
            Relation r = random_relation(n + 2, 3, 2);
            SSimplex y = minimal_simplex(r);
            for (int i = 0; i <= n + 1; ++i) {
                OpenHorn h = horn_of(y, i);
                SSimplex w = comp_ni(h);

                const auto& top = w.elem();
                const auto& ytop = y.elem();
                CHECK(std::includes(top.begin(), top.end(), ytop.begin(),
                                    ytop.end()));
                CHECK(is_ni_composition(w, i));
                CHECK(e_hull(w).elem() == w.elem());
                CHECK(comp_ni(horn_of(w, i)) == w);

                ExpansionReport rep2 = expansion_compare(w, i);
                CHECK(rep2.e_simplicial);
                CHECK(rep2.i_surjective);
                CHECK(rep2.sig_equal);
                CHECK(rep2.top_equal);
                CHECK(rep2.face_equal);

                /* independent scan of the whole ambient product */
                std::set<VTuple> expect;
                for (const VTuple& t : all_rows(w.fsig)) {
                    bool ok = true;
                    for (int p = 0; p <= n + 1 && ok; ++p) {
                        if (p == i) continue;
                        ok = vertex_relation(*h.faces[p]).rows.count(
                                 drop(t, p)) > 0;
                    }
                    if (ok) expect.insert(t);
                }
                CHECK(vertex_relation(w).rows == expect);

                /* the general path sees only node tables */
                OpenHorn general = h;
                for (auto& f : general.faces)
                    if (f) f->compact.reset();
                SSimplex w2 = comp_ni(general);
                CHECK(w2 == w);
            }
        }
    }
}

TEST_CASE("row-level filling joins the faces") {
    std::vector<std::optional<Relation>> faces(3);
    faces[0] = rel({{3}, {5}}, {{3, 5}});
    faces[2] = rel({{1}, {3}}, {{1, 3}});
    Relation w = comp_rows(faces, 1);
    CHECK(w.rows == std::set<VTuple>{{1, 3, 5}});

    CHECK_THROWS_AS(comp_rows({}, 0), std::invalid_argument);
    std::vector<std::optional<Relation>> missing(3);
    missing[0] = faces[0];
    CHECK_THROWS_AS(comp_rows(missing, 1), std::invalid_argument);
    std::vector<std::optional<Relation>> mismatch(3);
    mismatch[0] = rel({{3}, {5}}, {{3, 5}});
    mismatch[2] = rel({{1}, {4}}, {{1, 4}});
    CHECK_THROWS_AS(comp_rows(mismatch, 1), std::invalid_argument);
}

TEST_CASE("a maximal e-simplicial simplex need not compose") {
    /* one of the two fillers is struck from the middle face */
    SSimplex w = from_compact(
        2, {{1, 2}, {3, 4}, {5, 6}},
        {{1, {{1}, {2}}},
         {2, {{3}, {4}}},
         {4, {{5}, {6}}},
         {3, {{1, 3}, {2, 4}}},
         {6, {{3, 5}, {4, 6}}},
         {5, {{2, 5}, {1, 6}, {2, 6}}},
         {7, {{2, 4, 6}}}});
    CHECK(is_e_simplicial(w));
    CHECK(e_hull(w).elem() == w.elem());
    CHECK_FALSE(is_i_surjective(w, 1));
    CHECK_FALSE(is_ni_composition(w, 1));

    ExpansionReport rep = expansion_compare(w, 1);
    CHECK(rep.e_simplicial);
    CHECK_FALSE(rep.i_surjective);
    CHECK(rep.sig_equal);
    CHECK(rep.top_subset);
    CHECK_FALSE(rep.top_equal);
    CHECK_FALSE(rep.face_subset);
}

TEST_CASE("a strict subrelation expands to its composition") {
    SSimplex w = from_compact(2, {{1, 2}, {3, 4}, {5, 6}},
                              {{1, {{1}, {2}}},
                               {2, {{3}, {4}}},
                               {4, {{5}, {6}}},
                               {3, {{1, 3}, {2, 4}}},
                               {6, {{3, 5}, {4, 6}}},
                               {5, {{2, 6}}},
                               {7, {{2, 4, 6}}}});
    CHECK(is_e_simplicial(w));
    CHECK(is_i_surjective(w, 1));
    CHECK_FALSE(is_ni_composition(w, 1));

    ExpansionReport rep = expansion_compare(w, 1);
    CHECK(rep.e_simplicial);
    CHECK(rep.i_surjective);
    CHECK(rep.sig_equal);
    CHECK(rep.top_subset);
    CHECK_FALSE(rep.top_equal);
    CHECK(rep.face_subset);
    CHECK_FALSE(rep.face_equal);
}

TEST_CASE("full simplices compose at every slot") {
    for (int n : {2, 3}) {
        SSimplex w = max_simplex(std::vector<std::set<Label>>(n + 1, {0, 1}));
        for (int i = 0; i <= n; ++i) CHECK(is_ni_composition(w, i));
    }
}

TEST_CASE("the three-row relation is (1,4)-determinate") {
    SSimplex y = minimal_simplex(det_example());
    CHECK(is_pq_determinate(y, 1, 4));
    CHECK(is_A_determinate(y, {1, 4}));

    /* every superset of a determining pair still determines */
    for (int j : {0, 2, 3, 5, 6}) CHECK(is_A_determinate(y, {1, 4, j}));
    CHECK(is_A_determinate(y, {0, 1, 2, 4, 5}));

    /* mixing rows one and three across columns 1 and 5 escapes */
    CHECK_FALSE(is_pq_determinate(y, 1, 5));

    CHECK_THROWS_AS(is_A_determinate(y, {1}), std::invalid_argument);
    CHECK_THROWS_AS(is_A_determinate(y, {0, 1, 2, 3, 4, 5, 6}),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_A_determinate(y, {1, 9}), std::invalid_argument);
}

TEST_CASE("pq_fill reproduces the filler table") {
    Relation r = det_example();
    SSimplex y = minimal_simplex(r);
    const VTuple t1{0, 1, 2, 3, 4, 5, 6};
    const VTuple t2{0, 1, 2, 7, 4, 5, 6};
    const VTuple t3{0, 8, 2, 3, 4, 9, 6};

    auto fill = [&](const VTuple& a, const VTuple& b) {
        return pq_fill(y, h_map(drop(a, 1)), h_map(drop(b, 4)), 1, 4);
    };
    CHECK(fill(t1, t1) == h_map(t1));
    CHECK(fill(t2, t2) == h_map(t2));
    CHECK(fill(t3, t3) == h_map(t3));
    /* rows one and two agree off {3,5}, so those mixes cross over */
    CHECK(pq_fill(y, h_map(drop(t1, 3)), h_map(drop(t2, 5)), 3, 5) ==
          h_map(t2));
    CHECK(pq_fill(y, h_map(drop(t2, 3)), h_map(drop(t1, 5)), 3, 5) ==
          h_map(t1));

    /* e_1 of row one and e_4 of row two do not form a partial element */
    CHECK_THROWS_AS(pq_fill(y, h_map(drop(t1, 1)), h_map(drop(t2, 4)), 1, 4),
                    std::invalid_argument);

    /* no row matches the orphaned pattern */
    for (const VTuple& t : r.rows)
        CHECK_FALSE((t[0] == 0 && t[2] == 2 && t[3] == 7 && t[5] == 9 &&
                     t[6] == 6));
}

TEST_CASE("pq_fill agrees with scanning for the row") {
    for (int rep = 0; rep < 6; ++rep) {
        Relation r = random_relation(4, 3, 2);
        SSimplex y = minimal_simplex(r);
        for (const VTuple& a : r.rows)
            for (const VTuple& b : r.rows)
                for (int p = 0; p <= 2; ++p)
                    for (int q = p + 1; q <= 3; ++q) {
                        VTuple ap = drop(a, p);
                        VTuple bq = drop(b, q);
                        if (drop(ap, q - 1) != drop(bq, p)) continue;
                        FundamentalTuple got =
                            pq_fill(y, h_map(ap), h_map(bq), p, q);
                        int hits = 0;
                        for (const VTuple& t : all_rows(y.fsig))
                            if (drop(t, p) == ap && drop(t, q) == bq) {
                                ++hits;
                                CHECK(got == h_map(t));
                            }
                        CHECK(hits == 1);
                    }
    }
}

TEST_CASE("faces of an element fill back to the element") {
    Relation r = random_relation(4, 2, 3);
    SSimplex y = minimal_simplex(r);
    for (const VTuple& t : r.rows) {
        FundamentalTuple a = h_map(t);
        for (int p = 0; p <= 2; ++p)
            for (int q = p + 1; q <= 3; ++q)
                CHECK(pq_fill(y, proj_e(a, p), proj_e(a, q), p, q) == a);
    }
}

TEST_CASE("degeneracies are surjective beside the repeated slot") {
    Relation r = random_relation(3, 3, 2);
    SSimplex y = minimal_simplex(r);
    for (int k = 0; k <= y.dim; ++k) {
        SSimplex s = degeneracy(y, k);
        CHECK(is_i_surjective(s, k));
        CHECK(is_i_surjective(s, k + 1));
    }
}

TEST_CASE("degenerate simplices compose when the conditions hold") {
    /* an edge needs nothing for its degeneracies to fill (1,1)-horns */
    SSimplex fun = minimal_simplex(rel({{1, 2}, {5, 6}}, {{1, 5}, {2, 6}}));
    CHECK(degenerate_composition_check(fun, 0, 1));
    CHECK(degenerate_composition_check(fun, 1, 1));
    SSimplex multi = minimal_simplex(rel({{1}, {5, 6}}, {{1, 5}, {1, 6}}));
    CHECK(degenerate_composition_check(multi, 0, 1));
    CHECK(degenerate_composition_check(multi, 1, 1));

    /* slot 2 in dimension 2 needs e_1 onto; strike one preimage */
    SSimplex bad = from_compact(2, {{1}, {3}, {5, 6}},
                                {{1, {{1}}},
                                 {2, {{3}}},
                                 {4, {{5}, {6}}},
                                 {3, {{1, 3}}},
                                 {6, {{3, 5}}},
                                 {5, {{1, 5}, {1, 6}}},
                                 {7, {{1, 3, 5}}}});
    CHECK_FALSE(is_i_surjective(bad, 1));
    bool all_pass = true;
    for (int k = 0; k <= 2; ++k)
        all_pass = all_pass && degenerate_composition_check(bad, k, 2);
    CHECK_FALSE(all_pass);

    SSimplex good = from_compact(2, {{1}, {3}, {5, 6}},
                                 {{1, {{1}}},
                                  {2, {{3}}},
                                  {4, {{5}, {6}}},
                                  {3, {{1, 3}}},
                                  {6, {{3, 5}}},
                                  {5, {{1, 5}}},
                                  {7, {{1, 3, 5}}}});
    CHECK(is_i_surjective(good, 1));
    for (int k = 0; k <= 2; ++k) CHECK(degenerate_composition_check(good, k, 2));
}

TEST_CASE("determinate surjective simplices are compositions") {
    int hits = 0;
    for (int rep = 0; rep < 12; ++rep) {
        Relation r = random_relation(4, rep % 3 + 1, 1);
        SSimplex y = minimal_simplex(r);
        for (int i = 0; i <= 3; ++i) {
            if (!is_i_surjective(y, i)) continue;
            bool det = false;
            for (int p = 0; p <= 3 && !det; ++p)
                for (int q = p + 1; q <= 3 && !det; ++q)
                    if (p != i && q != i && is_pq_determinate(y, p, q))
                        det = true;
            if (!det) continue;
            ++hits;
            CHECK(is_ni_composition(y, i));
        }
    }
    SSimplex full = max_simplex(std::vector<std::set<Label>>(4, {0, 1}));
    for (int i = 0; i <= 3; ++i) {
        CHECK(is_i_surjective(full, i));
        CHECK(is_pq_determinate(full, i == 0 ? 1 : 0, i == 3 ? 2 : 3));
        ++hits;
        CHECK(is_ni_composition(full, i));
    }
    CHECK(hits > 4);
}

TEST_CASE("fill array walks the published closure trace") {
    ConditionSet conds;
    conds.surjectivity = {{2, 6}, {3, 6}};
    conds.determinacy = {{1, 4, 6}};

    FillArrayResult r = fill_array(conds, {{3, {3}}, {4, {3}}}, 6, 3);
    CHECK(r.complete);
    CHECK(step_rows(r) ==
          std::vector<int>{-1, 4, 1, 5, 2, 0, 6, 7, 3});
    CHECK(step_rules(r) ==
          std::vector<std::string>{"given", "3-sur.6", "3-sur.6", "1,4.6",
                                   "1,4.6", "1,4.6", "1,4.6", "1,4.6",
                                   "composition"});
    CHECK(r.cell_step[4] == std::vector<int>{2, 2, 2, 1, 2, 2, 2});
    CHECK(r.cell_step[3] == std::vector<int>{6, 3, 5, 1, 4, 7, 8});
    CHECK(r.stuck_rows.empty());
}

TEST_CASE("fill array closes the second surjectivity the same way") {
    ConditionSet conds;
    conds.surjectivity = {{2, 6}, {3, 6}};
    conds.determinacy = {{1, 4, 6}};

    FillArrayResult r = fill_array(conds, {{3, {2}}}, 6, 3);
    CHECK(r.complete);
    std::vector<int> rows = step_rows(r);
    CHECK(std::vector<int>(rows.begin(), rows.begin() + 3) ==
          std::vector<int>{-1, 2, 5});
    std::vector<std::string> rules = step_rules(r);
    CHECK(std::count(rules.begin(), rules.end(), "2-sur.6") == 2);
    CHECK(std::count(rules.begin(), rules.end(), "1,4.6") == 5);
    CHECK(rules.back() == "composition");
}

TEST_CASE("fill array reports the stuck rows without determinacy") {
    ConditionSet conds;
    conds.surjectivity = {{2, 6}, {3, 6}};

    FillArrayResult r = fill_array(conds, {{3, {3}}, {4, {3}}}, 6, 3);
    CHECK_FALSE(r.complete);
    CHECK(step_rows(r) == std::vector<int>{-1, 4, 1});
    CHECK(r.stuck_rows == std::set<int>{0, 2, 5, 6, 7});
}

TEST_CASE("fill array with a complete seed has nothing to do") {
    std::map<int, std::set<int>> seed;
    for (int rrow = 0; rrow <= 7; ++rrow)
        seed[rrow] = {0, 1, 2, 3, 4, 5, 6};
    FillArrayResult r = fill_array(ConditionSet{}, seed, 6, 3);
    CHECK(r.complete);
    CHECK(r.steps == std::vector<FillStep>{{1, -1, "given"}});
}

TEST_CASE("two given faces propagate through their determinacy") {
    ConditionSet conds;
    conds.determinacy = {{3, 4, 5}};
    std::map<int, std::set<int>> seed{{3, {0, 1, 2, 3, 4, 5}},
                                      {4, {0, 1, 2, 3, 4, 5}}};
    FillArrayResult r = fill_array(conds, seed, 5, 2);
    CHECK(r.complete);
    CHECK(step_rows(r) == std::vector<int>{-1, 5, 0, 1, 6, 2});
    CHECK(r.steps.back().rule == "composition");
    for (std::size_t k = 1; k + 1 < r.steps.size(); ++k)
        CHECK(r.steps[k].rule == "3,4.5");
}

TEST_CASE("fill array rejects malformed input") {
    CHECK_THROWS_AS(fill_array(ConditionSet{}, {{9, {0}}}, 6, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(fill_array(ConditionSet{}, {{0, {7}}}, 6, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(fill_array(ConditionSet{}, {}, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(fill_array(ConditionSet{}, {}, 6, 8),
                    std::invalid_argument);
}
