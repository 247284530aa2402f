#pragma once

/*
 * Composition by unique horn filling. comp_ni fills an open i-horn:
 * the top element set is every pairwise compatible family of face
 * elements completed by its unique filler, and face i is the e_i
 * image of the top. The predicates here are the definitional clauses
 * of a composition (e-simpliciality, closure under fillers,
 * i-surjectivity), the determinacy conditions that keep fillers
 * inside a simplex, and a mechanized form of the row-by-row array
 * filling arguments that close such conditions under composition.
 */

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "composer/scomplex.hpp"

namespace composer {

/* Conditions on the m-simplices of a complex: (p,q)-determinacy,
 * written "p,q.m", and surjectivity of e_j, written "j-sur.m". */
struct DetCondition {
    int p = 0;
    int q = 1;
    int m = 1;

    bool operator==(const DetCondition&) const = default;
    auto operator<=>(const DetCondition&) const = default;
};

struct SurCondition {
    int j = 0;
    int m = 1;

    bool operator==(const SurCondition&) const = default;
    auto operator<=>(const SurCondition&) const = default;
};

struct ConditionSet {
    std::set<DetCondition> determinacy;
    std::set<SurCondition> surjectivity;

    bool operator==(const ConditionSet&) const = default;
};

void validate(const DetCondition& c); /* 0 <= p < q <= m */
void validate(const SurCondition& c); /* 0 <= j <= m */
std::string to_string(const DetCondition& c);
std::string to_string(const SurCondition& c);

/* An open i-horn in dimension n+1: the would-be faces with slot i
 * left out. Present faces match pairwise: d_p(face_q) = d_{q-1}(face_p). */
struct OpenHorn {
    int n = 1;
    int i = 0;
    std::vector<std::optional<SSimplex>> faces; /* size n+2, slot i empty */
};

void validate(const OpenHorn& h);
OpenHorn horn_of(const SSimplex& w, int i);

/* Elements of some faces of a host simplex, pairwise compatible:
 * e_p(a_q) = e_{q-1}(a_p) for p < q in the index set. */
struct PartialElement {
    SSimplex host;
    std::map<int, FundamentalTuple> entries;
};

void validate(const PartialElement& pe);

/* For a partial element covering every slot but i, the unique block
 * completing it to a component-simplicial tuple:
 * (e_{i-1}(a_0), .., e_{i-1}(a_{i-1}), e_i(a_{i+1}), .., e_i(a_n)). */
FundamentalTuple unique_filler(const PartialElement& pe, int i);

/* The unique signature tuple with e_p = b_p and e_q = b_q, spliced
 * from the two vertex rows. Requires y subface-simplicial, b_p and
 * b_q elements of the faces, and e_p(b_q) = e_{q-1}(b_p). */
FundamentalTuple pq_fill(const SSimplex& y, const FundamentalTuple& b_p,
                         const FundamentalTuple& b_q, int p, int q);

/* Fill the horn. Every node off slot i comes from the given faces,
 * the top is the compatible families with their fillers, and face i
 * is the e_i image, so the result is maximal e-simplicial. Faces in
 * compact form compose by joining their rows; general faces are
 * capped at max_general_dim. */
SSimplex comp_ni(const OpenHorn& h);

/* Row-level horn filling: every tuple over the ambient columns all of
 * whose deletions but the i-th land in the corresponding face. */
Relation comp_rows(const std::vector<std::optional<Relation>>& faces, int i,
                   bool validate_faces = true);

/* Every element of face i is an e_i image of the top. */
bool is_i_surjective(const SSimplex& y, int i);

/* The clauses of the composition definition: e-simplicial, every
 * compatible family off slot i has its filler's i-th block in face i
 * and its completion in the top, and e_i is surjective. */
bool is_ni_composition(const SSimplex& w, int i);

/* Whether s_k(y) is a composition at slot i one dimension up. */
bool degenerate_composition_check(const SSimplex& y, int k, int i);

/* Every partial element indexed by A has its unique filler in the
 * top. Requires y subface-simplicial and A a proper subset of the
 * slots with at least two members. Empty faces pass vacuously. */
bool is_A_determinate(const SSimplex& y, const std::set<int>& A);
bool is_pq_determinate(const SSimplex& y, int p, int q);

/* Compare w against the filling of its own i-horn. The preconditions
 * (e-simplicial, e_i surjective) are reported, not enforced; under
 * them the faces of face i agree and both inclusions hold, with
 * equality exactly when w is itself a composition. */
struct ExpansionReport {
    bool e_simplicial = false;
    bool i_surjective = false;
    bool sig_equal = false; /* proper nodes of face i agree */
    bool top_subset = false;
    bool top_equal = false;
    bool face_subset = false; /* face i of w inside face i of the filling */
    bool face_equal = false;
};

ExpansionReport expansion_compare(const SSimplex& w, int i);

/* Mechanized array filling. Rows are the faces of a sought element
 * one dimension above the conditions' home dimension n; cell c of
 * row r is the subface shared with row (c < r ? c : c + 1), so each
 * fact is two mirrored cells. Seeding marks cells known at step 1.
 * A j-surjectivity condition fills an unfilled row whose known cells
 * are exactly {j}; a (p,q)-determinacy condition fills a row once
 * cells p and q are known; row i is certified last by the
 * composition itself. Surjectivity is preferred over determinacy;
 * surjectivity picks the row delivering determinacy columns to the
 * most unfilled rows, determinacy picks the lowest row; ties go to
 * the lowest row. Cells record the step at which they became known. */
struct FillStep {
    int step = 0;
    int row = 0; /* -1 for the seed */
    std::string rule;

    bool operator==(const FillStep&) const = default;
};

struct FillArrayResult {
    bool complete = false;
    std::vector<std::vector<int>> cell_step; /* (n+2) x (n+1), 0 unknown */
    std::vector<FillStep> steps;
    std::set<int> stuck_rows;
};

FillArrayResult fill_array(const ConditionSet& conditions,
                           const std::map<int, std::set<int>>& seed, int n,
                           int i);

}  // namespace composer
