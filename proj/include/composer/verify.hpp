#pragma once

/*
 * Truncated simplicial sets as explicit index tables, and the checks
 * that certify them: horn bijectivity by exhaustive enumeration, the
 * per-slot determinacy/surjectivity characterization on relation
 * models, simplicial kernels and coskeleta, and the typed fill
 * schedules that compose one missing face at a time.
 *
 * Dimension m simplices are rows of cells[m]; faces point one
 * dimension down, degeneracies one dimension up, and every simplicial
 * identity holds as an equation between indices.
 */

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "composer/compose.hpp"
#include "composer/delta.hpp"

namespace composer {

struct SimplexEntry {
    std::vector<int> faces;  /* size dim+1; empty in dimension 0 */
    std::vector<int> degens; /* size dim+1; empty at the top dimension */
    bool degenerate = false;
    std::optional<Relation> rows;    /* vertex rows, for relation models */
    std::optional<MonotoneMap> rep;  /* first vertex map producing the entry */
};

struct TruncatedComplex {
    int top_dim = 0;
    std::vector<std::vector<SimplexEntry>> cells; /* cells[m], m <= top_dim */
};

/* Index ranges, both composites of every simplicial identity, and the
 * degenerate flags exactly marking degeneracy images. */
void validate(const TruncatedComplex& C);

/* 1 + sum_{p=1}^{n} C(n+1,p)^2: the size of the complex of a relation
 * with pairwise distinct columns. Exact in 64 bits for n <= 31. */
long long simplex_count(int n);

/* The complex of simplicial images of a relation: one m-simplex per
 * distinct image of R under a vertex map [m] -> [n], m <= arity-1.
 * Faces and degeneracies act on the image relations themselves and
 * every entry keeps its rows and the first map reaching it. */
TruncatedComplex generate_complex(const Relation& R);

/* Same, from a subface-simplicial simplex that is minimal over its
 * vertex relation. */
TruncatedComplex generate_complex(const SSimplex& y);

/* Extend by simplicial kernels up to m_target: a new m-simplex per
 * family (x_0..x_m) with d_p(x_q) = d_{q-1}(x_p), degeneracies wired
 * through the face identities. Returns C unchanged when m_target does
 * not exceed its top. */
TruncatedComplex coskeleton(const TruncatedComplex& C, int m_target);

/* The complex of monotone tuples over [k], truncated at top_dim. */
TruncatedComplex standard_simplex_complex(int k, int top_dim);

/* A finite category presented by tables. Identities are listed among
 * the morphisms; compose[g][f] is g after f, -1 where undefined. */
struct FiniteCategory {
    int objects = 0;
    std::vector<int> src, dst;
    std::vector<int> identity;              /* per object */
    std::vector<std::vector<int>> compose;  /* compose[g][f] */
};

void validate(const FiniteCategory& cat);

/* Nerve up to top_dim: m-simplices are chains of m composable
 * morphisms, inner faces compose adjacent arrows, degeneracies insert
 * identities. */
TruncatedComplex nerve_complex(const FiniteCategory& cat, int top_dim);

/* One record per executed check. Witnesses are capped; checked and
 * failed always carry the full counts. */
struct CheckRecord {
    std::string check;
    int dimension = 0;
    int slot = -1;
    std::string status; /* "pass" or "fail" */
    long long checked = 0;
    long long failed = 0;
    std::vector<std::string> witnesses;
};

struct CheckReport {
    bool ok = true;
    std::vector<CheckRecord> records;
};

/* Bijectivity of C_m -> (slot horns of dimension m): enumerates every
 * compatible family (x_j, j != slot) by joining on shared subfaces,
 * then counts fillers. The join extends slot by slot, picking
 * candidates from an index over one known face and filtering by the
 * rest, so its cost is proportional to the number of partial families
 * rather than |C_{m-1}|^m. */
CheckRecord horn_check(const TruncatedComplex& C, int m, int slot);

/* Horn bijectivity at slot i for n < m <= min(top_dim, n+depth); on
 * complexes whose entries carry rows through dimension n, also the
 * per-regime determinacy and surjectivity conditions, with a final
 * record comparing the two verdicts. jobs > 1 runs the records on
 * that many threads; the report is identical either way. */
CheckReport check_truncated_composer(const TruncatedComplex& C, int n, int i,
                                     int depth = 2, int jobs = 1);

/* Horn bijectivity at every slot for n < m <= min(top_dim, n+depth). */
CheckReport check_hypergroupoid(const TruncatedComplex& C, int n, int depth = 2,
                                int jobs = 1);

/* All simplices of dimension m whose faces match the given slots. */
std::vector<int> matching_simplices(const TruncatedComplex& C, int m,
                                    const std::map<int, int>& faces);

/* A partially specified m-simplex: known faces by slot, the deletion
 * subset being the complementary slots. Known faces must match
 * pairwise: d_p(z_q) = d_{q-1}(z_p). */
struct PartialSimplex {
    int m = 0;
    std::map<int, int> known; /* slot -> index in cells[m-1] */
};

std::set<int> deletion_subset(const PartialSimplex& ps);
void validate(const TruncatedComplex& C, const PartialSimplex& ps);

/* Deletion subset of the face at w of a partial simplex with deletion
 * subset B: faces below w survive, faces above shift down by one.
 * Requires w in B. */
std::set<int> delsub_of_face(const std::set<int>& B, int w);

/* Least p with t_p = i+p-1 for B = {t_1 < .. < t_k}; nullopt when no
 * such p exists or B is not contained in [n+k]. */
std::optional<int> deletion_type(const std::set<int>& B, int n, int i);

struct ScheduleStep {
    std::vector<int> path; /* face word from the root: {1,5} is d_5 of d_1 */
    int dim = 0;
    int slot = 0;

    bool operator==(const ScheduleStep&) const = default;
};

struct ExtendedFillResult {
    int index = 0;
    std::vector<ScheduleStep> steps;
};

/* Unique filler of a partial simplex over an (n,i)-composer. A
 * singleton deletion at slot j fills directly for i <= j <= i+m-n-1.
 * A deletion subset of type p fills by the recursive schedule: type 1
 * fills the face at its largest element first and stays at (n,i);
 * type p > 1 fills the face at its smallest element first, after
 * which the rest continues one dimension and one slot up. Otherwise
 * |B| <= m-(n+2) fills greedily, largest element first. Steps list
 * every elementary fill as (face word, dimension, slot). */
ExtendedFillResult extended_fill(const TruncatedComplex& C,
                                 const PartialSimplex& ps, int n, int i);

/* Greedy filler over an n-dimensional hypergroupoid: |B| <= m-n. */
ExtendedFillResult extended_fill(const TruncatedComplex& C,
                                 const PartialSimplex& ps, int n);

/* No other w' in dimension n+1 shares the faces of w at slot i and at
 * every slot outside A. Requires i in A and A a proper subset of the
 * slots. */
bool is_A_cancelling(const TruncatedComplex& C, int n, int i, int w,
                     const std::set<int>& A);

}  // namespace composer
